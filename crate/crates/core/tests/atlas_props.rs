use chromsp::atlas::{classify_pixel, encode_ppm, render, render_pixels, write_ndjson, Color, ColorCounts, PixelDetail, RenderSpec};
use chromsp::certify::{certify, MethodChoice};
use chromsp::cx;

#[test]
fn output_does_not_depend_on_worker_count() {
    let base = RenderSpec::thumbnail(25, 19);
    let mut images = Vec::new();
    let mut dumps = Vec::new();
    for workers in [1, 2, 5] {
        let spec = RenderSpec { workers, ..base.clone() };
        let px = render_pixels(&spec).unwrap();
        images.push(encode_ppm(&spec, &px).unwrap());
        let mut buf = Vec::new();
        write_ndjson(&px, &mut buf).unwrap();
        dumps.push(buf);
    }
    assert!(images.windows(2).all(|w| w[0] == w[1]));
    assert!(dumps.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn eleven_pixel_thumbnail() {
    let spec = RenderSpec::thumbnail(11, 11);
    let px = render_pixels(&spec).unwrap();
    let origin = &px[5 * 11];
    assert_eq!(origin.q, cx(0.0, 0.0));
    assert_eq!((origin.color, &origin.detail), (Color::White, &PixelDetail::Excluded));
    let counts = ColorCounts::of(&px);
    assert_eq!(counts.total(), 121);
    assert!(counts.blue() > 0 && counts.orange > 0);
}

#[test]
fn blue_pixels_carry_witnesses_and_orange_ones_certificates() {
    let spec = RenderSpec::thumbnail(31, 31);
    for p in render_pixels(&spec).unwrap() {
        match (&p.color, &p.detail) {
            (c, PixelDetail::Escaped { witness }) => {
                assert!(c.is_blue());
                assert!(witness.value.norm() > 1.0);
                // A blue pixel never also gets a zero-free certificate.
                assert!(certify(p.q, MethodChoice::Auto).is_err(), "{}", p.q);
            }
            (Color::Orange, PixelDetail::Certified { slack, .. }) => assert!(*slack >= spec.orange_slack),
            (Color::White, PixelDetail::Excluded | PixelDetail::Unresolved { .. }) => {}
            other => panic!("inconsistent pixel {other:?}"),
        }
    }
}

#[test]
fn render_writes_files() {
    let dir = std::env::temp_dir().join(format!("chromsp-atlas-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = RenderSpec { blue_depths: vec![20, 40], ..RenderSpec::thumbnail(7, 5) };
    let summary = render(&spec, &dir.join("a.ppm"), Some(&dir.join("a.ndjson"))).unwrap();
    assert_eq!(summary.counts.total(), 35);
    let img = std::fs::read(dir.join("a.ppm")).unwrap();
    assert!(img.starts_with(b"P6\n7 5\n255\n"));
    let lines = std::fs::read_to_string(dir.join("a.ndjson")).unwrap();
    assert_eq!(lines.lines().count(), 35);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_specs_are_rejected() {
    let spec = RenderSpec { lower_left: cx(2.0, 1.0), upper_right: cx(0.0, -1.0), ..RenderSpec::thumbnail(3, 3) };
    assert!(render_pixels(&spec).is_err());
    assert_eq!(classify_pixel(cx(2.0, 0.0), &RenderSpec::default()).color, Color::White);
}
