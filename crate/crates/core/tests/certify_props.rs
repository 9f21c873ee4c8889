use chromsp::certify::{
    certify, certify_near_one, certify_real_01, certify_real_3227, check_certificate, Method, MethodChoice, Reject,
    REAL_3227_END,
};
use chromsp::escape::escape_search;
use chromsp::moebius::{f_raw, Disk};
use chromsp::{cx, Cx};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn dedicated_methods_cover_the_interval() {
    for k in 1..=19 {
        let q = 0.05 * k as f64;
        let c = certify_real_01(q).unwrap_or_else(|e| panic!("{q}: {e}"));
        assert!(c.slack() > 0.0);
    }
    for k in 1..=18 {
        let q = 1.0 + 0.01 * k as f64;
        if q >= REAL_3227_END {
            continue;
        }
        let c = certify_real_3227(q).unwrap_or_else(|e| panic!("{q}: {e}"));
        assert_eq!(c.method, Method::Real3227);
    }
}

#[test]
fn certificates_recheck() {
    for q in [cx(0.3, 0.0), cx(1.1, 0.0), cx(1.03, 0.02), cx(0.9, 0.1)] {
        let c = certify(q, MethodChoice::Auto).unwrap();
        if c.param.is_some() || c.method != Method::NearOne {
            let again = check_certificate(q, &c.disk, 1e-12).unwrap();
            assert!((again.slack() - c.slack()).abs() < 1e-9);
        }
    }
}

#[test]
fn no_parameter_is_both_certified_and_escaping() {
    let mut both = Vec::new();
    for i in 0..20 {
        for j in 0..10 {
            let q = cx(-0.2 + 1.6 * i as f64 / 19.0, -0.3 + 0.6 * j as f64 / 9.0);
            if q.norm() == 0.0 {
                continue;
            }
            let cert = certify(q, MethodChoice::Auto).is_ok();
            let esc = escape_search(q, 300, &[75, 150, 300]).unwrap().witness().is_some();
            if cert && esc {
                both.push(q);
            }
        }
    }
    assert!(both.is_empty(), "{both:?}");
}

#[test]
fn invariant_disks_absorb_interactions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for q in [cx(0.4, 0.0), cx(1.1, 0.0), cx(0.8, 0.05), cx(1.02, -0.05)] {
        let c = certify(q, MethodChoice::Auto).unwrap();
        let v = c.disk;
        let sample = |rng: &mut ChaCha8Rng| {
            v.center + Cx::from_polar(v.radius * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU))
        };
        for _ in 0..1000 {
            let (z1, z2) = (sample(&mut rng), sample(&mut rng));
            // For the centred near-one disk this says f_q(V) is closed under
            // products; for invariant disks it is the series-parallel step.
            let y = f_raw(q, f_raw(q, z1) * f_raw(q, z2));
            assert!(v.slack(y) > -1e-9, "q = {q}, method {:?}", c.method);
        }
    }
}

#[test]
fn near_one_boundary_behaviour() {
    assert!(certify_near_one(cx(1.0, 0.0)).is_err());
    assert!(certify_near_one(cx(1.08, 0.0)).is_err());
    assert!(certify_near_one(cx(1.0, 0.06)).is_ok());
}

#[test]
fn rejections_name_the_failed_condition() {
    let q = cx(0.5, 0.0);
    let far = Disk::new(cx(3.0, 0.0), 1.0).unwrap();
    assert!(matches!(check_certificate(q, &far, 1e-9), Err(Reject::OriginOutside { .. })));
    let unit = Disk::new(cx(0.0, 0.0), 1.0).unwrap();
    assert!(matches!(check_certificate(q, &unit, 1e-9), Err(Reject::SquareNotContained { .. })));
    assert_eq!(check_certificate(cx(2.0, 0.0), &unit, 1e-9), Err(Reject::ExcludedParameter));
}
