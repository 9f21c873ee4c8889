//! The pixel atlas: every pixel centre is classified as escaping (blue, in
//! up to three shades by search depth), certified zero-free (orange), or
//! neither (white).

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::certify::{certify, MethodChoice};
use crate::escape::{escape_search, EscapeVerdict, EscapeWitness};
use crate::par::map_indexed;
use crate::{Cx, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    pub lower_left: Cx,
    pub upper_right: Cx,
    pub width_px: usize,
    pub height_px: usize,
    /// Ascending search budgets; the first one with an escape picks the shade.
    pub blue_depths: Vec<u64>,
    /// Smallest certificate slack that counts as orange.
    pub orange_slack: f64,
    /// Worker threads; `0` uses every available core.
    pub workers: usize,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            lower_left: Cx::new(0.0, -1.0),
            upper_right: Cx::new(2.0, 1.0),
            width_px: 1001,
            height_px: 1001,
            blue_depths: vec![75, 150, 300],
            orange_slack: 1e-6,
            workers: 0,
        }
    }
}

impl RenderSpec {
    /// Same frame as the default at a different resolution.
    pub fn thumbnail(width_px: usize, height_px: usize) -> RenderSpec {
        RenderSpec { width_px, height_px, ..RenderSpec::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.width_px == 0 || self.height_px == 0 {
            return Err(Error::Argument("image dimensions must be positive".into()));
        }
        if self.blue_depths.is_empty() || self.blue_depths.len() > 3 {
            return Err(Error::Argument("between one and three blue depths are supported".into()));
        }
        if self.blue_depths.windows(2).any(|w| w[0] >= w[1]) || self.blue_depths[0] == 0 {
            return Err(Error::Argument("blue depths must be positive and strictly ascending".into()));
        }
        if !(self.upper_right.re > self.lower_left.re && self.upper_right.im > self.lower_left.im) {
            return Err(Error::Argument("upper_right must lie above and right of lower_left".into()));
        }
        Ok(())
    }

    /// Centre of pixel `(row, col)`; row 0 is the top of the image.
    pub fn pixel_center(&self, row: usize, col: usize) -> Cx {
        let t = |k: usize, n: usize| if n == 1 { 0.0 } else { k as f64 / (n - 1) as f64 };
        let re = self.lower_left.re + t(col, self.width_px) * (self.upper_right.re - self.lower_left.re);
        let im = self.upper_right.im - t(row, self.height_px) * (self.upper_right.im - self.lower_left.im);
        Cx::new(re, im)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Blue75,
    Blue150,
    Blue300,
    Orange,
    White,
}

impl Color {
    pub const ALL: [Color; 5] = [Color::Blue75, Color::Blue150, Color::Blue300, Color::Orange, Color::White];

    pub fn rgb(self) -> [u8; 3] {
        match self {
            Color::Blue75 => [20, 40, 120],
            Color::Blue150 => [60, 90, 180],
            Color::Blue300 => [120, 150, 220],
            Color::Orange => [245, 130, 32],
            Color::White => [255, 255, 255],
        }
    }

    pub fn is_blue(self) -> bool {
        matches!(self, Color::Blue75 | Color::Blue150 | Color::Blue300)
    }

    fn blue(shade_index: usize) -> Color {
        [Color::Blue75, Color::Blue150, Color::Blue300][shade_index]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PixelDetail {
    Escaped { witness: EscapeWitness },
    Certified { method: crate::certify::Method, center: Cx, radius: f64, slack: f64 },
    Excluded,
    Unresolved { escape: String, certificate: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PixelVerdict {
    pub q: Cx,
    pub color: Color,
    pub detail: PixelDetail,
}

/// Classify a single parameter value.
pub fn classify_pixel(q: Cx, spec: &RenderSpec) -> PixelVerdict {
    if q.im == 0.0 && (q.re == 0.0 || q.re == 1.0 || q.re == 2.0) {
        return PixelVerdict { q, color: Color::White, detail: PixelDetail::Excluded };
    }
    let max_depth = *spec.blue_depths.last().expect("validated spec");
    let escape = match escape_search(q, max_depth, &spec.blue_depths) {
        Ok(EscapeVerdict::Escaped { witness, .. }) => {
            let idx = spec.blue_depths.iter().position(|&d| d >= witness.budget_used).expect("within the largest depth");
            return PixelVerdict { q, color: Color::blue(idx), detail: PixelDetail::Escaped { witness } };
        }
        Ok(v) => v.status().to_string(),
        Err(e) => e.to_string(),
    };
    let certificate = match certify(q, MethodChoice::Auto) {
        Ok(c) if c.slack() >= spec.orange_slack => {
            return PixelVerdict {
                q,
                color: Color::Orange,
                detail: PixelDetail::Certified { method: c.method, center: c.disk.center, radius: c.disk.radius, slack: c.slack() },
            };
        }
        Ok(c) => format!("slack {:e} below threshold", c.slack()),
        Err(e) => e.to_string(),
    };
    PixelVerdict { q, color: Color::White, detail: PixelDetail::Unresolved { escape, certificate } }
}

/// All pixels, row-major from the top-left corner. Rows are distributed
/// over the workers; the result does not depend on their number.
pub fn render_pixels(spec: &RenderSpec) -> Result<Vec<PixelVerdict>> {
    spec.validate()?;
    let rows = map_indexed(spec.height_px, spec.workers, |r| {
        (0..spec.width_px).map(|c| classify_pixel(spec.pixel_center(r, c), spec)).collect::<Vec<_>>()
    });
    Ok(rows.into_iter().flatten().collect())
}

/// Binary PPM (`P6`) encoding of classified pixels.
pub fn encode_ppm(spec: &RenderSpec, pixels: &[PixelVerdict]) -> Result<Vec<u8>> {
    if pixels.len() != spec.width_px * spec.height_px {
        return Err(Error::Argument("pixel count does not match the image size".into()));
    }
    let mut out = format!("P6\n{} {}\n255\n", spec.width_px, spec.height_px).into_bytes();
    out.reserve(3 * pixels.len());
    for p in pixels {
        out.extend_from_slice(&p.color.rgb());
    }
    Ok(out)
}

/// One JSON object per pixel, in image order.
pub fn write_ndjson(pixels: &[PixelVerdict], mut out: impl Write) -> Result<()> {
    for p in pixels {
        serde_json::to_writer(&mut out, p).map_err(|e| Error::Io(e.to_string()))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColorCounts {
    pub blue75: u64,
    pub blue150: u64,
    pub blue300: u64,
    pub orange: u64,
    pub white: u64,
}

impl ColorCounts {
    pub fn of(pixels: &[PixelVerdict]) -> ColorCounts {
        let mut c = ColorCounts { blue75: 0, blue150: 0, blue300: 0, orange: 0, white: 0 };
        for p in pixels {
            *match p.color {
                Color::Blue75 => &mut c.blue75,
                Color::Blue150 => &mut c.blue150,
                Color::Blue300 => &mut c.blue300,
                Color::Orange => &mut c.orange,
                Color::White => &mut c.white,
            } += 1;
        }
        c
    }

    pub fn blue(&self) -> u64 {
        self.blue75 + self.blue150 + self.blue300
    }

    pub fn total(&self) -> u64 {
        self.blue() + self.orange + self.white
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderSummary {
    pub width: usize,
    pub height: usize,
    pub counts: ColorCounts,
    pub wall_seconds: f64,
}

/// Classify every pixel, write the image and optionally the per-pixel dump.
pub fn render(spec: &RenderSpec, out_image: &std::path::Path, out_data: Option<&std::path::Path>) -> Result<RenderSummary> {
    let start = Instant::now();
    let pixels = render_pixels(spec)?;
    std::fs::write(out_image, encode_ppm(spec, &pixels)?)?;
    if let Some(path) = out_data {
        let f = std::io::BufWriter::new(std::fs::File::create(path)?);
        write_ndjson(&pixels, f)?;
    }
    Ok(RenderSummary {
        width: spec.width_px,
        height: spec.height_px,
        counts: ColorCounts::of(&pixels),
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}
