//! Reference values of active parameters with `Re q > Δ` and the sweep
//! that recomputes them.

use serde::{Deserialize, Serialize};

use super::activity::{activity_search, ActivityPoint};
use crate::{Cx, Error, Result};

/// `(Δ, Re q, Im q, d1, d2)` for Δ = 4..=45, three decimals.
pub const REFERENCE_TABLE: [(u32, f64, f64, u32, u32); 42] = [
    (4, 4.027, 0.783, 3, 2),
    (5, 5.088, 0.836, 4, 3),
    (6, 6.132, 0.881, 5, 4),
    (7, 7.058, 1.521, 6, 4),
    (8, 8.120, 1.577, 7, 5),
    (9, 9.012, 2.194, 8, 5),
    (10, 10.084, 2.256, 9, 6),
    (11, 11.147, 2.314, 10, 7),
    (12, 12.038, 2.928, 11, 7),
    (13, 13.109, 2.990, 12, 8),
    (14, 14.173, 3.049, 13, 9),
    (15, 15.063, 3.662, 14, 9),
    (16, 16.133, 3.724, 15, 10),
    (17, 17.197, 3.784, 16, 11),
    (18, 18.087, 4.395, 17, 11),
    (19, 19.157, 4.457, 18, 12),
    (20, 20.222, 4.518, 19, 13),
    (21, 21.111, 5.129, 20, 13),
    (22, 22.180, 5.191, 21, 14),
    (23, 23.246, 5.252, 22, 15),
    (24, 24.135, 5.862, 23, 15),
    (25, 25.204, 5.925, 24, 16),
    (26, 26.269, 5.986, 25, 17),
    (27, 27.158, 6.596, 26, 17),
    (28, 28.227, 6.658, 27, 18),
    (29, 29.293, 6.719, 28, 19),
    (30, 30.182, 7.329, 29, 19),
    (31, 31.251, 7.392, 30, 20),
    (32, 32.317, 7.453, 31, 21),
    (33, 33.206, 8.063, 32, 21),
    (34, 34.274, 8.125, 33, 22),
    (35, 35.340, 8.187, 34, 23),
    (36, 36.229, 8.796, 35, 23),
    (37, 37.298, 8.859, 36, 24),
    (38, 38.364, 8.920, 37, 25),
    (39, 39.252, 9.530, 38, 25),
    (40, 40.321, 9.592, 39, 26),
    (41, 41.387, 9.654, 40, 27),
    (42, 42.276, 10.263, 41, 27),
    (43, 43.344, 10.326, 42, 28),
    (44, 44.411, 10.387, 43, 29),
    (45, 45.299, 10.997, 44, 29),
];

/// Reference row for `Δ`.
pub fn reference_row(delta: u32) -> Option<(u32, f64, f64, u32, u32)> {
    REFERENCE_TABLE.iter().copied().find(|r| r.0 == delta)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub delta: u32,
    pub d1: u32,
    pub d2: u32,
    pub q: Cx,
    /// `Re q / Δ`.
    pub ratio: f64,
    pub reference: Cx,
    pub point: ActivityPoint,
}

impl TableRow {
    pub fn deviation(&self) -> f64 {
        (self.q - self.reference).norm()
    }

    pub const CSV_HEADER: &'static str = "delta,re_q,im_q,d1,d2,re_q_over_delta";

    pub fn csv(&self) -> String {
        format!("{},{:.6},{:.6},{},{},{:.6}", self.delta, self.q.re, self.q.im, self.d1, self.d2, self.ratio)
    }
}

/// Recompute the rows with `delta_min <= Δ <= delta_max` from their types.
pub fn table_sweep(delta_min: u32, delta_max: u32, theta_grid: usize, workers: usize) -> Result<Vec<TableRow>> {
    if delta_min > delta_max || reference_row(delta_min).is_none() || reference_row(delta_max).is_none() {
        return Err(Error::Argument(format!("Δ range must lie in 4..=45, got {delta_min}..={delta_max}")));
    }
    (delta_min..=delta_max)
        .map(|delta| {
            let (_, re, im, d1, d2) = reference_row(delta).expect("range checked");
            let point = activity_search(d1, d2, theta_grid, workers)?;
            Ok(TableRow { delta, d1, d2, q: point.q, ratio: point.q.re / delta as f64, reference: Cx::new(re, im), point })
        })
        .collect()
}
