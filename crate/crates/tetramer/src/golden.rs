//! Exact zero-temperature negativities inside each ground-state phase and at
//! the transition fields between them.

use std::f64::consts::PI;

/// One reference point, values in [`crate::PairLabel::ALL`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct GoldenPoint {
    pub state: &'static str,
    pub j1_over_j: f64,
    pub h_over_j: f64,
    pub values: [f64; 4],
}

/// cos(φ/3 + 2π/3) with φ = atan2(√(p³ − q²), q): the middle trigonometric
/// cubic root factor that carries the lowest partial-transpose eigenvalue.
pub fn trig_cos(p: f64, q: f64) -> f64 {
    let phi = (p.powi(3) - q * q).max(0.0).sqrt().atan2(q);
    (phi / 3.0 + 2.0 * PI / 3.0).cos()
}

fn s(x: f64) -> f64 {
    x.sqrt()
}

fn pt(state: &'static str, j1: f64, h: f64, values: [f64; 4]) -> GoldenPoint {
    GoldenPoint { state, j1_over_j: j1, h_over_j: h, values }
}

/// Interior points of every phase.
pub fn phase_interiors() -> Vec<GoldenPoint> {
    let c1 = trig_cos(2179.0 / 270f64.powi(2), 43874.0 / 270f64.powi(3));
    let c2 = trig_cos(4.0 / 81.0, 11.0 / (2.0 * 729.0));
    vec![
        pt("|0,1/2,1/2>", 0.5, 0.25, [1.0 / 9.0, 0.0, 1.0 / 3.0, 0.0]),
        pt("|1,1/2,1/2>", 0.5, 1.0, [0.0, 0.0, s(2.0) / 3.0, 0.0]),
        pt("|2,3/2,1/2>", 0.5, 2.0, [0.0, 0.0, (s(17.0) - 3.0) / 12.0, 0.0]),
        pt("|3,3/2,3/2>", 0.5, 3.0, [0.0; 4]),
        pt("|0,3/2,3/2>", 1.5, 0.5, [0.5, 1.0 / 6.0, 0.0, 2.0 / 9.0]),
        pt(
            "|1,3/2,3/2>",
            1.5,
            2.0,
            [
                (3.0 * s(313.0) - 49.0 - s(2179.0) * c1) / 135.0,
                (3.0 * s(89.0) - 19.0) / 90.0,
                (s(34.0) - 4.0) / 30.0,
                (3.0 * s(33.0) - 7.0) / 60.0,
            ],
        ),
        pt(
            "|2,3/2,3/2>",
            1.5,
            3.75,
            [-(1.0 + 4.0 * c2) / 9.0, (s(5.0) - 2.0) / 6.0, (s(17.0) - 3.0) / 12.0, (s(17.0) - 3.0) / 12.0],
        ),
        pt("|3,3/2,3/2>", 1.5, 5.0, [0.0; 4]),
        pt("|0,*> on J1=J", 1.0, 0.5, [0.25, 0.0, 0.0, 0.0]),
        pt(
            "|2,*> on J1=J",
            1.0,
            2.5,
            [(s(29.0) - 5.0) / 18.0, (s(17.0) - 4.0) / 18.0, (s(89.0) - 9.0) / 36.0, (s(89.0) - 9.0) / 36.0],
        ),
        pt("|3,3/2,3/2>", 1.0, 3.5, [0.0; 4]),
    ]
}

/// Uniform ground-manifold mixtures at the transition fields.
pub fn transition_points() -> Vec<GoldenPoint> {
    let c1 = trig_cos(5494.0 / 540f64.powi(2), 110314.0 / 540f64.powi(3));
    let c2 = trig_cos(9859.0 / 540f64.powi(2), 659429.0 / 540f64.powi(3));
    let c3 = trig_cos(19.0 / 324.0, 41.0 / 2916.0);
    vec![
        pt("|0,1/2,1/2> + |1,1/2,1/2>", 0.5, 0.5, [(s(6.0) - 2.0) / 18.0, 0.0, (s(73.0) + s(17.0) - 4.0) / 24.0, 0.0]),
        pt("|1,1/2,1/2> + |2,3/2,1/2>", 0.5, 1.75, [0.0, 0.0, (s(41.0) - 3.0) / 18.0, 0.0]),
        pt("|2,3/2,1/2> + |3,3/2,3/2>", 0.5, 2.25, [0.0, 0.0, (s(11.0) - 3.0) / 9.0, 0.0]),
        pt(
            "|0,3/2,3/2> + |1,3/2,3/2>",
            1.5,
            1.5,
            [
                (3.0 * s(1193.0) - 74.0 - s(5494.0) * c1) / 270.0,
                (s(2626.0) - 29.0) / 180.0,
                0.0,
                (3.0 * s(3313.0) + s(19601.0) - 188.0) / 720.0,
            ],
        ),
        pt(
            "|1,3/2,3/2> + |2,3/2,3/2>",
            1.5,
            3.0,
            [
                (12.0 * s(58.0) - 109.0 - s(9859.0) * c2) / 270.0,
                (3.0 * s(394.0) - 49.0) / 180.0,
                (3.0 * s(3.0) + s(11.0) - 8.0) / 20.0,
                (3.0 * s(323.0) + 2.0 * s(274.0) - 67.0) / 180.0,
            ],
        ),
        pt(
            "|2,3/2,3/2> + |3,3/2,3/2>",
            1.5,
            4.5,
            [-(2.0 + s(19.0) * c3) / 9.0, (s(26.0) - 5.0) / 12.0, (s(89.0) - 9.0) / 24.0, (s(89.0) - 9.0) / 24.0],
        ),
    ]
}
