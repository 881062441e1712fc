//! Cyclic Jacobi eigensolver and the closed-form 2×2 and trigonometric 3×3 roots.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::spin_algebra::{Matrix, SymMatrix};

/// Off-diagonal Frobenius norm at which Jacobi stops, relative to ‖A‖_F.
pub const JACOBI_THRESHOLD: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Two eigenvalues are one level when closer than this times max(1, scale).
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Ascending eigenvalues with eigenvectors as the columns of `vectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.vectors.rows()).map(|i| self.vectors[(i, k)]).collect()
    }

    /// V·diag(λ)·Vᵀ.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.values.len();
        SymMatrix::from_upper(n, |r, c| {
            (0..n).map(|k| self.vectors[(r, k)] * self.values[k] * self.vectors[(c, k)]).sum()
        })
    }
}

fn off_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)] * a[(r, c)];
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
pub fn eigh(a: &SymMatrix) -> Result<EigenDecomposition> {
    let n = a.n();
    let mut m = a.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let target = JACOBI_THRESHOLD * a.frobenius();
    let mut sweeps = 0;
    while off_norm(&m) > target {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual: off_norm(&m) });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(EigenDecomposition { values, vectors })
}

/// Eigenvalues only.
pub fn eigvalsh(a: &SymMatrix) -> Result<Vec<f64>> {
    Ok(eigh(a)?.values)
}

/// Groups ascending `values` into runs closer than the degeneracy tolerance.
pub fn degenerate_groups(values: &[f64], scale: f64) -> Vec<std::ops::Range<usize>> {
    let tol = DEGENERACY_TOL * scale.max(1.0);
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Roots of [[a, b], [b, d]] given `offdiag_product` = b², as (λ−, λ+).
pub fn eig2_closed(a: f64, d: f64, offdiag_product: f64) -> Result<(f64, f64)> {
    let half = 0.5 * (a - d);
    let disc = half * half + offdiag_product;
    let tol = 1e-12 * (half * half + offdiag_product.abs()).max(f64::MIN_POSITIVE);
    if disc < -tol {
        return Err(Error::NegativeDiscriminant(disc));
    }
    let r = disc.max(0.0).sqrt();
    let mid = 0.5 * (a + d);
    Ok((mid - r, mid + r))
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Frobenius-orthonormal coordinates of a symmetric 3×3 matrix.
fn sym_coords(m: &[[f64; 3]; 3]) -> [f64; 6] {
    let r2 = std::f64::consts::SQRT_2;
    [m[0][0], m[1][1], m[2][2], r2 * m[0][1], r2 * m[0][2], r2 * m[1][2]]
}

/// ∏_{i<j}(λ_i − λ_j)² of a symmetric matrix: the Gram determinant of
/// (I, M, M²), expanded by Cauchy–Binet into squared 3×3 minors.
fn discriminant(m: &[[f64; 3]; 3]) -> f64 {
    let mut m2 = [[0.0; 3]; 3];
    for (i, row) in m2.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = (0..3).map(|k| m[i][k] * m[k][j]).sum();
        }
    }
    let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let cols = [sym_coords(&id), sym_coords(m), sym_coords(&m2)];
    let mut sum = 0.0;
    for r0 in 0..6 {
        for r1 in r0 + 1..6 {
            for r2 in r1 + 1..6 {
                let minor = [r0, r1, r2].map(|r| [cols[0][r], cols[1][r], cols[2][r]]);
                sum += det3(&minor).powi(2);
            }
        }
    }
    sum
}

/// Coefficients of λ³ − aλ² + bλ + c with the depressed-cubic data p, q, φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub p: f64,
    pub q: f64,
    /// In [0, π].
    pub phi: f64,
}

impl CubicCoefficients {
    /// From a symmetric matrix. p and p³ − q² are formed as sums of squares,
    /// so nearly coincident roots keep full precision.
    pub fn from_matrix(m: &[[f64; 3]; 3]) -> Self {
        let a = m[0][0] + m[1][1] + m[2][2];
        let b = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] + m[1][1] * m[2][2]
            - m[1][2] * m[2][1];
        let c = -det3(m);
        let a3 = a / 3.0;
        let mut sh = *m;
        for (i, row) in sh.iter_mut().enumerate() {
            row[i] -= a3;
        }
        let p = sym_coords(&sh).iter().map(|x| x * x).sum::<f64>() / 6.0;
        let q = det3(&sh) / 2.0;
        let phi = (discriminant(&sh) / 108.0).sqrt().atan2(q);
        CubicCoefficients { a, b, c, p, q, phi }
    }

    pub fn new(a: f64, b: f64, c: f64) -> Self {
        let a3 = a / 3.0;
        let p = a3 * a3 - b / 3.0;
        let q = a3 * a3 * a3 - a3 * b / 2.0 - c / 2.0;
        let p3 = p.max(0.0).powi(3);
        let gap = p3 - q * q;
        let gap = if gap < 0.0 && -gap <= 1e-12 * p3.max(q * q) { 0.0 } else { gap };
        let phi = gap.max(0.0).sqrt().atan2(q);
        CubicCoefficients { a, b, c, p, q, phi }
    }

    /// λ_n = a/3 + 2√p·cos(φ/3 + 2πn/3) for n = 1, 2, 3, ascending.
    pub fn roots(&self) -> [f64; 3] {
        let a3 = self.a / 3.0;
        if self.p < 1e-30 {
            return [a3; 3];
        }
        let r = 2.0 * self.p.sqrt();
        [1.0, 2.0, 3.0].map(|n| a3 + r * (self.phi / 3.0 + 2.0 * PI * n / 3.0).cos())
    }
}

/// Eigenvalues of a symmetric 3×3 matrix by the trigonometric cubic formula.
pub fn eig3_trig(m: &[[f64; 3]; 3]) -> [f64; 3] {
    CubicCoefficients::from_matrix(m).roots()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sym3(x: [f64; 6]) -> [[f64; 3]; 3] {
        [[x[0], x[1], x[2]], [x[1], x[3], x[4]], [x[2], x[4], x[5]]]
    }

    fn to_sym(m: &[[f64; 3]; 3]) -> SymMatrix {
        SymMatrix::from_upper(3, |r, c| m[r][c])
    }

    #[test]
    fn diagonal_and_swap() {
        let e = eigh(&SymMatrix::from_diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        let e = eigh(&SymMatrix::from_upper(2, |r, c| if r == c { 0.0 } else { 1.0 })).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_matrix() {
        let e = eigh(&SymMatrix::zeros(4)).unwrap();
        assert_eq!(e.values, vec![0.0; 4]);
    }

    #[test]
    fn eig2_examples() {
        assert_eq!(eig2_closed(1.0, 1.0, 0.0).unwrap(), (1.0, 1.0));
        assert_eq!(eig2_closed(0.0, 0.0, 1.0).unwrap(), (-1.0, 1.0));
        assert!(eig2_closed(0.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn eig3_examples() {
        assert_eq!(eig3_trig(&sym3([1.0, 0.0, 0.0, 1.0, 0.0, 1.0])), [1.0; 3]);
        let r = eig3_trig(&sym3([0.0, 0.0, 0.0, 1.0, 0.0, 2.0]));
        for (x, y) in r.iter().zip([0.0, 1.0, 2.0]) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn eig3_negative_q_branch() {
        // diag(0, 0, -3): q < 0, the sign-free atan2 form must still hold.
        let m = sym3([0.0, 0.0, 0.0, 0.0, 0.0, -3.0]);
        let cc = CubicCoefficients::from_matrix(&m);
        assert!(cc.q < 0.0);
        let r = eig3_trig(&m);
        for (x, y) in r.iter().zip([-3.0, 0.0, 0.0]) {
            assert!((x - y).abs() < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn eig3_close_roots_keep_precision() {
        // Roots 0, 1e-9 and 1 rotated into a dense matrix.
        let c = (0.3f64).cos();
        let s = (0.3f64).sin();
        let q = [[c, -s, 0.0], [s * 0.6, c * 0.6, -0.8], [s * 0.8, c * 0.8, 0.6]];
        let d = [0.0, 1e-9, 1.0];
        let m: [[f64; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| q[i][k] * d[k] * q[j][k]).sum()));
        let r = eig3_trig(&m);
        for (x, y) in r.iter().zip(d) {
            assert!((x - y).abs() < 1e-14, "{r:?}");
        }
    }

    #[test]
    fn discriminant_matches_root_gaps() {
        let m = sym3([2.0, 0.0, 0.0, -1.0, 0.0, 0.5]);
        let want = (3.0f64 * 1.5 * 1.5).powi(2);
        assert!((discriminant(&m) - want).abs() < 1e-12 * want);
    }

    #[test]
    fn degenerate_grouping() {
        let g = degenerate_groups(&[-2.0, -2.0 + 1e-12, -1.0, 0.0, 0.0], 2.0);
        assert_eq!(g, vec![0..2, 2..3, 3..5]);
    }

    proptest! {
        #[test]
        fn eigh_reconstructs(n in 1usize..12, seed in proptest::collection::vec(-5.0f64..5.0, 144)) {
            let a = SymMatrix::from_upper(n, |r, c| seed[r * 12 + c]);
            let e = eigh(&a).unwrap();
            let scale = a.frobenius().max(1.0);
            prop_assert!(e.reconstruct().max_abs_diff(&a) <= 1e-10 * scale);
            let vtv = e.vectors.transpose().matmul(&e.vectors);
            prop_assert!(vtv.max_abs_diff(&Matrix::identity(n)) <= 1e-12);
            prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            for k in 0..n {
                let v = e.vector(k);
                let av = a.as_matrix().matvec(&v);
                let res = av.iter().zip(&v).map(|(x, y)| (x - e.values[k] * y).abs()).fold(0.0, f64::max);
                prop_assert!(res <= 1e-10 * scale);
            }
        }

        #[test]
        fn eig2_matches_eigh(a in -3.0f64..3.0, b in -3.0f64..3.0, d in -3.0f64..3.0) {
            let (lo, hi) = eig2_closed(a, d, b * b).unwrap();
            let e = eigh(&SymMatrix::from_upper(2, |r, c| [[a, b], [b, d]][r][c])).unwrap();
            prop_assert!((lo - e.values[0]).abs() < 1e-14 * 10.0);
            prop_assert!((hi - e.values[1]).abs() < 1e-14 * 10.0);
        }

        #[test]
        fn eig3_matches_eigh(x in proptest::array::uniform6(-2.0f64..2.0)) {
            let m = sym3(x);
            let r = eig3_trig(&m);
            let e = eigh(&to_sym(&m)).unwrap();
            for k in 0..3 {
                prop_assert!((r[k] - e.values[k]).abs() < 1e-10, "{r:?} vs {:?}", e.values);
            }
        }
    }
}
