//! Spin operators, the four-site product space and the tetramer Hamiltonian.
//!
//! Sites are ordered (μ₁, S₁, μ₂, S₂) with local dimensions (2, 3, 2, 3).
//! Composite indices are row-major over that order and every local basis
//! runs from m = +s down to m = −s.

use std::ops::{Index, IndexMut};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self[(r / other.rows, c / other.cols)] * other[(r % other.rows, c % other.cols)]
        })
    }

    pub fn scaled(&self, s: f64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, other: &Matrix, s: f64) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + s * b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Square matrix whose entries satisfy `a[i][j] == a[j][i]` bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix(Matrix);

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix(Matrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix(Matrix::identity(n))
    }

    /// Builds from the upper triangle; `f` is called only for `r <= c`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            for c in r..n {
                let v = f(r, c);
                m[(r, c)] = v;
                m[(c, r)] = v;
            }
        }
        SymMatrix(m)
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        SymMatrix::from_upper(d.len(), |r, c| if r == c { d[r] } else { 0.0 })
    }

    pub fn n(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// Sets `a[r][c]` and `a[c][r]` together.
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.0[(r, c)] = v;
        self.0[(c, r)] = v;
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        self.0.max_abs_diff(&other.0)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.frobenius()
    }

    pub fn scaled(&self, s: f64) -> SymMatrix {
        SymMatrix(self.0.scaled(s))
    }

    pub fn add_scaled(&self, other: &SymMatrix, s: f64) -> SymMatrix {
        SymMatrix(self.0.add_scaled(&other.0, s))
    }

    /// Principal sub-matrix on `idx`.
    pub fn submatrix(&self, idx: &[usize]) -> SymMatrix {
        SymMatrix::from_upper(idx.len(), |r, c| self[(idx[r], idx[c])])
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = f64;
    fn index(&self, rc: (usize, usize)) -> &f64 {
        &self.0[rc]
    }
}

impl TryFrom<Matrix> for SymMatrix {
    type Error = Error;

    fn try_from(m: Matrix) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::DimensionMismatch { expected: m.rows, found: m.cols });
        }
        for r in 0..m.rows {
            for c in r + 1..m.cols {
                let gap = (m[(r, c)] - m[(c, r)]).abs();
                if gap != 0.0 {
                    return Err(Error::NotSymmetric { row: r, col: c, gap });
                }
            }
        }
        Ok(SymMatrix(m))
    }
}

/// A spin site of magnitude `twice_s / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinSite {
    twice_s: u8,
}

impl SpinSite {
    pub const HALF: SpinSite = SpinSite { twice_s: 1 };
    pub const ONE: SpinSite = SpinSite { twice_s: 2 };

    pub fn new(twice_s: u8) -> Result<Self> {
        match twice_s {
            1 | 2 => Ok(SpinSite { twice_s }),
            _ => Err(Error::UnsupportedSpin { twice: twice_s }),
        }
    }

    pub fn magnitude(self) -> f64 {
        f64::from(self.twice_s) / 2.0
    }

    pub fn dimension(self) -> usize {
        usize::from(self.twice_s) + 1
    }

    /// m-value of local basis index `k` (0 is m = +s).
    pub fn m(self, k: usize) -> f64 {
        self.magnitude() - k as f64
    }
}

/// The (Sz, S⁺, S⁻) triple of one site.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinOperators {
    pub sz: Matrix,
    pub splus: Matrix,
    pub sminus: Matrix,
}

pub fn spin_operators(site: SpinSite) -> SpinOperators {
    let d = site.dimension();
    let s = site.magnitude();
    let sz = Matrix::from_fn(d, d, |r, c| if r == c { site.m(r) } else { 0.0 });
    // S⁺|m⟩ lands one row above: row k−1, column k.
    let splus = Matrix::from_fn(d, d, |r, c| {
        if c == r + 1 {
            let m = site.m(c);
            (s * (s + 1.0) - m * (m + 1.0)).sqrt()
        } else {
            0.0
        }
    });
    let sminus = splus.transpose();
    SpinOperators { sz, splus, sminus }
}

/// Site order and dimensions of the tetramer product space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteLayout {
    sites: [SpinSite; 4],
}

impl SiteLayout {
    pub const MU1: usize = 0;
    pub const S1: usize = 1;
    pub const MU2: usize = 2;
    pub const S2: usize = 3;

    pub const TETRAMER: SiteLayout =
        SiteLayout { sites: [SpinSite::HALF, SpinSite::ONE, SpinSite::HALF, SpinSite::ONE] };

    pub fn sites(&self) -> &[SpinSite; 4] {
        &self.sites
    }

    pub fn dims(&self) -> [usize; 4] {
        self.sites.map(SpinSite::dimension)
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().product()
    }

    /// Composite index of local indices `k`.
    pub fn index(&self, k: [usize; 4]) -> usize {
        let d = self.dims();
        ((k[0] * d[1] + k[1]) * d[2] + k[2]) * d[3] + k[3]
    }

    /// Local indices of composite index `i`.
    pub fn digits(&self, mut i: usize) -> [usize; 4] {
        let d = self.dims();
        let mut k = [0; 4];
        for s in (0..4).rev() {
            k[s] = i % d[s];
            i /= d[s];
        }
        k
    }

    /// Twice the total Sz of composite index `i`.
    pub fn twice_sz(&self, i: usize) -> i32 {
        let k = self.digits(i);
        self.sites.iter().zip(k).map(|(s, kk)| i32::from(s.twice_s) - 2 * kk as i32).sum()
    }
}

impl Default for SiteLayout {
    fn default() -> Self {
        SiteLayout::TETRAMER
    }
}

/// Embeds `op` on `site_index`, identity elsewhere.
pub fn site_operator(op: &Matrix, site_index: usize, layout: &SiteLayout) -> Result<Matrix> {
    if site_index >= 4 {
        return Err(Error::SiteIndex(site_index));
    }
    let d = layout.dims();
    if op.rows() != d[site_index] || op.cols() != d[site_index] {
        return Err(Error::DimensionMismatch { expected: d[site_index], found: op.rows() });
    }
    let mut m = Matrix::identity(1);
    for (s, &ds) in d.iter().enumerate() {
        m = if s == site_index { m.kron(op) } else { m.kron(&Matrix::identity(ds)) };
    }
    Ok(m)
}

/// Coupling constants and field, in units where k_B = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub j: f64,
    pub j1: f64,
    pub h: f64,
}

impl ModelParams {
    pub fn new(j: f64, j1: f64, h: f64) -> Result<Self> {
        let p = ModelParams { j, j1, h };
        p.validate()?;
        Ok(p)
    }

    /// Parameters in units of J (J = 1).
    pub fn reduced(j1_over_j: f64, h_over_j: f64) -> Result<Self> {
        ModelParams::new(1.0, j1_over_j, h_over_j)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.j.is_finite() && self.j1.is_finite() && self.h.is_finite()) {
            return Err(Error::InvalidParams("couplings and field must be finite".into()));
        }
        if self.j <= 0.0 {
            return Err(Error::InvalidParams(format!("J must be positive, got {}", self.j)));
        }
        if self.j1 < 0.0 {
            return Err(Error::InvalidParams(format!("J1 must be non-negative, got {}", self.j1)));
        }
        Ok(())
    }

    pub fn with_h(self, h: f64) -> Self {
        ModelParams { h, ..self }
    }
}

fn dot(ops: &[SpinOperators; 4], a: usize, b: usize) -> Matrix {
    let l = SiteLayout::TETRAMER;
    let e = |m: &Matrix, s: usize| site_operator(m, s, &l).expect("layout-consistent operator");
    let zz = e(&ops[a].sz, a).matmul(&e(&ops[b].sz, b));
    let pm = e(&ops[a].splus, a).matmul(&e(&ops[b].sminus, b));
    let mp = e(&ops[a].sminus, a).matmul(&e(&ops[b].splus, b));
    zz.add_scaled(&pm, 0.5).add_scaled(&mp, 0.5)
}

struct HamiltonianTerms {
    intra: SymMatrix,
    inter: SymMatrix,
    sz_total: SymMatrix,
}

fn terms() -> &'static HamiltonianTerms {
    static TERMS: OnceLock<HamiltonianTerms> = OnceLock::new();
    TERMS.get_or_init(|| {
        let l = SiteLayout::TETRAMER;
        let ops = l.sites().map(spin_operators);
        let (m1, s1, m2, s2) = (SiteLayout::MU1, SiteLayout::S1, SiteLayout::MU2, SiteLayout::S2);
        let intra = dot(&ops, s1, m1).add_scaled(&dot(&ops, s2, m2), 1.0);
        let inter = dot(&ops, s1, s2)
            .add_scaled(&dot(&ops, s1, m2), 1.0)
            .add_scaled(&dot(&ops, m1, s2), 1.0)
            .add_scaled(&dot(&ops, m1, m2), 1.0);
        let sz_total = Matrix::from_fn(36, 36, |r, c| if r == c { f64::from(l.twice_sz(r)) / 2.0 } else { 0.0 });
        HamiltonianTerms {
            intra: SymMatrix::try_from(intra).expect("exchange terms are symmetric"),
            inter: SymMatrix::try_from(inter).expect("exchange terms are symmetric"),
            sz_total: SymMatrix::try_from(sz_total).expect("diagonal"),
        }
    })
}

/// Total Sz over the four sites.
pub fn total_sz() -> &'static SymMatrix {
    &terms().sz_total
}

/// H = J(S₁·μ₁ + S₂·μ₂) + J₁(S₁+μ₁)·(S₂+μ₂) − h·Sz_total.
pub fn build_hamiltonian(p: &ModelParams) -> Result<SymMatrix> {
    p.validate()?;
    Ok(zero_field_hamiltonian(p).add_scaled(total_sz(), -p.h))
}

/// The h = 0 part J(S₁·μ₁ + S₂·μ₂) + J₁(S₁+μ₁)·(S₂+μ₂).
pub fn zero_field_hamiltonian(p: &ModelParams) -> SymMatrix {
    let t = terms();
    t.intra.scaled(p.j).add_scaled(&t.inter, p.j1)
}

/// One σ_T^z sector of a Sz-conserving operator.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorBlock {
    /// Twice the σ_T^z value.
    pub twice_sz: i32,
    pub indices: Vec<usize>,
    pub block: SymMatrix,
}

impl SectorBlock {
    pub fn sigma_z(&self) -> f64 {
        f64::from(self.twice_sz) / 2.0
    }
}

/// Composite indices grouped by σ_T^z, descending.
pub fn sector_indices(layout: &SiteLayout) -> Vec<(i32, Vec<usize>)> {
    let n = layout.total_dim();
    let mut keys: Vec<i32> = (0..n).map(|i| layout.twice_sz(i)).collect();
    keys.sort_unstable_by(|a, b| b.cmp(a));
    keys.dedup();
    keys.into_iter().map(|k| (k, (0..n).filter(|&i| layout.twice_sz(i) == k).collect())).collect()
}

const SECTOR_TOL: f64 = 1e-14;

/// Splits `h` into σ_T^z blocks, rejecting any cross-sector coupling.
pub fn sector_blocks(h: &SymMatrix, layout: &SiteLayout) -> Result<Vec<SectorBlock>> {
    let n = layout.total_dim();
    if h.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.n() });
    }
    for r in 0..n {
        for c in r + 1..n {
            if layout.twice_sz(r) != layout.twice_sz(c) && h[(r, c)].abs() > SECTOR_TOL {
                return Err(Error::SectorLeak { row: r, col: c, value: h[(r, c)] });
            }
        }
    }
    Ok(sector_indices(layout)
        .into_iter()
        .map(|(twice_sz, indices)| {
            let block = h.submatrix(&indices);
            SectorBlock { twice_sz, indices, block }
        })
        .collect())
}

/// Permutation swapping the dimers (μ₁,S₁) ↔ (μ₂,S₂): `perm[i]` is the image of `i`.
pub fn dimer_swap_permutation() -> Vec<usize> {
    let l = SiteLayout::TETRAMER;
    (0..36)
        .map(|i| {
            let k = l.digits(i);
            l.index([k[2], k[3], k[0], k[1]])
        })
        .collect()
}

/// Permutation flipping every local m → −m.
pub fn spin_flip_permutation(dims: &[usize]) -> Vec<usize> {
    let n: usize = dims.iter().product();
    (0..n)
        .map(|mut i| {
            let mut k = vec![0; dims.len()];
            for s in (0..dims.len()).rev() {
                k[s] = i % dims[s];
                i /= dims[s];
            }
            k.iter().zip(dims).fold(0, |acc, (&kk, &d)| acc * d + (d - 1 - kk))
        })
        .collect()
}
