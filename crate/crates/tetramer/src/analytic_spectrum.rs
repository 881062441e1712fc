//! Closed-form tetramer spectrum, eigenvectors, partition function and the
//! dimer spectra used to decompose tetramer states into dimer products.

use std::fmt;

use crate::spin_algebra::{ModelParams, SiteLayout};

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half(pub i8);

impl Half {
    pub const HALF: Half = Half(1);
    pub const THREE_HALVES: Half = Half(3);

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Quantum numbers |σ_T^z, σ_T, σ₁, σ₂⟩ of a tetramer eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelLabel {
    pub sigma_t_z: i8,
    pub sigma_t: u8,
    pub sigma_1: Half,
    pub sigma_2: Half,
}

impl fmt::Display for LevelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{},{},{}>", self.sigma_t_z, self.sigma_t, self.sigma_1, self.sigma_2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledLevel {
    pub label: LevelLabel,
    pub energy: f64,
}

/// A multiplet: ε = c_j·J + c_j1·J₁ − m·h for m = σ_T … −σ_T.
struct Multiplet {
    sigma_t: u8,
    sigma_1: Half,
    sigma_2: Half,
    c_j: f64,
    c_j1: f64,
}

const MULTIPLETS: [Multiplet; 10] = [
    Multiplet { sigma_t: 3, sigma_1: Half(3), sigma_2: Half(3), c_j: 1.0, c_j1: 2.25 },
    Multiplet { sigma_t: 2, sigma_1: Half(3), sigma_2: Half(3), c_j: 1.0, c_j1: -0.75 },
    Multiplet { sigma_t: 2, sigma_1: Half(3), sigma_2: Half(1), c_j: -0.5, c_j1: 0.75 },
    Multiplet { sigma_t: 2, sigma_1: Half(1), sigma_2: Half(3), c_j: -0.5, c_j1: 0.75 },
    Multiplet { sigma_t: 1, sigma_1: Half(3), sigma_2: Half(3), c_j: 1.0, c_j1: -2.75 },
    Multiplet { sigma_t: 1, sigma_1: Half(3), sigma_2: Half(1), c_j: -0.5, c_j1: -1.25 },
    Multiplet { sigma_t: 1, sigma_1: Half(1), sigma_2: Half(3), c_j: -0.5, c_j1: -1.25 },
    Multiplet { sigma_t: 1, sigma_1: Half(1), sigma_2: Half(1), c_j: -2.0, c_j1: 0.25 },
    Multiplet { sigma_t: 0, sigma_1: Half(3), sigma_2: Half(3), c_j: 1.0, c_j1: -3.75 },
    Multiplet { sigma_t: 0, sigma_1: Half(1), sigma_2: Half(1), c_j: -2.0, c_j1: -0.75 },
];

/// The 36 levels, multiplet by multiplet with σ_T^z descending.
pub fn tetramer_levels(p: &ModelParams) -> Vec<LabeledLevel> {
    let mut out = Vec::with_capacity(36);
    for mp in &MULTIPLETS {
        let s = mp.sigma_t as i8;
        for m in (-s..=s).rev() {
            out.push(LabeledLevel {
                label: LevelLabel { sigma_t_z: m, sigma_t: mp.sigma_t, sigma_1: mp.sigma_1, sigma_2: mp.sigma_2 },
                energy: mp.c_j * p.j + mp.c_j1 * p.j1 - f64::from(m) * p.h,
            });
        }
    }
    out
}

/// (μ₁, S₁, μ₂, S₂) z-projections of the basis states φ_i⁺, i = 1 … 18.
/// φ_i⁻ is the global spin flip of φ_i⁺.
const PHI_PLUS: [[f64; 4]; 18] = [
    [0.5, 1.0, 0.5, 1.0],
    [0.5, 1.0, 0.5, 0.0],
    [0.5, 1.0, -0.5, 1.0],
    [0.5, 0.0, 0.5, 1.0],
    [-0.5, 1.0, 0.5, 1.0],
    [0.5, 1.0, 0.5, -1.0],
    [0.5, 1.0, -0.5, 0.0],
    [0.5, 0.0, 0.5, 0.0],
    [0.5, 0.0, -0.5, 1.0],
    [-0.5, 1.0, 0.5, 0.0],
    [-0.5, 1.0, -0.5, 1.0],
    [0.5, -1.0, 0.5, 1.0],
    [-0.5, 0.0, 0.5, 1.0],
    [-0.5, -1.0, 0.5, 1.0],
    [-0.5, 0.0, -0.5, 1.0],
    [-0.5, 0.0, 0.5, 0.0],
    [0.5, -1.0, -0.5, 1.0],
    [0.5, -1.0, 0.5, 0.0],
];

/// Product-basis index of φ_i^± (`i` is 1-based, `sign` is ±1).
pub fn phi_index(i: usize, sign: i8) -> usize {
    let m = PHI_PLUS[i - 1].map(|x| x * f64::from(sign));
    let l = SiteLayout::TETRAMER;
    let k: [usize; 4] = std::array::from_fn(|s| (l.sites()[s].magnitude() - m[s]) as usize);
    l.index(k)
}

fn vec_from(terms: &[(usize, i8, f64)], scale: f64) -> Vec<f64> {
    let mut v = vec![0.0; 36];
    for &(i, sign, c) in terms {
        v[phi_index(i, sign)] += scale * c;
    }
    v
}

/// Coefficients on φ^± for the |σ_T^z| ≥ 1 rows, keyed by (σ_T, σ₁, σ₂, |σ_T^z|).
/// The overall factor is `sign_factor(±)·scale`.
fn nonzero_row(sigma_t: u8, s1: i8, s2: i8, mz: i8) -> (Vec<(usize, f64)>, f64, bool) {
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    // (terms, scale, carries ∓)
    match (sigma_t, s1, s2, mz) {
        (3, 3, 3, 3) => (vec![(1, 1.0)], 1.0, false),
        (3, 3, 3, 2) => (vec![(2, r2), (3, 1.0), (4, r2), (5, 1.0)], 1.0 / 6f64.sqrt(), false),
        (2, 3, 3, 2) => (vec![(2, r2), (3, 1.0), (4, -r2), (5, -1.0)], 1.0 / 6f64.sqrt(), true),
        (2, 3, 1, 2) => (vec![(2, 1.0), (3, -r2)], 1.0 / r3, true),
        (2, 1, 3, 2) => (vec![(4, 1.0), (5, -r2)], 1.0 / r3, true),
        (3, 3, 3, 1) => (
            vec![(6, 1.0), (7, r2), (8, 2.0), (9, r2), (10, r2), (11, 1.0), (12, 1.0), (13, r2)],
            1.0 / 15f64.sqrt(),
            false,
        ),
        (2, 3, 3, 1) => (vec![(6, 1.0), (7, r2), (12, -1.0), (13, -r2)], 1.0 / 6f64.sqrt(), true),
        (2, 3, 1, 1) => (vec![(6, r2), (7, -1.0), (8, r2), (9, -2.0), (10, 1.0), (11, -r2)], 1.0 / (2.0 * r3), true),
        (2, 1, 3, 1) => (vec![(8, r2), (9, 1.0), (10, -2.0), (11, -r2), (12, r2), (13, -1.0)], 1.0 / (2.0 * r3), true),
        (1, 3, 3, 1) => (
            vec![
                (6, 1.0),
                (7, r2),
                (8, -4.0 / 3.0),
                (9, -2.0 * r2 / 3.0),
                (10, -2.0 * r2 / 3.0),
                (11, -2.0 / 3.0),
                (12, 1.0),
                (13, r2),
            ],
            1.0 / 10f64.sqrt(),
            false,
        ),
        (1, 3, 1, 1) => (vec![(6, 3.0 * r2), (7, -3.0), (8, -r2), (9, 2.0), (10, -1.0), (11, r2)], 1.0 / 6.0, false),
        (1, 1, 3, 1) => (vec![(8, r2), (9, 1.0), (10, -2.0), (11, -r2), (12, -3.0 * r2), (13, 3.0)], 1.0 / 6.0, false),
        (1, 1, 1, 1) => (vec![(8, 1.0), (9, -r2), (10, -r2), (11, 2.0)], 1.0 / 3.0, false),
        _ => unreachable!("no such multiplet row"),
    }
}

type Coeffs = Vec<(usize, f64)>;

/// σ_T^z = 0 rows: (coefficients on φ⁻, coefficients on φ⁺, scale).
fn zero_row(sigma_t: u8, s1: i8, s2: i8) -> (Coeffs, Coeffs, f64) {
    let r2 = 2f64.sqrt();
    let r5 = 5f64.sqrt();
    let r10 = 10f64.sqrt();
    let neg = |v: &[(usize, f64)]| v.iter().map(|&(i, c)| (i, -c)).collect::<Vec<_>>();
    let a = vec![(14, 1.0), (15, r2), (16, 2.0), (17, 1.0), (18, r2)];
    let b = vec![(14, 3.0), (15, r2), (16, 2.0), (17, 1.0), (18, r2)];
    let c = vec![(15, 5.0), (16, -r2), (17, r2), (18, -4.0)];
    let d = vec![(16, r2), (17, -r2), (18, -1.0)];
    let e = vec![(14, 9.0), (15, -r2), (16, -2.0), (17, -1.0), (18, -r2)];
    let f = vec![(15, r2), (16, -1.0), (17, -2.0), (18, r2)];
    let g = vec![(14, 3.0), (15, -r2), (16, -2.0), (17, -1.0), (18, -r2)];
    match (sigma_t, s1, s2) {
        (3, 3, 3) => (a.clone(), a, 1.0 / (2.0 * r5)),
        (2, 3, 3) => (b.clone(), neg(&b), -1.0 / 6.0),
        (2, 3, 1) => (c.clone(), neg(&c), -1.0 / (3.0 * r10)),
        (2, 1, 3) => (d.clone(), neg(&d), -1.0 / r10),
        (1, 3, 3) => (e.clone(), e, 1.0 / (6.0 * r5)),
        (1, 3, 1) => (c.clone(), c, 1.0 / (3.0 * r10)),
        (1, 1, 3) => (d.clone(), d, 1.0 / r10),
        (1, 1, 1) => (f.clone(), f, 1.0 / (3.0 * r2)),
        (0, 3, 3) => (g.clone(), neg(&g), -1.0 / 6.0),
        (0, 1, 1) => (f.clone(), neg(&f), -1.0 / (3.0 * r2)),
        _ => unreachable!("no such multiplet row"),
    }
}

/// A tetramer eigenvector in the product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TetramerState {
    pub label: LevelLabel,
    pub vector: Vec<f64>,
}

/// The 36 eigenvectors, in the same order as [`tetramer_levels`].
pub fn tetramer_eigenvectors() -> Vec<TetramerState> {
    let zero = ModelParams { j: 1.0, j1: 0.0, h: 0.0 };
    tetramer_levels(&zero)
        .into_iter()
        .map(|lv| {
            let l = lv.label;
            let (s1, s2) = (l.sigma_1.0, l.sigma_2.0);
            let vector = if l.sigma_t_z == 0 {
                let (minus, plus, scale) = zero_row(l.sigma_t, s1, s2);
                let terms: Vec<(usize, i8, f64)> =
                    minus.iter().map(|&(i, c)| (i, -1, c)).chain(plus.iter().map(|&(i, c)| (i, 1, c))).collect();
                vec_from(&terms, scale)
            } else {
                let sign = l.sigma_t_z.signum();
                let (row, scale, mp) = nonzero_row(l.sigma_t, s1, s2, l.sigma_t_z.abs());
                // ∓ prefactor: − for the σ_T^z > 0 member, + for σ_T^z < 0.
                let pre = if mp { -f64::from(sign) } else { 1.0 };
                let terms: Vec<(usize, i8, f64)> = row.iter().map(|&(i, c)| (i, sign, c)).collect();
                vec_from(&terms, scale * pre)
            };
            TetramerState { label: l, vector }
        })
        .collect()
}

/// Closed-form partition function, evaluated term by term.
pub fn partition_function_closed(p: &ModelParams, beta: f64) -> f64 {
    let (j, j1, h, b) = (p.j, p.j1, p.h, beta);
    let e = |x: f64| (-b * x).exp();
    let ch = f64::cosh;
    let inner = ch(3.0 * b * h) * e(j + 2.5 * j1)
        + 2.0
            * ch(2.0 * b * h)
            * e(0.25 * (j + j1))
            * (ch(0.75 * b * (j - j1)) + ch(0.75 * b * (j + j1)) * e(1.5 * j1))
        + 2.0 * ch(b * h) * (ch(2.5 * b * j1) * e(j) + e(-0.5 * j) * (2.0 * ch(b * j1) + ch(0.5 * b * (3.0 * j - j1))))
        + e(j) * (ch(2.5 * b * j1) + ch(1.5 * b * j1) * e(-2.0 * j1))
        + e(-0.5 * j) * (2.0 * ch(b * j1) + ch(0.5 * b * j1) * e(-1.5 * j));
    2.0 * e(-0.25 * j1) * inner
}

/// Σ exp(−β ε_k) over the closed-form levels, shifted by the minimum level.
/// Returns (ln Z, minimum level).
pub fn log_partition_levels(p: &ModelParams, beta: f64) -> (f64, f64) {
    let levels = tetramer_levels(p);
    let e0 = levels.iter().map(|l| l.energy).fold(f64::INFINITY, f64::min);
    let s: f64 = levels.iter().map(|l| (-beta * (l.energy - e0)).exp()).sum();
    (s.ln() - beta * e0, e0)
}

/// Σ exp(−β ε_k) over the closed-form levels.
pub fn partition_function_levels(p: &ModelParams, beta: f64) -> f64 {
    log_partition_levels(p, beta).0.exp()
}

/// Which two-spin dimer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DimerKind {
    /// Two spin-1/2 sites, basis |μ₁ᶻ, μ₂ᶻ⟩.
    HalfHalf,
    /// Spin-1/2 then spin-1, basis |μᶻ, Sᶻ⟩.
    HalfOne,
    /// Two spin-1 sites, basis |S₁ᶻ, S₂ᶻ⟩.
    OneOne,
}

impl DimerKind {
    pub fn dims(self) -> (usize, usize) {
        match self {
            DimerKind::HalfHalf => (2, 2),
            DimerKind::HalfOne => (2, 3),
            DimerKind::OneOne => (3, 3),
        }
    }
}

/// Dimer eigenstate |total_z, total⟩ with its energy at (J_eff, h).
#[derive(Debug, Clone, PartialEq)]
pub struct DimerLevel {
    pub kind: DimerKind,
    /// Twice the total spin.
    pub twice_total: i8,
    /// Twice the z-projection.
    pub twice_z: i8,
    pub energy: f64,
    pub vector: Vec<f64>,
}

impl DimerLevel {
    pub fn label(&self) -> String {
        format!("|{},{}>", Half(self.twice_total), Half(self.twice_z))
    }
}

/// Eigenpairs of the isolated Heisenberg dimer J_eff·s_a·s_b − h(s_aᶻ + s_bᶻ).
pub fn dimer_levels(kind: DimerKind, j_eff: f64, h: f64) -> Vec<DimerLevel> {
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let (da, db) = kind.dims();
    let ket = |terms: &[(usize, usize, f64)], scale: f64| {
        let mut v = vec![0.0; da * db];
        for &(a, b, c) in terms {
            v[a * db + b] = c * scale;
        }
        v
    };
    let lv = |tt: i8, tz: i8, energy: f64, vector: Vec<f64>| DimerLevel {
        kind,
        twice_total: tt,
        twice_z: tz,
        energy,
        vector,
    };
    let (j, s) = (j_eff, 1.0 / r2);
    match kind {
        DimerKind::HalfHalf => vec![
            lv(0, 0, -0.75 * j, ket(&[(0, 1, 1.0), (1, 0, -1.0)], s)),
            lv(2, 2, 0.25 * j - h, ket(&[(0, 0, 1.0)], 1.0)),
            lv(2, 0, 0.25 * j, ket(&[(0, 1, 1.0), (1, 0, 1.0)], s)),
            lv(2, -2, 0.25 * j + h, ket(&[(1, 1, 1.0)], 1.0)),
        ],
        DimerKind::HalfOne => vec![
            lv(1, 1, -j - 0.5 * h, ket(&[(0, 1, 1.0), (1, 0, -r2)], 1.0 / r3)),
            lv(1, -1, -j + 0.5 * h, ket(&[(1, 1, 1.0), (0, 2, -r2)], 1.0 / r3)),
            lv(3, 3, 0.5 * j - 1.5 * h, ket(&[(0, 0, 1.0)], 1.0)),
            lv(3, 1, 0.5 * j - 0.5 * h, ket(&[(0, 1, r2), (1, 0, 1.0)], 1.0 / r3)),
            lv(3, -1, 0.5 * j + 0.5 * h, ket(&[(1, 1, r2), (0, 2, 1.0)], 1.0 / r3)),
            lv(3, -3, 0.5 * j + 1.5 * h, ket(&[(1, 2, 1.0)], 1.0)),
        ],
        DimerKind::OneOne => vec![
            lv(0, 0, -2.0 * j, ket(&[(0, 2, 1.0), (2, 0, 1.0), (1, 1, -1.0)], 1.0 / r3)),
            lv(2, 2, -j - h, ket(&[(0, 1, 1.0), (1, 0, -1.0)], s)),
            lv(2, 0, -j, ket(&[(0, 2, 1.0), (2, 0, -1.0)], s)),
            lv(2, -2, -j + h, ket(&[(2, 1, 1.0), (1, 2, -1.0)], s)),
            lv(4, 4, j - 2.0 * h, ket(&[(0, 0, 1.0)], 1.0)),
            lv(4, 2, j - h, ket(&[(0, 1, 1.0), (1, 0, 1.0)], s)),
            lv(4, 0, j, ket(&[(0, 2, 1.0), (2, 0, 1.0), (1, 1, 2.0)], 1.0 / 6f64.sqrt())),
            lv(4, -2, j + h, ket(&[(2, 1, 1.0), (1, 2, 1.0)], s)),
            lv(4, -4, j + 2.0 * h, ket(&[(2, 2, 1.0)], 1.0)),
        ],
    }
}

/// Grouping of the four spins into two dimers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DimerPartition {
    /// (μ₁,S₁)(μ₂,S₂).
    MuSByIndex,
    /// (μ₁,μ₂)(S₁,S₂).
    MuMuSS,
    /// (μ₁,S₂)(μ₂,S₁).
    MuSCrossed,
}

impl DimerPartition {
    fn kinds(self) -> (DimerKind, DimerKind) {
        match self {
            DimerPartition::MuSByIndex | DimerPartition::MuSCrossed => (DimerKind::HalfOne, DimerKind::HalfOne),
            DimerPartition::MuMuSS => (DimerKind::HalfHalf, DimerKind::OneOne),
        }
    }

    /// Site order (first dimer, second dimer) in tetramer site indices.
    fn sites(self) -> [usize; 4] {
        match self {
            DimerPartition::MuSByIndex => [0, 1, 2, 3],
            DimerPartition::MuMuSS => [0, 2, 1, 3],
            DimerPartition::MuSCrossed => [0, 3, 2, 1],
        }
    }
}

/// One coefficient ⟨dimer_a ⊗ dimer_b | ψ⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct Overlap {
    pub first: String,
    pub second: String,
    pub coefficient: f64,
}

/// Coefficients of `psi` over the full dimer-product eigenbasis of `partition`.
pub fn dimer_product_overlaps(psi: &[f64], partition: DimerPartition) -> Vec<Overlap> {
    assert_eq!(psi.len(), 36, "tetramer vector must have 36 components");
    let (ka, kb) = partition.kinds();
    let (a_levels, b_levels) = (dimer_levels(ka, 1.0, 0.0), dimer_levels(kb, 1.0, 0.0));
    let order = partition.sites();
    let l = SiteLayout::TETRAMER;
    let d = l.dims();
    let db = d[order[2]] * d[order[3]];
    // Regroup ψ into a (first dimer) × (second dimer) table.
    let mut t = vec![0.0; 36];
    for (i, &amp) in psi.iter().enumerate() {
        let k = l.digits(i);
        let row = k[order[0]] * d[order[1]] + k[order[1]];
        let col = k[order[2]] * d[order[3]] + k[order[3]];
        t[row * db + col] = amp;
    }
    let mut out = Vec::with_capacity(36);
    for a in &a_levels {
        for b in &b_levels {
            let mut c = 0.0;
            for (r, &ar) in a.vector.iter().enumerate() {
                if ar == 0.0 {
                    continue;
                }
                for (s, &bs) in b.vector.iter().enumerate() {
                    c += ar * t[r * db + s] * bs;
                }
            }
            out.push(Overlap { first: a.label(), second: b.label(), coefficient: c });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensolve::eigvalsh;
    use crate::spin_algebra::build_hamiltonian;

    fn params(j1: f64, h: f64) -> ModelParams {
        ModelParams::new(1.0, j1, h).unwrap()
    }

    fn find(label: (i8, u8, i8, i8)) -> Vec<f64> {
        tetramer_eigenvectors()
            .into_iter()
            .find(|s| (s.label.sigma_t_z, s.label.sigma_t, s.label.sigma_1.0, s.label.sigma_2.0) == label)
            .unwrap()
            .vector
    }

    #[test]
    fn level_count_and_examples() {
        let lv = tetramer_levels(&params(0.0, 0.0));
        assert_eq!(lv.len(), 36);
        let ground: Vec<_> = lv.iter().filter(|l| (l.energy + 2.0).abs() < 1e-15).collect();
        assert_eq!(ground.len(), 4);
        let lv = tetramer_levels(&params(1.5, 0.0));
        let min = lv.iter().map(|l| l.energy).fold(f64::INFINITY, f64::min);
        assert!((min + 4.625).abs() < 1e-15);
    }

    #[test]
    fn levels_match_numeric_spectrum() {
        let p = params(0.5, 0.0);
        let mut closed: Vec<f64> = tetramer_levels(&p).iter().map(|l| l.energy).collect();
        closed.sort_by(f64::total_cmp);
        let num = eigvalsh(&build_hamiltonian(&p).unwrap()).unwrap();
        for (a, b) in closed.iter().zip(&num) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvectors_orthonormal() {
        let vs = tetramer_eigenvectors();
        for (i, a) in vs.iter().enumerate() {
            for (j, b) in vs.iter().enumerate() {
                let d: f64 = a.vector.iter().zip(&b.vector).map(|(x, y)| x * y).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-15, "{} {}", a.label, b.label);
            }
        }
    }

    #[test]
    fn top_states() {
        let v = find((3, 3, 3, 3));
        assert_eq!(v[0], 1.0);
        let v = find((2, 3, 3, 3));
        let s6 = 6f64.sqrt();
        assert!((v[phi_index(2, 1)] - 2f64.sqrt() / s6).abs() < 1e-15);
        assert!((v[phi_index(3, 1)] - 1.0 / s6).abs() < 1e-15);
    }

    #[test]
    fn partition_function_forms_agree() {
        let p = params(0.7, 0.3);
        let z = partition_function_closed(&p, 1.3);
        assert!((z - 131.591096630032).abs() < 1e-9);
        assert!((z / partition_function_levels(&p, 1.3) - 1.0).abs() < 1e-12);
        assert!((partition_function_closed(&p, 0.0) - 36.0).abs() < 1e-12);
    }

    #[test]
    fn decoupled_partition_factorises() {
        for (beta, h) in [(0.4, 0.0), (2.0, 0.7), (5.0, 1.9)] {
            let zd: f64 = dimer_levels(DimerKind::HalfOne, 1.0, h).iter().map(|l| (-beta * l.energy).exp()).sum();
            let z = partition_function_closed(&params(0.0, h), beta);
            assert!((z / (zd * zd) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dimer_ground_levels() {
        let e = |k| dimer_levels(k, 1.0, 0.0).iter().map(|l| l.energy).fold(f64::INFINITY, f64::min);
        assert_eq!(e(DimerKind::HalfOne), -1.0);
        assert_eq!(e(DimerKind::HalfHalf), -0.75);
        assert_eq!(e(DimerKind::OneOne), -2.0);
        for k in [DimerKind::HalfHalf, DimerKind::HalfOne, DimerKind::OneOne] {
            let lv = dimer_levels(k, 1.0, 0.0);
            let (da, db) = k.dims();
            assert_eq!(lv.len(), da * db);
            for a in &lv {
                for b in &lv {
                    let d: f64 = a.vector.iter().zip(&b.vector).map(|(x, y)| x * y).sum();
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((d - want).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn overlaps_of_weak_limit_ground_states() {
        let nz = |psi: &[f64], part| -> Vec<(String, String, f64)> {
            dimer_product_overlaps(psi, part)
                .into_iter()
                .filter(|o| o.coefficient.abs() > 1e-12)
                .map(|o| (o.first, o.second, o.coefficient))
                .collect()
        };
        let v = nz(&find((1, 1, 1, 1)), DimerPartition::MuSByIndex);
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].0.as_str(), v[0].1.as_str()), ("|1/2,1/2>", "|1/2,1/2>"));
        assert!((v[0].2.abs() - 1.0).abs() < 1e-12);

        let v = nz(&find((0, 0, 1, 1)), DimerPartition::MuSByIndex);
        assert_eq!(v.len(), 2);
        for o in &v {
            assert!((o.2.abs() - 0.5f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn overlaps_are_normalised() {
        for s in tetramer_eigenvectors() {
            for part in [DimerPartition::MuSByIndex, DimerPartition::MuMuSS, DimerPartition::MuSCrossed] {
                let n: f64 =
                    dimer_product_overlaps(&s.vector, part).iter().map(|o| o.coefficient * o.coefficient).sum();
                assert!((n - 1.0).abs() < 1e-13);
            }
        }
    }
}
