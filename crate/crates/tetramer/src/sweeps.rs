//! Parameter-space drivers: ground-state phase diagram, field sweeps of the
//! negativities and threshold temperatures.
//!
//! Every driver evaluates independent points through [`par::map`], so output
//! order depends only on the inputs.

use std::collections::BTreeSet;
use std::fmt;

use crate::analytic_spectrum::{tetramer_levels, Half, LevelLabel};
use crate::eigensolve::DEGENERACY_TOL;
use crate::error::{Error, Result};
use crate::negativity::{negativity, PairLabel};
use crate::par::{self, Exec};
use crate::spin_algebra::ModelParams;
use crate::thermal::{partial_trace, ThermalSpectrum};

/// Inclusive linear grid of `n` points; `min == max` collapses to one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Range {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        let r = Range { min, max, n };
        r.validate()?;
        Ok(r)
    }

    pub fn single(x: f64) -> Self {
        Range { min: x, max: x, n: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidParams("range bounds must be finite".into()));
        }
        if self.min > self.max {
            return Err(Error::InvalidParams(format!("range {}:{} is reversed", self.min, self.max)));
        }
        if self.min < self.max && self.n < 2 {
            return Err(Error::InvalidParams("a non-empty range needs at least 2 points".into()));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        if self.min == self.max || self.n < 2 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.n - 1) as f64;
        (0..self.n).map(|i| if i + 1 == self.n { self.max } else { self.min + step * i as f64 }).collect()
    }

    /// Spacing between neighbouring points, zero for a single point.
    pub fn step(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.max - self.min) / (self.n - 1) as f64
        }
    }
}

/// Ground-state label with σ_T dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseLabel {
    pub sigma_t_z: i8,
    pub sigma_1: Half,
    pub sigma_2: Half,
}

impl From<LevelLabel> for PhaseLabel {
    fn from(l: LevelLabel) -> Self {
        PhaseLabel { sigma_t_z: l.sigma_t_z, sigma_1: l.sigma_1, sigma_2: l.sigma_2 }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{},{}>", self.sigma_t_z, self.sigma_1, self.sigma_2)
    }
}

/// A ground-state phase. The two orderings of (σ₁, σ₂) = (3/2, 1/2) are
/// degenerate by the dimer-exchange symmetry and form one phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseKey {
    pub sigma_t_z: i8,
    /// (larger, smaller) of σ₁, σ₂.
    pub spins: (Half, Half),
}

impl From<PhaseLabel> for PhaseKey {
    fn from(l: PhaseLabel) -> Self {
        PhaseKey { sigma_t_z: l.sigma_t_z, spins: (l.sigma_1.max(l.sigma_2), l.sigma_1.min(l.sigma_2)) }
    }
}

impl fmt::Display for PhaseKey {
    /// Mixed phases are written with σ₁ ≥ σ₂.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{},{}>", self.sigma_t_z, self.spins.0, self.spins.1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoint {
    pub j1_over_j: f64,
    pub h_over_j: f64,
    /// Labels of every level in the ground manifold.
    pub ground_labels: BTreeSet<PhaseLabel>,
    /// T = 0 negativities in [`PairLabel::ALL`] order.
    pub negativities: [f64; 4],
}

impl PhasePoint {
    pub fn phase_keys(&self) -> BTreeSet<PhaseKey> {
        self.ground_labels.iter().map(|&l| l.into()).collect()
    }

    /// True when the ground manifold mixes two or more phases.
    pub fn is_boundary(&self) -> bool {
        self.phase_keys().len() > 1
    }

    /// The phase, or `None` on a boundary.
    pub fn phase(&self) -> Option<PhaseKey> {
        let keys = self.phase_keys();
        if keys.len() == 1 {
            keys.into_iter().next()
        } else {
            None
        }
    }
}

/// Ground manifold labels from the closed-form level list.
pub fn ground_labels(p: &ModelParams) -> BTreeSet<PhaseLabel> {
    let levels = tetramer_levels(p);
    let e0 = levels.iter().map(|l| l.energy).fold(f64::INFINITY, f64::min);
    let tol = DEGENERACY_TOL * e0.abs().max(1.0);
    levels.iter().filter(|l| l.energy - e0 <= tol).map(|l| l.label.into()).collect()
}

/// T = 0 negativities of all four pairs, in [`PairLabel::ALL`] order.
pub fn ground_negativities(p: &ModelParams) -> Result<[f64; 4]> {
    let rho = ThermalSpectrum::new(p)?.ground_manifold();
    Ok(PairLabel::ALL.map(|pair| negativity(&partial_trace(&rho, pair)).value))
}

fn reduced(j1: f64, h: f64) -> Result<ModelParams> {
    ModelParams::reduced(j1, h)
}

/// Phase diagram over `j1 × h`, rows ordered by (J₁/J, h/J).
pub fn phase_diagram(j1: &Range, h: &Range, exec: Exec) -> Result<Vec<PhasePoint>> {
    j1.validate()?;
    h.validate()?;
    let grid: Vec<(f64, f64)> =
        j1.points().into_iter().flat_map(|a| h.points().into_iter().map(move |b| (a, b))).collect();
    par::map(exec, &grid, |&(a, b)| {
        let p = reduced(a, b)?;
        Ok(PhasePoint {
            j1_over_j: a,
            h_over_j: b,
            ground_labels: ground_labels(&p),
            negativities: ground_negativities(&p)?,
        })
    })
    .into_iter()
    .collect()
}

/// Temperature k_BT/J of a sweep, or the zero-temperature ground manifold.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum TempPoint {
    Zero,
    Finite(f64),
}

impl TempPoint {
    pub fn beta(self) -> Option<f64> {
        match self {
            TempPoint::Zero => None,
            TempPoint::Finite(t) => Some(1.0 / t),
        }
    }

    /// k_BT/J, zero for the ground manifold.
    pub fn value(self) -> f64 {
        match self {
            TempPoint::Zero => 0.0,
            TempPoint::Finite(t) => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub pair: PairLabel,
    pub temp: TempPoint,
    pub h_over_j: f64,
    pub negativity: f64,
}

fn check_temp(t: TempPoint) -> Result<()> {
    match t {
        TempPoint::Zero => Ok(()),
        TempPoint::Finite(x) if x.is_finite() && x > 0.0 => Ok(()),
        TempPoint::Finite(x) => Err(Error::InvalidParams(format!("temperature {x} must be positive"))),
    }
}

/// Negativity against field at fixed J₁/J, rows ordered by (pair, T, h).
///
/// `temps` is used in the given order; the ground manifold is used at
/// [`TempPoint::Zero`], including boundary mixtures.
pub fn field_sweep(j1: f64, temps: &[TempPoint], h: &Range, pairs: &[PairLabel], exec: Exec) -> Result<Vec<SweepRow>> {
    h.validate()?;
    temps.iter().try_for_each(|&t| check_temp(t))?;
    let hs = h.points();
    // values[h][t][pair]
    let values: Vec<Vec<Vec<f64>>> = par::map(exec, &hs, |&hv| -> Result<_> {
        let spec = ThermalSpectrum::new(&reduced(j1, hv)?)?;
        temps
            .iter()
            .map(|t| {
                let rho = match t.beta() {
                    None => spec.ground_manifold(),
                    Some(b) => spec.gibbs(b)?,
                };
                Ok(pairs.iter().map(|&pr| negativity(&partial_trace(&rho, pr)).value).collect())
            })
            .collect()
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(pairs.len() * temps.len() * hs.len());
    for (pi, &pair) in pairs.iter().enumerate() {
        for (ti, &temp) in temps.iter().enumerate() {
            for (hi, &hv) in hs.iter().enumerate() {
                rows.push(SweepRow { pair, temp, h_over_j: hv, negativity: values[hi][ti][pi] });
            }
        }
    }
    Ok(rows)
}

/// Coarse scan start and step in k_BT/J.
pub const SCAN_START: f64 = 0.01;
pub const SCAN_STEP: f64 = 0.05;
pub const SCAN_CEILING: f64 = 3.0;
pub const SCAN_CEILING_MAX: f64 = 12.0;
/// Bisection stops once the bracket is this narrow.
pub const BISECTION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPoint {
    pub j1_over_j: f64,
    pub h_over_j: f64,
    pub pair: PairLabel,
    /// `None` when the pair is never entangled on the scan.
    pub t_c: Option<f64>,
    /// Still entangled at the largest scan ceiling; `t_c` is then that ceiling.
    pub above_ceiling: bool,
}

/// Thermal negativity of one pair as a function of k_BT/J.
struct Thermometer {
    spec: ThermalSpectrum,
    pair: PairLabel,
}

impl Thermometer {
    fn at(&self, t: f64) -> Result<f64> {
        let rho = self.spec.gibbs(1.0 / t)?;
        Ok(negativity(&partial_trace(&rho, self.pair)).value)
    }
}

/// Temperature above which the pair's negativity vanishes.
///
/// The scan runs over k_BT/J = 0.01 + 0.05k; the bracket is the highest
/// positive-to-zero transition, refined by bisection. The ceiling doubles
/// from 3 up to 12 while the negativity is still positive there.
pub fn threshold_temperature(j1: f64, h: f64, pair: PairLabel) -> Result<ThresholdPoint> {
    let th = Thermometer { spec: ThermalSpectrum::new(&reduced(j1, h)?)?, pair };
    let mut point = ThresholdPoint { j1_over_j: j1, h_over_j: h, pair, t_c: None, above_ceiling: false };

    let mut ceiling = SCAN_CEILING;
    let mut scan: Vec<(f64, f64)> = Vec::new();
    let mut k = 0usize;
    loop {
        loop {
            let t = SCAN_START + SCAN_STEP * k as f64;
            if t > ceiling {
                break;
            }
            scan.push((t, th.at(t)?));
            k += 1;
        }
        if scan.last().is_none_or(|&(_, n)| n <= 0.0) || ceiling >= SCAN_CEILING_MAX {
            break;
        }
        ceiling *= 2.0;
    }

    let Some(top) = scan.iter().rposition(|&(_, n)| n > 0.0) else {
        return Ok(point);
    };
    if top + 1 == scan.len() {
        point.t_c = Some(scan[top].0);
        point.above_ceiling = true;
        return Ok(point);
    }
    let (mut lo, mut hi) = (scan[top].0, scan[top + 1].0);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if th.at(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    point.t_c = Some(0.5 * (lo + hi));
    Ok(point)
}

/// Threshold temperatures along a field range, ordered by h.
pub fn threshold_curve(j1: f64, h: &Range, pair: PairLabel, exec: Exec) -> Result<Vec<ThresholdPoint>> {
    h.validate()?;
    par::map(exec, &h.points(), |&hv| threshold_temperature(j1, hv, pair)).into_iter().collect()
}

/// Thermal negativity of one pair at k_BT/J = `t`.
pub fn thermal_negativity(j1: f64, h: f64, t: f64, pair: PairLabel) -> Result<f64> {
    Thermometer { spec: ThermalSpectrum::new(&reduced(j1, h)?)?, pair }.at(t)
}
