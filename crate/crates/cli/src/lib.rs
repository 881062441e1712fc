//! Argument types and CSV emitters behind the `tetramer` binary.
//!
//! Every command computes its whole table first and renders it to a string;
//! the binary writes that string once.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use tetramer::analytic_spectrum::tetramer_levels;
use tetramer::sweeps::{field_sweep, phase_diagram, threshold_curve, Range, TempPoint};
use tetramer::thermal::ThermalSpectrum;
use tetramer::verify::{self, VerifyConfig};
use tetramer::{all_negativities, Exec, ModelParams, PairLabel, Temperature};

/// Supported inverse temperatures at the command line.
pub const BETA_MIN: f64 = 1e-4;
pub const BETA_MAX: f64 = 1e4;

#[derive(Debug, Parser)]
#[command(name = "tetramer", version, about = "Negativities of the mixed spin-(1/2,1) Heisenberg tetramer")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All 36 levels with quantum numbers, numeric and closed form.
    Spectrum(PointArgs),
    /// The four pair negativities at one point.
    Negativity(NegativityArgs),
    /// Ground-state labels and T = 0 negativities over a J1 × h grid.
    PhaseDiagram(GridArgs),
    /// Negativity against field at fixed J1 for one or more temperatures.
    FieldSweep(SweepArgs),
    /// Threshold temperature of each pair along a field range.
    Threshold(ThresholdArgs),
    /// Cross-check closed forms against exact diagonalization.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<std::path::PathBuf>,
    /// Evaluate points on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
}

impl Common {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    /// J1/J.
    #[arg(long, default_value = "0")]
    pub j1: f64,
    /// h/J.
    #[arg(long, default_value = "0")]
    pub h: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct NegativityArgs {
    #[arg(long, default_value = "0")]
    pub j1: f64,
    #[arg(long, default_value = "0")]
    pub h: f64,
    /// k_BT/J, or `zero` for the ground manifold.
    #[arg(long, default_value = "zero")]
    pub temp: TempArg,
    #[arg(long, default_value = "all")]
    pub pair: PairArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// J1/J as a value, `min:max` or `min:max:n`.
    #[arg(long, default_value = "0:2")]
    pub j1: AxisArg,
    /// h/J as a value, `min:max` or `min:max:n`.
    #[arg(long, default_value = "0:4")]
    pub h: AxisArg,
    /// Points per axis when a range omits its count.
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u32).range(2..))]
    pub grid: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "0.5")]
    pub j1: f64,
    #[arg(long, default_value = "0:4")]
    pub h: AxisArg,
    /// Repeatable: k_BT/J, `zero`, or `min:max:n`.
    #[arg(long, default_value = "zero")]
    pub temp: Vec<TempArg>,
    #[arg(long, default_value = "all")]
    pub pair: PairArg,
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u32).range(2..))]
    pub grid: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    #[arg(long, default_value = "0.5")]
    pub j1: f64,
    #[arg(long, default_value = "0:2")]
    pub h: AxisArg,
    #[arg(long, default_value = "all")]
    pub pair: PairArg,
    #[arg(long, default_value_t = 41, value_parser = clap::value_parser!(u32).range(2..))]
    pub grid: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    pub seed: u64,
    /// Random thermal samples for the dual-path checks.
    #[arg(long, default_value_t = VerifyConfig::default().samples)]
    pub samples: usize,
    /// Fault injection: relative offset applied to the closed-form Z.
    #[arg(long, hide = true, default_value_t = 0.0)]
    pub perturb_z: f64,
    #[command(flatten)]
    pub common: Common,
}

/// A single value or an inclusive range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisArg {
    Value(f64),
    Span { min: f64, max: f64, n: Option<usize> },
}

impl AxisArg {
    pub fn range(self, default_n: usize) -> Range {
        match self {
            AxisArg::Value(x) => Range::single(x),
            AxisArg::Span { min, max, n } => Range { min, max, n: n.unwrap_or(default_n) },
        }
    }
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

fn parse_span(s: &str) -> Result<Option<(f64, f64, Option<usize>)>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let (min, max, n) = match parts.as_slice() {
        [_] => return Ok(None),
        [a, b] => (parse_f64(a)?, parse_f64(b)?, None),
        [a, b, c] => {
            let n: usize = c.trim().parse().map_err(|_| format!("'{c}' is not a point count"))?;
            (parse_f64(a)?, parse_f64(b)?, Some(n))
        }
        _ => return Err(format!("'{s}' is not of the form min:max[:n]")),
    };
    if min > max {
        return Err(format!("range {min}:{max} is reversed"));
    }
    if min < max && n.is_some_and(|n| n < 2) {
        return Err("a non-empty range needs at least 2 points".into());
    }
    Ok(Some((min, max, n)))
}

impl FromStr for AxisArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match parse_span(s)? {
            None => AxisArg::Value(parse_f64(s)?),
            Some((min, max, n)) => AxisArg::Span { min, max, n },
        })
    }
}

/// A temperature, the ground-manifold marker, or a temperature range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TempArg {
    Zero,
    Value(f64),
    Span { min: f64, max: f64, n: usize },
}

fn check_temperature(t: f64) -> Result<f64, String> {
    let beta = 1.0 / t;
    if t > 0.0 && (BETA_MIN..=BETA_MAX).contains(&beta) {
        Ok(t)
    } else {
        Err(format!("k_BT/J = {t} gives beta = {beta:e}, outside the supported range [{BETA_MIN:e}, {BETA_MAX:e}]"))
    }
}

impl FromStr for TempArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "zero" || s == "0" {
            return Ok(TempArg::Zero);
        }
        match parse_span(s)? {
            None => Ok(TempArg::Value(check_temperature(parse_f64(s)?)?)),
            Some((min, max, n)) => {
                let n = n.ok_or("a temperature range needs an explicit count min:max:n")?;
                check_temperature(min)?;
                check_temperature(max)?;
                Ok(TempArg::Span { min, max, n })
            }
        }
    }
}

impl TempArg {
    fn points(self) -> Vec<TempPoint> {
        match self {
            TempArg::Zero => vec![TempPoint::Zero],
            TempArg::Value(t) => vec![TempPoint::Finite(t)],
            TempArg::Span { min, max, n } => {
                Range { min, max, n }.points().into_iter().map(TempPoint::Finite).collect()
            }
        }
    }
}

/// One pair or all four.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairArg {
    All,
    One(PairLabel),
}

impl PairArg {
    pub fn pairs(self) -> Vec<PairLabel> {
        match self {
            PairArg::All => PairLabel::ALL.to_vec(),
            PairArg::One(p) => vec![p],
        }
    }
}

impl FromStr for PairArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            Ok(PairArg::All)
        } else {
            s.parse().map(PairArg::One)
        }
    }
}

impl fmt::Display for PairArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairArg::All => f.write_str("all"),
            PairArg::One(p) => f.write_str(p.flag()),
        }
    }
}

/// Why a command did not produce a table.
#[derive(Debug)]
pub enum Failure {
    /// Bad input; exit code 2.
    Usage(String),
    /// Anything else the library reports.
    Runtime(String),
}

impl From<tetramer::Error> for Failure {
    fn from(e: tetramer::Error) -> Self {
        match e {
            tetramer::Error::InvalidParams(_) | tetramer::Error::BetaOutOfRange(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

/// Rendered output plus the verdict of `verify`.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn table(text: String) -> Self {
        Output { text, passed: true }
    }
}

/// Twelve significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.11e}")
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn axis_desc(r: &Range) -> String {
    if r.points().len() == 1 {
        format!("{}", r.min)
    } else {
        format!("{}:{}:{}", r.min, r.max, r.n)
    }
}

fn range(axis: AxisArg, default_n: u32) -> Result<Range, Failure> {
    let r = axis.range(default_n as usize);
    r.validate()?;
    Ok(r)
}

pub fn run(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Spectrum(a) => spectrum(a).map(Output::table),
        Command::Negativity(a) => negativity(a).map(Output::table),
        Command::PhaseDiagram(a) => phase(a).map(Output::table),
        Command::FieldSweep(a) => sweep(a).map(Output::table),
        Command::Threshold(a) => threshold(a).map(Output::table),
        Command::Verify(a) => verify(a),
    }
}

pub fn common(command: &Command) -> &Common {
    match command {
        Command::Spectrum(a) => &a.common,
        Command::Negativity(a) => &a.common,
        Command::PhaseDiagram(a) => &a.common,
        Command::FieldSweep(a) => &a.common,
        Command::Threshold(a) => &a.common,
        Command::Verify(a) => &a.common,
    }
}

fn spectrum(a: &PointArgs) -> Result<String, Failure> {
    let p = ModelParams::reduced(a.j1, a.h)?;
    let numeric = ThermalSpectrum::new(&p)?.energies();
    let mut levels = tetramer_levels(&p);
    // Stable sort keeps the multiplet order inside degenerate groups.
    levels.sort_by(|x, y| x.energy.total_cmp(&y.energy));
    let mut s = format!("# params: command=spectrum j1_over_j={} h_over_j={}\n", a.j1, a.h);
    s.push_str("sigma_T_z,sigma_T,sigma_1,sigma_2,energy_numeric,energy_closed\n");
    for (lv, e) in levels.iter().zip(&numeric) {
        let l = lv.label;
        writeln!(s, "{},{},{},{},{},{}", l.sigma_t_z, l.sigma_t, l.sigma_1, l.sigma_2, num(*e), num(lv.energy))
            .unwrap();
    }
    Ok(s)
}

fn negativity(a: &NegativityArgs) -> Result<String, Failure> {
    let p = ModelParams::reduced(a.j1, a.h)?;
    let (temp, desc) = match a.temp {
        TempArg::Zero => (Temperature::Ground, "zero".to_string()),
        TempArg::Value(t) => (Temperature::Beta(1.0 / t), t.to_string()),
        TempArg::Span { .. } => return Err(Failure::Usage("negativity takes a single temperature".into())),
    };
    let all = all_negativities(&p, temp)?;
    let mut s =
        format!("# params: command=negativity j1_over_j={} h_over_j={} temp={desc} pair={}\n", a.j1, a.h, a.pair);
    s.push_str("pair,value_numeric,value_closed,abs_diff\n");
    for pair in a.pair.pairs() {
        let v = &all[&pair];
        let (closed, diff) = match &v.closed {
            Some(c) => (num(c.value), num((c.value - v.numeric.value).abs())),
            None => (String::new(), String::new()),
        };
        writeln!(s, "{},{},{closed},{diff}", pair.name(), num(v.numeric.value)).unwrap();
    }
    Ok(s)
}

fn phase(a: &GridArgs) -> Result<String, Failure> {
    let j1 = range(a.j1, a.grid)?;
    let h = range(a.h, a.grid)?;
    let grid = phase_diagram(&j1, &h, a.common.exec())?;
    let mut s = format!("# params: command=phase-diagram j1_over_j={} h_over_j={}\n", axis_desc(&j1), axis_desc(&h));
    s.push_str("j1_over_j,h_over_j,phase,ground_labels,N_S1_S2,N_mu1_mu2,N_mu1_S1,N_mu1_S2\n");
    for p in &grid {
        let labels: Vec<String> = p.ground_labels.iter().map(|l| l.to_string()).collect();
        let phase = p.phase().map(|k| quoted(&k.to_string())).unwrap_or_default();
        let n: Vec<String> = p.negativities.iter().map(|&v| num(v)).collect();
        writeln!(s, "{},{},{phase},{},{}", num(p.j1_over_j), num(p.h_over_j), quoted(&labels.join(";")), n.join(","))
            .unwrap();
    }
    Ok(s)
}

fn sweep(a: &SweepArgs) -> Result<String, Failure> {
    let h = range(a.h, a.grid)?;
    let temps: Vec<TempPoint> = a.temp.iter().flat_map(|t| t.points()).collect();
    let rows = field_sweep(a.j1, &temps, &h, &a.pair.pairs(), a.common.exec())?;
    let tdesc: Vec<String> = a
        .temp
        .iter()
        .map(|t| match t {
            TempArg::Zero => "zero".to_string(),
            TempArg::Value(v) => v.to_string(),
            TempArg::Span { min, max, n } => format!("{min}:{max}:{n}"),
        })
        .collect();
    let mut s = format!(
        "# params: command=field-sweep j1_over_j={} h_over_j={} temp={} pair={}\n",
        a.j1,
        axis_desc(&h),
        tdesc.join(";"),
        a.pair
    );
    s.push_str("pair,temp,h_over_j,negativity\n");
    for r in &rows {
        writeln!(s, "{},{},{},{}", r.pair.name(), num(r.temp.value()), num(r.h_over_j), num(r.negativity)).unwrap();
    }
    Ok(s)
}

fn threshold(a: &ThresholdArgs) -> Result<String, Failure> {
    let h = range(a.h, a.grid)?;
    let mut s = format!("# params: command=threshold j1_over_j={} h_over_j={} pair={}\n", a.j1, axis_desc(&h), a.pair);
    s.push_str("pair,j1_over_j,h_over_j,t_c,above_ceiling\n");
    for pair in a.pair.pairs() {
        for t in threshold_curve(a.j1, &h, pair, a.common.exec())? {
            let tc = t.t_c.map(num).unwrap_or_default();
            writeln!(s, "{},{},{},{tc},{}", pair.name(), num(t.j1_over_j), num(t.h_over_j), t.above_ceiling).unwrap();
        }
    }
    Ok(s)
}

fn verify(a: &VerifyArgs) -> Result<Output, Failure> {
    let cfg = VerifyConfig {
        seed: a.seed,
        samples: a.samples,
        z_perturbation: a.perturb_z,
        exec: a.common.exec(),
        ..VerifyConfig::default()
    };
    let report = verify::run(&cfg)?;
    let mut s = format!(
        "# params: command=verify seed={} samples={} spectrum_points={} vector_points={}\n",
        cfg.seed, cfg.samples, cfg.spectrum_points, cfg.vector_points
    );
    s.push_str("check,tolerance,residual,status\n");
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        writeln!(s, "{},{},{},{status}", quoted(c.name), num(c.tolerance), num(c.residual)).unwrap();
    }
    Ok(Output { text: s, passed: report.all_passed() })
}
