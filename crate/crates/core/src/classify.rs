//! Symbolic scalability verdicts for growth policies, and a numerical
//! cross-check that drives the resource solver over a range of `N`.
//!
//! Case labels follow the usual numbering of the three model analyses:
//! independent degrees of freedom (`dof-case-1..3`), bosons (`bose-1`,
//! `bose-2`, `bose-3(i..iii)`), fermions (`fermi-1`, `fermi-2(i..ii)`) and
//! distinguishable particles (`dist-1`, `dist-2(i..ii)`).

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::dimension::{binary_entropy, mode_entropy};
use crate::growth::{dominates, GrowthClass};
use crate::solver::{self, Controlled, IntFunction, Policy, SweepModel};
use crate::{Error, Result};

/// Every case label the classifier can emit for a tabulated case.
pub const TABULATED_CASES: [&str; 14] = [
    "dof-case-1",
    "dof-case-2",
    "dof-case-3",
    "bose-1",
    "bose-2",
    "bose-3(i)",
    "bose-3(ii)",
    "bose-3(iii)",
    "fermi-1",
    "fermi-2(i)",
    "fermi-2(ii)",
    "dist-1",
    "dist-2(i)",
    "dist-2(ii)",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    StrictlyScalable,
    Scalable,
    NonScalable,
    ModelBreakdown,
}

impl Verdict {
    /// Position on `NonScalable < Scalable < StrictlyScalable`;
    /// `ModelBreakdown` is off the scale.
    pub fn rank(&self) -> Option<u8> {
        match self {
            Verdict::NonScalable => Some(0),
            Verdict::Scalable => Some(1),
            Verdict::StrictlyScalable => Some(2),
            Verdict::ModelBreakdown => None,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::StrictlyScalable => "strictly scalable",
            Verdict::Scalable => "scalable",
            Verdict::NonScalable => "not scalable",
            Verdict::ModelBreakdown => "model breakdown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalabilityVerdict {
    pub case_label: String,
    pub verdict: Verdict,
    /// Growth of the resource that is not prescribed. `None` only when the
    /// model itself stops applying.
    pub complement_growth: Option<GrowthClass>,
    pub narrative: String,
}

impl ScalabilityVerdict {
    fn new(label: &str, verdict: Verdict, complement: Option<GrowthClass>, narrative: impl Into<String>) -> Self {
        ScalabilityVerdict {
            case_label: label.to_owned(),
            verdict,
            complement_growth: complement,
            narrative: narrative.into(),
        }
    }
}

/// Growth too slow to be quasilinear: constant, logarithmic or a sublinear power.
fn below_quasilinear(g: &GrowthClass) -> bool {
    dominates(g, &GrowthClass::Quasilinear(u32::MAX)) == Ordering::Less
}

/// Verdict for `T(N)` independent degrees of freedom, with the action per
/// degree of freedom `A/h ∼ 2^(N/T)` as the complementary resource.
pub fn classify_dof(t_growth: &GrowthClass) -> Result<ScalabilityVerdict> {
    t_growth.validate()?;
    let v = match *t_growth {
        GrowthClass::Linear(c) => {
            let mut narrative = format!("T = {c}·N: A/h ∼ 2^(1/{c}) per degree of freedom, independent of N");
            if c > 1.0 {
                narrative.push_str(" (fewer than 2 levels each; a field count is the sounder description)");
            }
            ScalabilityVerdict::new("dof-case-3", Verdict::StrictlyScalable, Some(GrowthClass::Constant), narrative)
        }
        GrowthClass::Quasilinear(p) => ScalabilityVerdict::new(
            "dof-case-1",
            Verdict::Scalable,
            Some(GrowthClass::power(p as f64)?),
            format!("T ∼ N/log P(N) with deg P = {p}: A/h ∼ 2^(N/T) ∼ N^{p}"),
        ),
        g if below_quasilinear(&g) => ScalabilityVerdict::new(
            "dof-case-1",
            Verdict::NonScalable,
            Some(GrowthClass::Exponential(2.0)),
            format!("T = {g} grows slower than quasilinearly: A/h ∼ 2^(N/T) is exponential in N"),
        ),
        g => ScalabilityVerdict::new(
            "dof-case-2",
            Verdict::ModelBreakdown,
            Some(GrowthClass::Constant),
            format!("T = {g} outgrows N: A/h → 1, so count field excitations (Fock model) instead"),
        ),
    };
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FockKind {
    Bose,
    Fermi,
    /// `internal` is the number `D` of internal states per particle.
    Distinguishable { internal: u128 },
}

impl FockKind {
    fn prefix(&self) -> &'static str {
        match self {
            FockKind::Bose => "bose",
            FockKind::Fermi => "fermi",
            FockKind::Distinguishable { .. } => "dist",
        }
    }

    fn log2_internal(&self) -> f64 {
        match *self {
            FockKind::Distinguishable { internal } => (internal as f64).log2(),
            _ => 0.0,
        }
    }
}

/// Which count a Fock policy prescribes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DofParameter {
    Particles,
    Modes,
}

/// Root of an increasing function on `[lo, hi]`.
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Bose, both counts linear: `m·S(c/m) = 1` gives the other count as `m·N`.
/// The same equation serves either side because the count is symmetric.
fn bose_linear_partner(c: f64) -> f64 {
    let bits = |m: f64| m * mode_entropy(c / m).unwrap_or(f64::INFINITY) - 1.0;
    let mut hi = 1.0;
    while bits(hi) < 0.0 {
        hi *= 2.0;
    }
    bisect(0.0, hi, |m| if m == 0.0 { -1.0 } else { bits(m) })
}

/// Bits per external state at filling `μ`: `H(μ) + μ log2 D`.
fn filling_bits(mu: f64, log2_d: f64) -> f64 {
    binary_entropy(mu).unwrap_or(0.0) + mu * log2_d
}

/// Fermi or distinguishable, both counts linear.
fn sparse_linear_partner(kind: FockKind, param: DofParameter, c: f64) -> Result<f64> {
    let log2_d = kind.log2_internal();
    match param {
        DofParameter::Modes => {
            // Smallest filling μ ≤ D/(D+1) with c·(H(μ) + μ log2 D) = 1.
            let capacity = c * (log2_d.exp2() + 1.0).log2();
            if capacity < 1.0 {
                return Err(Error::InvalidRegime(format!(
                    "{} modes growing as {c}·N carry at most {capacity} bits per qubit; need ≥ 1",
                    kind.prefix()
                )));
            }
            let peak = log2_d.exp2() / (log2_d.exp2() + 1.0);
            let mu = bisect(0.0, peak, |mu| c * filling_bits(mu, log2_d) - 1.0);
            Ok(c * mu)
        }
        DofParameter::Particles => {
            // Largest μ ≤ 1 with H(μ)/μ + log2 D ≥ 1/c; K = L/μ.
            if log2_d >= 1.0 / c {
                return Ok(c);
            }
            let mu = bisect(0.0, 1.0, |mu| {
                if mu == 0.0 {
                    -1.0
                } else {
                    1.0 / c - (binary_entropy(mu).unwrap_or(0.0) / mu + log2_d)
                }
            });
            Ok(c / mu)
        }
    }
}

/// Verdict for a many-body system whose particle or mode count follows
/// `growth`; the complement is the other count.
pub fn classify_fock(kind: FockKind, param: DofParameter, growth: &GrowthClass) -> Result<ScalabilityVerdict> {
    growth.validate()?;
    if let FockKind::Distinguishable { internal: 0 } = kind {
        return Err(Error::InvalidSpec("distinguishable systems need D ≥ 1".into()));
    }
    let p = kind.prefix();
    let (own, other) = match (kind, param) {
        (FockKind::Distinguishable { .. }, DofParameter::Modes) => ("K", "L"),
        (FockKind::Distinguishable { .. }, DofParameter::Particles) => ("L", "K"),
        (_, DofParameter::Modes) => ("M", "L"),
        (_, DofParameter::Particles) => ("L", "M"),
    };
    let sparse = kind != FockKind::Bose;

    // With few modes a fermi or distinguishable system cannot hold 2^N states
    // at all: the count is at most (1+D)^K.
    let sublinear = growth.is_at_most_linear() && !matches!(growth, GrowthClass::Linear(_));
    if sparse && param == DofParameter::Modes && sublinear {
        return Err(Error::InvalidRegime(format!(
            "{p}: {own} = {growth} grows slower than linearly, so {other} ≤ {own} cannot reach 2^N states"
        )));
    }

    let label = |case: &str| format!("{p}-{case}");
    let (const_case, sparse_case, linear_case) = match (kind, param) {
        (FockKind::Bose, DofParameter::Particles) => ("1", "3(i)", "3(iii)"),
        (FockKind::Bose, DofParameter::Modes) => ("2", "3(ii)", "3(iii)"),
        _ => ("1", "2(i)", "2(ii)"),
    };

    let v = match *growth {
        GrowthClass::Constant => ScalabilityVerdict::new(
            &label(const_case),
            Verdict::NonScalable,
            Some(GrowthClass::Exponential(2.0)),
            format!("{own} fixed: 2^N ∼ {other}^{own}/{own}!, so {other} grows exponentially"),
        ),
        GrowthClass::Quasilinear(d) => ScalabilityVerdict::new(
            &label(sparse_case),
            Verdict::Scalable,
            Some(GrowthClass::SuperlinearPoly(d as f64 + 1.0)),
            format!("{own} ∼ N/log P(N) with deg P = {d}: {other} ∼ {own}·2^(N/{own}) ∼ N·P(N)/log P(N)"),
        ),
        GrowthClass::Linear(c) => {
            let partner = match kind {
                FockKind::Bose => bose_linear_partner(c),
                _ => sparse_linear_partner(kind, param, c)?,
            };
            let relation = match kind {
                FockKind::Bose => "2^N ∼ 2^(M·S(L/M))",
                FockKind::Fermi => "2^N ∼ 2^(M·H(L/M))",
                FockKind::Distinguishable { .. } => "2^N ∼ 2^(K·[H(L/K) + (L/K) log2 D])",
            };
            ScalabilityVerdict::new(
                &label(linear_case),
                Verdict::StrictlyScalable,
                Some(GrowthClass::Linear(partner)),
                format!("{own} = {c}·N: {relation} gives {other} ≈ {partner:.4}·N"),
            )
        }
        g if below_quasilinear(&g) => ScalabilityVerdict::new(
            &label(sparse_case),
            Verdict::NonScalable,
            Some(GrowthClass::Exponential(2.0)),
            format!("{own} = {g} grows slower than quasilinearly: {other} ∼ {own}·2^(N/{own}) is superpolynomial"),
        ),
        g => ScalabilityVerdict::new(
            &format!("{p}-untabulated"),
            Verdict::ModelBreakdown,
            None,
            format!("{own} = {g} outgrows N; no tabulated case covers it"),
        ),
    };
    Ok(v)
}

/// What a fitted sequence looks like.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum MeasuredGrowth {
    Constant,
    /// `ln y` linear in `ln N`; `degree` is the fitted slope.
    Polynomial { degree: f64 },
    /// `ln y` linear in `N`; `base` is `e^slope`.
    Exponential { base: f64 },
    Undetermined,
}

/// Minimum coefficient of determination accepted by [`fit_growth`].
pub const MIN_R_SQUARED: f64 = 0.99;
/// Minimum number of points accepted by [`fit_growth`].
pub const MIN_POINTS: usize = 4;

/// Least-squares slope and `R²` of `y` on `x`.
fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, r2)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthFit {
    pub measured: MeasuredGrowth,
    pub r2_exponential: f64,
    pub r2_polynomial: f64,
}

/// Exponential versus polynomial discrimination: `ln y` against `N` and
/// against `ln N`, keeping whichever fit has the higher `R²` if it clears
/// [`MIN_R_SQUARED`].
pub fn fit_growth(ns: &[f64], values: &[f64]) -> Result<GrowthFit> {
    if ns.len() != values.len() || ns.len() < MIN_POINTS {
        return Err(Error::InvalidArgument(format!("growth fits need at least {MIN_POINTS} points")));
    }
    if values.iter().chain(ns).any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidArgument("growth fits need positive N and values".into()));
    }
    if values.iter().all(|v| *v == values[0]) {
        return Ok(GrowthFit {
            measured: MeasuredGrowth::Constant,
            r2_exponential: 1.0,
            r2_polynomial: 1.0,
        });
    }
    let ln_y: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let ln_n: Vec<f64> = ns.iter().map(|v| v.ln()).collect();
    let (exp_slope, r2_exp) = linear_fit(ns, &ln_y);
    let (degree, r2_poly) = linear_fit(&ln_n, &ln_y);
    let measured = if r2_exp.max(r2_poly) < MIN_R_SQUARED {
        MeasuredGrowth::Undetermined
    } else if r2_exp > r2_poly {
        MeasuredGrowth::Exponential { base: exp_slope.exp() }
    } else {
        MeasuredGrowth::Polynomial { degree }
    };
    Ok(GrowthFit {
        measured,
        r2_exponential: r2_exp,
        r2_polynomial: r2_poly,
    })
}

/// Whether a fitted shape is compatible with a symbolic complement.
pub fn consistent(symbolic: &GrowthClass, measured: &MeasuredGrowth) -> bool {
    match (symbolic, measured) {
        (GrowthClass::Exponential(_), MeasuredGrowth::Exponential { .. }) => true,
        (GrowthClass::Constant, MeasuredGrowth::Constant) => true,
        (GrowthClass::Linear(_), MeasuredGrowth::Polynomial { degree }) => (0.5..=1.5).contains(degree),
        (GrowthClass::SuperlinearPoly(d), MeasuredGrowth::Polynomial { degree }) => (0.5..=d + 0.5).contains(degree),
        (GrowthClass::Logarithmic | GrowthClass::SublinearPoly(_) | GrowthClass::Quasilinear(_), m) => {
            matches!(m, MeasuredGrowth::Polynomial { degree } if *degree <= 1.5)
        }
        _ => false,
    }
}

/// Model for [`empirical_check`]: degrees of freedom or a Fock model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckModel {
    DegreesOfFreedom,
    Fock(FockKind, DofParameter),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub n: f64,
    pub controlled: u128,
    pub complement: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpiricalCheck {
    pub policy: String,
    pub verdict: ScalabilityVerdict,
    pub rows: Vec<CheckRow>,
    pub fit: GrowthFit,
    pub agrees: bool,
}

/// Solves the complementary resource at each `N` (in parallel), fits its
/// growth and compares the fit with the symbolic verdict.
pub fn empirical_check(model: CheckModel, function: IntFunction, n_values: &[f64]) -> Result<EmpiricalCheck> {
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("N values must be strictly ascending".into()));
    }
    let symbolic = function.growth_class();
    let (verdict, sweep_model, controlled) = match model {
        CheckModel::DegreesOfFreedom => (
            classify_dof(&symbolic)?,
            SweepModel::DegreesOfFreedom,
            Controlled::DegreesOfFreedom,
        ),
        CheckModel::Fock(kind, param) => {
            let sweep_model = match kind {
                FockKind::Bose => SweepModel::BoseFixed,
                FockKind::Fermi => SweepModel::Fermi,
                FockKind::Distinguishable { internal } => SweepModel::Distinguishable { internal },
            };
            let controlled = match param {
                DofParameter::Particles => Controlled::Particles,
                DofParameter::Modes => Controlled::Modes,
            };
            (classify_fock(kind, param, &symbolic)?, sweep_model, controlled)
        }
    };
    let policy = Policy { controlled, function };
    let rows = n_values
        .par_iter()
        .map(|&n| {
            solver::solve_policy(sweep_model, &policy, n, solver::DEFAULT_SEARCH_CAP).map(|req| CheckRow {
                n,
                controlled: function.eval(n),
                complement: req.solved.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = rows.iter().map(|r| r.complement as f64).collect();
    let fit = fit_growth(n_values, &values)?;
    let agrees = verdict
        .complement_growth
        .as_ref()
        .is_some_and(|g| consistent(g, &fit.measured));
    Ok(EmpiricalCheck {
        policy: function.to_string(),
        verdict,
        rows,
        fit,
        agrees,
    })
}
