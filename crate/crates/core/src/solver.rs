//! Inverse problems: the least physical resource that reaches a target
//! number of equivalent qubits, plus the action budget of independent
//! degrees of freedom.
//!
//! Searches grow a bracket geometrically and then bisect. Each probe first
//! looks at the log-gamma estimate of `log2(dim)`; only when that lands
//! within [`EXACT_WINDOW_BITS`] of the target is the exact big-integer count
//! formed, so the decision at the boundary is always exact.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::dimension::{meets_target, ExactCount, SystemSpec, MAX_EXACT_BITS};
use crate::growth::GrowthClass;
use crate::report::serialize_big;
use crate::{Error, Result, Scalar};

/// Width of the band around the target inside which probes use exact counts.
pub const EXACT_WINDOW_BITS: f64 = 2.0;

/// Default upper limit on any solved parameter (`2^128 - 1`).
pub const DEFAULT_SEARCH_CAP: u128 = u128::MAX;

/// Action per degree of freedom, in units of `h`, needed for `2^N`
/// dimensions spread over `T` degrees of freedom: `2^(N/T)`.
pub fn action_per_dof<F: Scalar>(qubits: F, dofs: u128) -> F {
    (qubits / F::of(dofs)).exp2()
}

/// Total action `T · 2^(N/T)` in units of `h`.
pub fn total_action<F: Scalar>(qubits: F, dofs: u128) -> F {
    F::of(dofs) * action_per_dof(qubits, dofs)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseSpaceVolume<F> {
    /// `V / h^T`, the product of the per-degree-of-freedom actions.
    pub volume: F,
    pub log2: F,
}

/// Phase-space volume in units of `h^T` from per-degree-of-freedom actions.
pub fn phase_space_volume<F: Scalar>(actions: &[F]) -> Result<PhaseSpaceVolume<F>> {
    if let Some(bad) = actions.iter().find(|a| !(**a >= F::one())) {
        return Err(Error::InvalidArgument(format!(
            "every action per degree of freedom must be ≥ 1 (got {bad})"
        )));
    }
    Ok(PhaseSpaceVolume {
        volume: actions.iter().fold(F::one(), |acc, &a| acc * a),
        log2: actions.iter().fold(F::zero(), |acc, &a| acc + a.log2()),
    })
}

fn serialize_u128<S: Serializer>(v: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    serialize_big(&BigUint::from(*v), s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedCount {
    pub name: String,
    #[serde(serialize_with = "serialize_u128")]
    pub value: u128,
}

impl NamedCount {
    fn new(name: &str, value: u128) -> Self {
        NamedCount {
            name: name.to_owned(),
            value,
        }
    }
}

/// Outcome of a solve: the minimal value of one parameter with the others
/// held fixed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResourceRequirement {
    pub target_qubits: f64,
    pub fixed: Vec<NamedCount>,
    pub solved: NamedCount,
    /// `log2` of the dimension reached at the solved value.
    pub achieved_log2: f64,
    #[serde(skip)]
    spec_at: SpecTemplate,
}

impl ResourceRequirement {
    /// The system spec with the solved parameter set to `value`.
    pub fn spec_with(&self, value: u128) -> SystemSpec {
        self.spec_at.build(value)
    }

    /// Re-evaluates the dimension at `solved - 1` and confirms it falls
    /// short of the target (vacuously true at the lower search bound).
    pub fn is_minimal(&self) -> Result<bool> {
        let value = self.solved.value;
        if value == 0 || value <= self.spec_at.lower_bound() {
            return Ok(true);
        }
        Ok(!self.spec_at.meets_exactly(value - 1, self.target_qubits)?)
    }
}

/// Which parameter a search varies, with the rest of the spec frozen.
#[derive(Clone, Copy, Debug, PartialEq)]
enum SpecTemplate {
    BoseModes { particles: u128 },
    BoseVariableModes { max_particles: u128 },
    FermiModes { particles: u128 },
    DistinguishableSites { internal: u128, particles: u128 },
    BoseParticles { modes: u128 },
    BoseVariableParticles { modes: u128 },
    FermiParticles { modes: u128 },
    DistinguishableParticles { external: u128, internal: u128 },
    Levels { dofs: u128 },
}

impl SpecTemplate {
    fn build(&self, v: u128) -> SystemSpec {
        match *self {
            SpecTemplate::BoseModes { particles } => SystemSpec::BoseFixed { modes: v, particles },
            SpecTemplate::BoseVariableModes { max_particles } => SystemSpec::BoseVariable { modes: v, max_particles },
            SpecTemplate::FermiModes { particles } => SystemSpec::Fermi { modes: v, particles },
            SpecTemplate::DistinguishableSites { internal, particles } => SystemSpec::Distinguishable {
                external: v,
                internal,
                particles,
            },
            SpecTemplate::BoseParticles { modes } => SystemSpec::BoseFixed { modes, particles: v },
            SpecTemplate::BoseVariableParticles { modes } => SystemSpec::BoseVariable { modes, max_particles: v },
            SpecTemplate::FermiParticles { modes } => SystemSpec::Fermi { modes, particles: v },
            SpecTemplate::DistinguishableParticles { external, internal } => SystemSpec::Distinguishable {
                external,
                internal,
                particles: v,
            },
            SpecTemplate::Levels { dofs } => SystemSpec::DegreesOfFreedom {
                dofs,
                action_per_dof: v as f64,
            },
        }
    }

    /// `dim ≥ 2^target` at `v`, using the log-gamma estimate away from the boundary.
    fn meets(&self, v: u128, target: f64) -> Result<bool> {
        match *self {
            SpecTemplate::Levels { dofs } => Ok(levels_reach(v, dofs, target)),
            _ => probe(&self.build(v), target),
        }
    }

    fn meets_exactly(&self, v: u128, target: f64) -> Result<bool> {
        match *self {
            SpecTemplate::Levels { dofs } => Ok(levels_reach(v, dofs, target)),
            _ => probe_exact(&self.build(v), target),
        }
    }

    fn lower_bound(&self) -> u128 {
        match *self {
            SpecTemplate::BoseModes { .. } | SpecTemplate::BoseVariableModes { .. } => 1,
            SpecTemplate::FermiModes { particles } | SpecTemplate::DistinguishableSites { particles, .. } => {
                particles.max(1)
            }
            SpecTemplate::Levels { .. } => 1,
            _ => 0,
        }
    }

    /// Largest value over which the count is nondecreasing, capped.
    fn upper_bound(&self, cap: u128) -> u128 {
        match *self {
            SpecTemplate::FermiParticles { modes } => peak_filling(modes, 1).min(cap),
            SpecTemplate::DistinguishableParticles { external, internal } => peak_filling(external, internal).min(cap),
            _ => cap,
        }
    }

    fn names(&self) -> (Vec<NamedCount>, &'static str) {
        let n = NamedCount::new;
        match *self {
            SpecTemplate::BoseModes { particles } | SpecTemplate::FermiModes { particles } => {
                (vec![n("L", particles)], "M")
            }
            SpecTemplate::BoseVariableModes { max_particles } => (vec![n("Lmax", max_particles)], "M"),
            SpecTemplate::DistinguishableSites { internal, particles } => {
                (vec![n("D", internal), n("L", particles)], "K")
            }
            SpecTemplate::BoseParticles { modes } | SpecTemplate::FermiParticles { modes } => {
                (vec![n("M", modes)], "L")
            }
            SpecTemplate::BoseVariableParticles { modes } => (vec![n("M", modes)], "Lmax"),
            SpecTemplate::DistinguishableParticles { external, internal } => {
                (vec![n("K", external), n("D", internal)], "L")
            }
            SpecTemplate::Levels { dofs } => (vec![n("T", dofs)], "A/h"),
        }
    }
}

/// Smallest `L` at which `C(K, L)·D^L` stops increasing (capped at `K`).
/// The count is nondecreasing on `0..=peak`.
fn peak_filling(external: u128, internal: u128) -> u128 {
    // C(K,L+1)D ≥ C(K,L)  ⇔  L ≤ K - ceil((K+1)/(D+1))
    let denom = internal.saturating_add(1);
    let ceil = external.saturating_add(1).div_ceil(denom);
    (external - ceil.min(external)).saturating_add(1).min(external)
}

/// Exact test `dim(spec) ≥ 2^target`.
fn probe_exact(spec: &SystemSpec, target: f64) -> Result<bool> {
    Ok(spec.dimension()?.reaches(target))
}

/// `levels^dofs ≥ 2^target`, exact where the power is small enough to form.
fn levels_reach(levels: u128, dofs: u128, target: f64) -> bool {
    let log2 = dofs as f64 * (levels as f64).log2();
    if (log2 - target).abs() > EXACT_WINDOW_BITS || log2 > MAX_EXACT_BITS || dofs > u32::MAX as u128 {
        return log2 >= target;
    }
    meets_target(&BigUint::from(levels).pow(dofs as u32), target)
}

fn probe(spec: &SystemSpec, target: f64) -> Result<bool> {
    let estimate: f64 = spec.log2_lgamma()?;
    if estimate < target - EXACT_WINDOW_BITS {
        Ok(false)
    } else if estimate > target + EXACT_WINDOW_BITS {
        Ok(true)
    } else {
        probe_exact(spec, target)
    }
}

fn check_target(target: f64) -> Result<()> {
    if target >= 0.0 && target.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("target qubit count must be a finite N ≥ 0 (got {target})")))
    }
}

fn solve(template: SpecTemplate, target: f64, cap: u128) -> Result<ResourceRequirement> {
    check_target(target)?;
    let lo = template.lower_bound();
    let hi_limit = template.upper_bound(cap);
    let describe = || {
        let (fixed, solved) = template.names();
        let fixed: Vec<String> = fixed.iter().map(|f| format!("{}={}", f.name, f.value)).collect();
        format!("{} with {} for N={target}", solved, fixed.join(", "))
    };
    if hi_limit < lo {
        return Err(Error::UnreachableTarget(format!("no admissible {}", describe())));
    }
    let meets = |v: u128| template.meets(v, target);

    let solved = if meets(lo)? {
        lo
    } else {
        // Invariant: `fail` falls short, `ok` reaches the target.
        let mut fail = lo;
        let ok = loop {
            let next = fail.saturating_mul(2).max(fail + 1).min(hi_limit);
            if meets(next)? {
                break next;
            }
            if next == hi_limit {
                return Err(Error::UnreachableTarget(format!(
                    "{} exceeds the largest admissible value {hi_limit}",
                    describe()
                )));
            }
            fail = next;
        };
        let mut ok = ok;
        while ok - fail > 1 {
            let mid = fail + (ok - fail) / 2;
            if meets(mid)? {
                ok = mid;
            } else {
                fail = mid;
            }
        }
        ok
    };

    let spec = template.build(solved);
    let achieved_log2 = match template {
        SpecTemplate::Levels { dofs } => dofs as f64 * (solved as f64).log2(),
        _ => match spec.dimension() {
            Ok(count) => count.log2(),
            Err(Error::TooLarge(_)) => spec.log2_lgamma()?,
            Err(e) => return Err(e),
        },
    };
    let (fixed, solved_name) = template.names();
    Ok(ResourceRequirement {
        target_qubits: target,
        fixed,
        solved: NamedCount::new(solved_name, solved),
        achieved_log2,
        spec_at: template,
    })
}

/// Statistics for which the mode (or external-state) count is solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeSolveKind {
    BoseFixed,
    BoseVariable,
    Fermi,
    Distinguishable { internal: u128 },
}

/// Minimal mode count `M` (external-state count `K` for distinguishable
/// particles) whose exact dimension reaches `2^target` with `particles`
/// held fixed.
pub fn min_modes(kind: ModeSolveKind, particles: u128, target: f64, cap: u128) -> Result<ResourceRequirement> {
    let template = match kind {
        ModeSolveKind::BoseFixed => SpecTemplate::BoseModes { particles },
        ModeSolveKind::BoseVariable => SpecTemplate::BoseVariableModes { max_particles: particles },
        ModeSolveKind::Fermi => SpecTemplate::FermiModes { particles },
        ModeSolveKind::Distinguishable { internal } => {
            if internal == 0 {
                return Err(Error::InvalidSpec("distinguishable systems need D ≥ 1".into()));
            }
            SpecTemplate::DistinguishableSites { internal, particles }
        }
    };
    solve(template, target, cap)
}

/// Statistics and frozen mode parameters for which the particle count is solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParticleSolveKind {
    BoseFixed { modes: u128 },
    BoseVariable { modes: u128 },
    Fermi { modes: u128 },
    Distinguishable { external: u128, internal: u128 },
}

/// Minimal particle count `L` (or `Lmax`) whose exact dimension reaches
/// `2^target`. Fermi and distinguishable counts peak below `L = M` (resp.
/// `K`); if the peak falls short the target is unreachable.
pub fn min_particles(kind: ParticleSolveKind, target: f64, cap: u128) -> Result<ResourceRequirement> {
    let template = match kind {
        ParticleSolveKind::BoseFixed { modes } => SpecTemplate::BoseParticles { modes },
        ParticleSolveKind::BoseVariable { modes } => SpecTemplate::BoseVariableParticles { modes },
        ParticleSolveKind::Fermi { modes } => SpecTemplate::FermiParticles { modes },
        ParticleSolveKind::Distinguishable { external, internal } => {
            SpecTemplate::DistinguishableParticles { external, internal }
        }
    };
    template.build(0).validate().map_err(|e| Error::InvalidSpec(e.to_string()))?;
    solve(template, target, cap)
}

/// Minimal integer number of levels `d` per degree of freedom with
/// `d^T ≥ 2^target`, i.e. the ceiling of [`action_per_dof`].
pub fn min_levels_per_dof(dofs: u128, target: f64, cap: u128) -> Result<ResourceRequirement> {
    if dofs == 0 {
        return Err(Error::InvalidArgument("need at least one degree of freedom (T ≥ 1)".into()));
    }
    solve(SpecTemplate::Levels { dofs }, target, cap)
}

/// An explicit integer-valued function of `N`, used as a growth policy for
/// one side of a resource trade-off.
///
/// String forms: `const:2`, `linear:1`, `linear:1/2`, `quasilinear:1`
/// (`⌈N / (p log2 N)⌉`), `poly:1/2` (`⌈N^(1/2)⌉`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntFunction {
    Constant(u128),
    Linear { num: u64, den: u64 },
    Quasilinear(u32),
    Power { num: u32, den: u32 },
}

impl IntFunction {
    pub fn eval(&self, n: f64) -> u128 {
        let up = |x: f64| x.ceil().max(0.0) as u128;
        match *self {
            IntFunction::Constant(c) => c,
            IntFunction::Linear { num, den } => up(num as f64 * n / den as f64),
            IntFunction::Quasilinear(p) => {
                if n < 2.0 {
                    1
                } else {
                    up(n / (p as f64 * n.log2())).max(1)
                }
            }
            IntFunction::Power { num, den } => up(n.powf(num as f64 / den as f64)),
        }
    }

    /// The symbolic growth class this policy realizes.
    pub fn growth_class(&self) -> GrowthClass {
        match *self {
            IntFunction::Constant(_) => GrowthClass::Constant,
            IntFunction::Linear { num, den } => GrowthClass::Linear(num as f64 / den as f64),
            IntFunction::Quasilinear(p) => GrowthClass::quasilinear(p),
            IntFunction::Power { num, den } => {
                GrowthClass::power(num as f64 / den as f64).unwrap_or(GrowthClass::Constant)
            }
        }
    }
}

impl std::fmt::Display for IntFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntFunction::Constant(c) => write!(f, "const:{c}"),
            IntFunction::Linear { num, den: 1 } => write!(f, "linear:{num}"),
            IntFunction::Linear { num, den } => write!(f, "linear:{num}/{den}"),
            IntFunction::Quasilinear(p) => write!(f, "quasilinear:{p}"),
            IntFunction::Power { num, den } => write!(f, "poly:{num}/{den}"),
        }
    }
}

fn parse_ratio<T: std::str::FromStr + PartialEq + Default>(raw: &str) -> Option<(T, T)> {
    let (num, den) = match raw.split_once('/') {
        Some((a, b)) => (a.trim().parse().ok()?, b.trim().parse().ok()?),
        None => (raw.trim().parse().ok()?, "1".parse().ok()?),
    };
    (den != T::default()).then_some((num, den))
}

impl std::str::FromStr for IntFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown policy function `{s}`"));
        let (head, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        let f = match head {
            "const" => IntFunction::Constant(arg.trim().parse().map_err(|_| bad())?),
            "linear" => {
                let (num, den) = parse_ratio::<u64>(arg).ok_or_else(bad)?;
                if num == 0 {
                    return Err(bad());
                }
                IntFunction::Linear { num, den }
            }
            "quasilinear" => match arg.trim().parse::<u32>() {
                Ok(0) => IntFunction::Linear { num: 1, den: 1 },
                Ok(p) => IntFunction::Quasilinear(p),
                Err(_) => return Err(bad()),
            },
            "poly" => {
                let (num, den) = parse_ratio::<u32>(arg).ok_or_else(bad)?;
                IntFunction::Power { num, den }
            }
            _ => return Err(bad()),
        };
        Ok(f)
    }
}

/// Model whose resources a sweep solves for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepModel {
    DegreesOfFreedom,
    BoseFixed,
    BoseVariable,
    Fermi,
    Distinguishable { internal: u128 },
}

/// Which parameter a policy prescribes; the complementary one is solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Controlled {
    /// `T`; the solved resource is the number of levels per degree of freedom.
    DegreesOfFreedom,
    /// `L` (or `Lmax`); the solved resource is the mode count.
    Particles,
    /// `M` (or `K`); the solved resource is the particle count.
    Modes,
}

impl std::str::FromStr for Controlled {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "dof" | "T" => Ok(Controlled::DegreesOfFreedom),
            "particles" | "L" => Ok(Controlled::Particles),
            "modes" | "M" | "K" => Ok(Controlled::Modes),
            other => Err(Error::Parse(format!("unknown controlled parameter `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Policy {
    pub controlled: Controlled,
    pub function: IntFunction,
}

/// Solves the complementary resource for a single `N` under a policy.
pub fn solve_policy(model: SweepModel, policy: &Policy, n: f64, cap: u128) -> Result<ResourceRequirement> {
    let value = policy.function.eval(n);
    match (model, policy.controlled) {
        (SweepModel::DegreesOfFreedom, Controlled::DegreesOfFreedom) => min_levels_per_dof(value, n, cap),
        (SweepModel::DegreesOfFreedom, _) | (_, Controlled::DegreesOfFreedom) => Err(Error::InvalidArgument(
            "degrees-of-freedom policies pair only with the dof model".into(),
        )),
        (model, Controlled::Particles) => {
            let kind = match model {
                SweepModel::BoseFixed => ModeSolveKind::BoseFixed,
                SweepModel::BoseVariable => ModeSolveKind::BoseVariable,
                SweepModel::Fermi => ModeSolveKind::Fermi,
                SweepModel::Distinguishable { internal } => ModeSolveKind::Distinguishable { internal },
                SweepModel::DegreesOfFreedom => unreachable!(),
            };
            min_modes(kind, value, n, cap)
        }
        (model, Controlled::Modes) => {
            let kind = match model {
                SweepModel::BoseFixed => ParticleSolveKind::BoseFixed { modes: value },
                SweepModel::BoseVariable => ParticleSolveKind::BoseVariable { modes: value },
                SweepModel::Fermi => ParticleSolveKind::Fermi { modes: value },
                SweepModel::Distinguishable { internal } => ParticleSolveKind::Distinguishable {
                    external: value,
                    internal,
                },
                SweepModel::DegreesOfFreedom => unreachable!(),
            };
            min_particles(kind, n, cap)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub requirement: Option<ResourceRequirement>,
    /// Error tag and message when this row could not be solved.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub policy: String,
    pub fixed_names: Vec<String>,
    pub solved_name: String,
    pub rows: Vec<SweepRow>,
    #[serde(skip)]
    failure_tags: Vec<Option<&'static str>>,
    #[serde(skip)]
    fixed_values: Vec<Vec<u128>>,
}

impl SweepTable {
    /// One header row, then one row per requested `N` (failed rows keep
    /// their inputs and carry the error tag in `status`).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n");
        for name in &self.fixed_names {
            out.push(',');
            out.push_str(name);
        }
        out.push(',');
        out.push_str(&self.solved_name);
        out.push_str(",log2dim,status\n");
        for ((row, tag), fixed) in self.rows.iter().zip(&self.failure_tags).zip(&self.fixed_values) {
            out.push_str(&row.n.to_string());
            for v in fixed {
                out.push(',');
                out.push_str(&v.to_string());
            }
            match &row.requirement {
                Some(req) => {
                    out.push_str(&format!(",{},{},ok\n", req.solved.value, req.achieved_log2));
                }
                None => out.push_str(&format!(",,,{}\n", tag.unwrap_or("error"))),
            }
        }
        out
    }

    pub fn solved_values(&self) -> Vec<Option<u128>> {
        self.rows
            .iter()
            .map(|r| r.requirement.as_ref().map(|q| q.solved.value))
            .collect()
    }
}

fn sweep_names(model: SweepModel, policy: &Policy, value: u128) -> (Vec<NamedCount>, &'static str) {
    let template = match (model, policy.controlled) {
        (SweepModel::DegreesOfFreedom, _) => SpecTemplate::Levels { dofs: value },
        (SweepModel::BoseFixed, Controlled::Particles) => SpecTemplate::BoseModes { particles: value },
        (SweepModel::BoseVariable, Controlled::Particles) => SpecTemplate::BoseVariableModes { max_particles: value },
        (SweepModel::Fermi, Controlled::Particles) => SpecTemplate::FermiModes { particles: value },
        (SweepModel::Distinguishable { internal }, Controlled::Particles) => {
            SpecTemplate::DistinguishableSites { internal, particles: value }
        }
        (SweepModel::BoseFixed, _) => SpecTemplate::BoseParticles { modes: value },
        (SweepModel::BoseVariable, _) => SpecTemplate::BoseVariableParticles { modes: value },
        (SweepModel::Fermi, _) => SpecTemplate::FermiParticles { modes: value },
        (SweepModel::Distinguishable { internal }, _) => SpecTemplate::DistinguishableParticles {
            external: value,
            internal,
        },
    };
    template.names()
}

/// Solves one row per `N`. Rows are computed in parallel and returned in
/// input order; unreachable rows are flagged and the sweep continues.
pub fn sweep(model: SweepModel, policy: &Policy, n_values: &[f64], cap: u128) -> Result<SweepTable> {
    let dof_model = model == SweepModel::DegreesOfFreedom;
    let dof_policy = policy.controlled == Controlled::DegreesOfFreedom;
    if dof_model != dof_policy {
        return Err(Error::InvalidArgument(
            "degrees-of-freedom policies pair only with the dof model".into(),
        ));
    }
    if n_values.iter().any(|n| !(n.is_finite() && *n >= 0.0)) {
        return Err(Error::InvalidArgument("every N must be finite and ≥ 0".into()));
    }
    if n_values.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("N values must be ascending".into()));
    }

    let solved: Vec<(SweepRow, Option<&'static str>, Vec<u128>)> = n_values
        .par_iter()
        .map(|&n| {
            let (fixed, _) = sweep_names(model, policy, policy.function.eval(n));
            let fixed_values = fixed.iter().map(|f| f.value).collect();
            match solve_policy(model, policy, n, cap) {
                Ok(req) => (
                    SweepRow {
                        n,
                        requirement: Some(req),
                        failure: None,
                    },
                    None,
                    fixed_values,
                ),
                Err(e) => (
                    SweepRow {
                        n,
                        requirement: None,
                        failure: Some(e.to_string()),
                    },
                    Some(e.tag()),
                    fixed_values,
                ),
            }
        })
        .collect();

    let (fixed, solved_name) = sweep_names(model, policy, 0);
    let mut rows = Vec::with_capacity(solved.len());
    let mut failure_tags = Vec::with_capacity(solved.len());
    let mut fixed_values = Vec::with_capacity(solved.len());
    for (row, tag, values) in solved {
        rows.push(row);
        failure_tags.push(tag);
        fixed_values.push(values);
    }
    Ok(SweepTable {
        policy: format!("{:?}={}", policy.controlled, policy.function),
        fixed_names: fixed.into_iter().map(|f| f.name).collect(),
        solved_name: solved_name.to_owned(),
        rows,
        failure_tags,
        fixed_values,
    })
}

/// Exact dimension for a resource requirement's solved spec; convenience
/// for reports.
pub fn achieved_dimension(req: &ResourceRequirement) -> Result<ExactCount> {
    req.spec_with(req.solved.value).dimension()
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u128 = DEFAULT_SEARCH_CAP;

    #[test]
    fn action_examples() {
        assert_eq!(action_per_dof(100.0f64, 100), 2.0);
        assert_eq!(action_per_dof(8.0f64, 4), 4.0);
        assert!((action_per_dof(10.0f64, 3) - 10.079).abs() < 1e-3);
        assert_eq!(total_action(100.0f64, 100), 200.0);
        assert_eq!(total_action(10.0f64, 1), 1024.0);
    }

    #[test]
    fn total_action_minimum_at_seven() {
        // Brute force over T = 1..=100.
        let best = (1..=100u128)
            .min_by(|&a, &b| total_action(10.0f64, a).total_cmp(&total_action(10.0, b)))
            .unwrap();
        assert_eq!(best, 7);
        assert!((total_action(10.0f64, 7) - 18.8426).abs() < 1e-3);
    }

    #[test]
    fn phase_space_examples() {
        let v = phase_space_volume(&[2.0f64, 2.0, 2.0]).unwrap();
        assert_eq!(v.volume, 8.0);
        assert_eq!(v.log2, 3.0);
        assert_eq!(phase_space_volume(&[8.0f64]).unwrap().volume, 8.0);
        assert_eq!(phase_space_volume::<f64>(&[]).unwrap().volume, 1.0);
        assert!(phase_space_volume(&[2.0f64, 0.5]).is_err());
    }

    #[test]
    fn min_modes_examples() {
        let r = min_modes(ModeSolveKind::BoseFixed, 1, 4.0, CAP).unwrap();
        assert_eq!(r.solved.value, 16);
        let r = min_modes(ModeSolveKind::BoseFixed, 2, 4.0, CAP).unwrap();
        assert_eq!(r.solved.value, 6);
        assert!(r.is_minimal().unwrap());
        let r = min_modes(ModeSolveKind::Fermi, 0, 0.0, CAP).unwrap();
        assert_eq!(r.solved.value, 1);
    }

    #[test]
    fn min_particles_examples() {
        let r = min_particles(ParticleSolveKind::BoseVariable { modes: 1 }, 4.0, CAP).unwrap();
        assert_eq!(r.solved.value, 15);
        let err = min_particles(ParticleSolveKind::Fermi { modes: 4 }, 3.0, CAP).unwrap_err();
        assert!(matches!(err, Error::UnreachableTarget(_)));
        let r = min_particles(ParticleSolveKind::Distinguishable { external: 3, internal: 2 }, 3.0, CAP).unwrap();
        assert_eq!(r.solved.value, 2);
        assert_eq!(achieved_dimension(&r).unwrap(), ExactCount::from(12));
    }

    #[test]
    fn unary_solutions_are_exact_powers() {
        for n in 0..=60u32 {
            let r = min_modes(ModeSolveKind::BoseFixed, 1, n as f64, CAP).unwrap();
            assert_eq!(r.solved.value, 1u128 << n);
            let r = min_particles(ParticleSolveKind::BoseVariable { modes: 1 }, n as f64, CAP).unwrap();
            assert_eq!(r.solved.value, (1u128 << n) - 1);
            assert!(r.is_minimal().unwrap());
        }
    }

    #[test]
    fn vacuum_cannot_reach_positive_targets() {
        let err = min_modes(ModeSolveKind::BoseFixed, 0, 1.0, CAP).unwrap_err();
        assert!(matches!(err, Error::UnreachableTarget(_)));
        let err = min_modes(ModeSolveKind::BoseFixed, 1, 200.0, CAP).unwrap_err();
        assert!(matches!(err, Error::UnreachableTarget(_)));
    }

    #[test]
    fn peak_filling_matches_scan() {
        for k in 1..=12u128 {
            for d in 1..=5u128 {
                let counts: Vec<ExactCount> = (0..=k)
                    .map(|l| crate::dimension::distinguishable_dimension(k, d, l).unwrap())
                    .collect();
                let peak = peak_filling(k, d) as usize;
                assert!(counts[..=peak].windows(2).all(|w| w[0].value() <= w[1].value()), "K={k} D={d}");
                if peak < k as usize {
                    assert!(counts[peak + 1].value() < counts[peak].value(), "K={k} D={d}");
                }
            }
        }
    }

    #[test]
    fn levels_per_dof() {
        let r = min_levels_per_dof(4, 8.0, CAP).unwrap();
        assert_eq!(r.solved.value, 4);
        let r = min_levels_per_dof(3, 10.0, CAP).unwrap();
        assert_eq!(r.solved.value, 11);
        assert!(r.is_minimal().unwrap());
        assert!(min_levels_per_dof(0, 3.0, CAP).is_err());
    }

    #[test]
    fn real_valued_targets() {
        // C(M+1, 2) ≥ 2^4.5 ≈ 22.6 first at M = 6 (21 < 22.6 ≤ 28 at M = 7)
        let r = min_modes(ModeSolveKind::BoseFixed, 2, 4.5, CAP).unwrap();
        assert_eq!(r.solved.value, 7);
        assert!(r.is_minimal().unwrap());
    }

    #[test]
    fn policy_parsing_and_eval() {
        let f: IntFunction = "linear:1/2".parse().unwrap();
        assert_eq!(f.eval(9.0), 5);
        assert_eq!("const:2".parse::<IntFunction>().unwrap().eval(100.0), 2);
        assert_eq!("quasilinear:1".parse::<IntFunction>().unwrap().eval(16.0), 4);
        assert_eq!("poly:1/2".parse::<IntFunction>().unwrap().eval(16.0), 4);
        assert!("linear:1/0".parse::<IntFunction>().is_err());
        assert!("cubic:3".parse::<IntFunction>().is_err());
        for s in ["const:3", "linear:2", "linear:1/3", "quasilinear:2", "poly:3/2"] {
            assert_eq!(s.parse::<IntFunction>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn sweep_examples() {
        let unary = Policy {
            controlled: Controlled::Particles,
            function: IntFunction::Constant(1),
        };
        let t = sweep(SweepModel::BoseFixed, &unary, &[2.0, 4.0, 6.0], CAP).unwrap();
        assert_eq!(t.solved_values(), vec![Some(4), Some(16), Some(64)]);

        let qubits = Policy {
            controlled: Controlled::DegreesOfFreedom,
            function: IntFunction::Linear { num: 1, den: 1 },
        };
        let t = sweep(SweepModel::DegreesOfFreedom, &qubits, &[2.0, 4.0, 6.0], CAP).unwrap();
        assert_eq!(t.solved_values(), vec![Some(2), Some(2), Some(2)]);
    }

    #[test]
    fn sweep_flags_failures_and_keeps_going() {
        let policy = Policy {
            controlled: Controlled::Modes,
            function: IntFunction::Constant(4),
        };
        let t = sweep(SweepModel::Fermi, &policy, &[1.0, 3.0, 2.0f64.log2() + 1.0], CAP);
        assert!(t.is_err(), "non-ascending N rejected");
        let t = sweep(SweepModel::Fermi, &policy, &[1.0, 2.0, 3.0], CAP).unwrap();
        assert_eq!(t.solved_values(), vec![Some(1), Some(1), None]);
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "n,M,L,log2dim,status");
        assert_eq!(lines[3], "3,4,,,unreachable-target");
    }
}
