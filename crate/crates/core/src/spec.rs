//! Spec documents: JSON objects with a top-level `"kind"` naming a system,
//! a growth classification or a sweep.
//!
//! ```json
//! {"kind": "fermi", "M": 4, "L": 2}
//! {"kind": "distinguishable", "K": 3, "D": 2, "L": 3}
//! {"kind": "growth", "model": "bose", "parameter": "particles", "growth": "quasilinear:1"}
//! {"kind": "sweep", "model": "bose", "parameter": "particles", "policy": "const:1", "N": [2, 4, 6]}
//! ```
//!
//! Counts may be JSON integers or decimal strings (for values beyond 2^64).
//! A system document may omit one of its counts and give a target `"N"`
//! instead; [`SolveRequest`] then solves for the missing count.

use std::collections::BTreeMap;

use serde_json::{Map, Value as Json};

use crate::classify::{self, CheckModel, DofParameter, FockKind, ScalabilityVerdict};
use crate::growth::GrowthClass;
use crate::solver::{self, Controlled, IntFunction, ModeSolveKind, ParticleSolveKind, Policy, ResourceRequirement};
use crate::solver::{SweepModel, SweepTable};
use crate::{Error, Result, SystemSpec};

/// A spec document before interpretation: its kind and remaining keys.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawSpec {
    pub kind: String,
    fields: BTreeMap<String, Json>,
}

fn canonical_kind(kind: &str) -> Option<&'static str> {
    Some(match kind {
        "dof" | "degrees-of-freedom" => "dof",
        "bose" | "bose-fixed" => "bose",
        "bose-variable" => "bose-variable",
        "fermi" => "fermi",
        "distinguishable" | "dist" => "distinguishable",
        "growth" => "growth",
        "sweep" => "sweep",
        _ => return None,
    })
}

impl RawSpec {
    pub fn new(kind: &str) -> Result<Self> {
        let kind = canonical_kind(kind)
            .ok_or_else(|| Error::validation("kind", format!("unknown kind `{kind}`")))?;
        Ok(RawSpec {
            kind: kind.to_owned(),
            fields: BTreeMap::new(),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Json = serde_json::from_str(text).map_err(|e| Error::Parse(format!("spec: {e}")))?;
        let Json::Object(map) = doc else {
            return Err(Error::Parse("spec must be a JSON object".into()));
        };
        Self::from_map(map)
    }

    fn from_map(mut map: Map<String, Json>) -> Result<Self> {
        let kind = match map.remove("kind") {
            Some(Json::String(k)) => k,
            Some(_) => return Err(Error::validation("kind", "must be a string")),
            None => return Err(Error::validation("kind", "required")),
        };
        let mut raw = Self::new(&kind)?;
        raw.fields = map.into_iter().collect();
        Ok(raw)
    }

    /// Applies inline overrides; inline values win. Returns one message per
    /// key whose file value was replaced by a different inline value.
    pub fn merge(&mut self, overrides: &[(String, Json)]) -> Vec<String> {
        let mut conflicts = Vec::new();
        for (key, value) in overrides {
            if let Some(old) = self.fields.insert(key.clone(), value.clone()) {
                if !same_value(&old, value) {
                    conflicts.push(format!("{key}: inline {value} overrides file value {old}"));
                }
            }
        }
        conflicts
    }

    pub fn has(&self, key: &str) -> bool {
        self.fields.contains_key(key)
    }

    /// Removes a key, for front ends that interpret extra keys themselves.
    pub fn take(&mut self, key: &str) -> Option<Json> {
        self.fields.remove(key)
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.fields.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::validation(
                k.clone(),
                format!("not a field of kind `{}` (expected one of {})", self.kind, allowed.join(", ")),
            )),
            None => Ok(()),
        }
    }

    pub fn count(&self, key: &str) -> Result<u128> {
        let bad = || Error::validation(key, "must be a nonnegative integer");
        match self.fields.get(key) {
            None => Err(Error::validation(key, "required")),
            Some(Json::Number(n)) => match (n.as_u64(), n.as_f64()) {
                (Some(v), _) => Ok(v as u128),
                (None, Some(f)) if f >= 0.0 && f.fract() == 0.0 && f <= (1u64 << 53) as f64 => Ok(f as u128),
                _ => Err(bad()),
            },
            Some(Json::String(s)) => s.trim().parse().map_err(|_| bad()),
            Some(_) => Err(bad()),
        }
    }

    fn opt_count(&self, key: &str) -> Result<Option<u128>> {
        if self.has(key) {
            self.count(key).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn real(&self, key: &str) -> Result<f64> {
        let bad = || Error::validation(key, "must be a finite number");
        let v = match self.fields.get(key) {
            None => return Err(Error::validation(key, "required")),
            Some(Json::Number(n)) => n.as_f64().ok_or_else(bad)?,
            Some(Json::String(s)) => s.trim().parse().map_err(|_| bad())?,
            Some(_) => return Err(bad()),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    }

    pub fn text(&self, key: &str) -> Result<&str> {
        match self.fields.get(key) {
            None => Err(Error::validation(key, "required")),
            Some(Json::String(s)) => Ok(s),
            Some(_) => Err(Error::validation(key, "must be a string")),
        }
    }

    /// A list of reals, given as a JSON array or a comma-separated string.
    pub fn real_list(&self, key: &str) -> Result<Vec<f64>> {
        let bad = || Error::validation(key, "must be a list of finite numbers");
        let items: Vec<f64> = match self.fields.get(key) {
            None => return Err(Error::validation(key, "required")),
            Some(Json::Array(a)) => a.iter().map(|v| v.as_f64().ok_or_else(bad)).collect::<Result<_>>()?,
            Some(Json::String(s)) => s
                .split(',')
                .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
                .collect::<Result<_>>()?,
            Some(Json::Number(n)) => vec![n.as_f64().ok_or_else(bad)?],
            Some(_) => return Err(bad()),
        };
        if items.iter().any(|v| !v.is_finite()) {
            return Err(bad());
        }
        Ok(items)
    }

    fn target(&self) -> Result<f64> {
        let n = self.real("N")?;
        if n < 0.0 {
            return Err(Error::validation("N", "N ≥ 0"));
        }
        Ok(n)
    }

    /// A fully specified system; every count must be present.
    pub fn system(&self) -> Result<SystemSpec> {
        let spec = match self.kind.as_str() {
            "dof" => {
                self.check_keys(&["T", "A", "N"])?;
                SystemSpec::DegreesOfFreedom {
                    dofs: self.count("T")?,
                    action_per_dof: self.real("A")?,
                }
            }
            "bose" => {
                self.check_keys(&["M", "L", "N"])?;
                SystemSpec::BoseFixed {
                    modes: self.count("M")?,
                    particles: self.count("L")?,
                }
            }
            "bose-variable" => {
                self.check_keys(&["M", "Lmax", "N"])?;
                SystemSpec::BoseVariable {
                    modes: self.count("M")?,
                    max_particles: self.count("Lmax")?,
                }
            }
            "fermi" => {
                self.check_keys(&["M", "L", "N"])?;
                SystemSpec::Fermi {
                    modes: self.count("M")?,
                    particles: self.count("L")?,
                }
            }
            "distinguishable" => {
                self.check_keys(&["K", "D", "L", "N"])?;
                SystemSpec::Distinguishable {
                    external: self.count("K")?,
                    internal: self.count("D")?,
                    particles: self.count("L")?,
                }
            }
            other => {
                return Err(Error::validation("kind", format!("`{other}` does not describe a system")));
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn growth(&self) -> Result<GrowthSpec> {
        if self.kind != "growth" {
            return Err(Error::validation("kind", "expected `growth`"));
        }
        self.check_keys(&["model", "parameter", "growth", "D"])?;
        let growth: GrowthClass = self
            .text("growth")?
            .parse()
            .map_err(|e: Error| Error::validation("growth", e.to_string()))?;
        let model = match self.text("model")? {
            "dof" => CheckModel::DegreesOfFreedom,
            fock => CheckModel::Fock(self.fock_kind(fock)?, self.dof_parameter()?),
        };
        Ok(GrowthSpec { model, growth })
    }

    fn fock_kind(&self, model: &str) -> Result<FockKind> {
        match model {
            "bose" => Ok(FockKind::Bose),
            "fermi" => Ok(FockKind::Fermi),
            "distinguishable" | "dist" => {
                let internal = self.count("D")?;
                if internal == 0 {
                    return Err(Error::validation("D", "D ≥ 1"));
                }
                Ok(FockKind::Distinguishable { internal })
            }
            other => Err(Error::validation("model", format!("unknown model `{other}`"))),
        }
    }

    fn dof_parameter(&self) -> Result<DofParameter> {
        match self.text("parameter")? {
            "particles" | "L" => Ok(DofParameter::Particles),
            "modes" | "M" | "K" => Ok(DofParameter::Modes),
            other => Err(Error::validation("parameter", format!("expected particles or modes, got `{other}`"))),
        }
    }

    pub fn sweep(&self) -> Result<SweepSpec> {
        if self.kind != "sweep" {
            return Err(Error::validation("kind", "expected `sweep`"));
        }
        self.check_keys(&["model", "parameter", "policy", "N", "D", "cap"])?;
        let function: IntFunction = self
            .text("policy")?
            .parse()
            .map_err(|e: Error| Error::validation("policy", e.to_string()))?;
        let (model, controlled) = match self.text("model")? {
            "dof" => (SweepModel::DegreesOfFreedom, Controlled::DegreesOfFreedom),
            other => {
                let model = match other {
                    "bose" => SweepModel::BoseFixed,
                    "bose-variable" => SweepModel::BoseVariable,
                    "fermi" => SweepModel::Fermi,
                    fock => match self.fock_kind(fock)? {
                        FockKind::Distinguishable { internal } => SweepModel::Distinguishable { internal },
                        _ => unreachable!(),
                    },
                };
                let controlled = match self.dof_parameter()? {
                    DofParameter::Particles => Controlled::Particles,
                    DofParameter::Modes => Controlled::Modes,
                };
                (model, controlled)
            }
        };
        let n_values = self.real_list("N")?;
        if n_values.iter().any(|n| *n < 0.0) {
            return Err(Error::validation("N", "every N ≥ 0"));
        }
        if n_values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::validation("N", "values must be ascending"));
        }
        Ok(SweepSpec {
            model,
            policy: Policy { controlled, function },
            n_values,
            cap: self.opt_count("cap")?.unwrap_or(solver::DEFAULT_SEARCH_CAP),
        })
    }

    /// A system document with exactly one count left out, plus a target `N`.
    pub fn solve_request(&self, cap: u128) -> Result<SolveRequest> {
        let target = self.target()?;
        let one_missing = |a: &str, b: &str| -> Result<bool> {
            match (self.has(a), self.has(b)) {
                (true, false) => Ok(true),
                (false, true) => Ok(false),
                _ => Err(Error::validation(
                    format!("{a}/{b}"),
                    format!("give exactly one of {a}, {b}; the other is solved for"),
                )),
            }
        };
        let problem = match self.kind.as_str() {
            "dof" => {
                self.check_keys(&["T", "N"])?;
                SolveProblem::Levels { dofs: self.count("T")? }
            }
            "bose" | "bose-variable" | "fermi" => {
                let particles_key = if self.kind == "bose-variable" { "Lmax" } else { "L" };
                self.check_keys(&["M", particles_key, "N"])?;
                if one_missing(particles_key, "M")? {
                    let kind = match self.kind.as_str() {
                        "bose" => ModeSolveKind::BoseFixed,
                        "bose-variable" => ModeSolveKind::BoseVariable,
                        _ => ModeSolveKind::Fermi,
                    };
                    SolveProblem::Modes { kind, particles: self.count(particles_key)? }
                } else {
                    let modes = self.count("M")?;
                    if modes == 0 {
                        return Err(Error::validation("M", "M ≥ 1"));
                    }
                    SolveProblem::Particles(match self.kind.as_str() {
                        "bose" => ParticleSolveKind::BoseFixed { modes },
                        "bose-variable" => ParticleSolveKind::BoseVariable { modes },
                        _ => ParticleSolveKind::Fermi { modes },
                    })
                }
            }
            "distinguishable" => {
                self.check_keys(&["K", "D", "L", "N"])?;
                let internal = self.count("D")?;
                if internal == 0 {
                    return Err(Error::validation("D", "D ≥ 1"));
                }
                if one_missing("L", "K")? {
                    SolveProblem::Modes {
                        kind: ModeSolveKind::Distinguishable { internal },
                        particles: self.count("L")?,
                    }
                } else {
                    let external = self.count("K")?;
                    if external == 0 {
                        return Err(Error::validation("K", "K ≥ 1"));
                    }
                    SolveProblem::Particles(ParticleSolveKind::Distinguishable { external, internal })
                }
            }
            other => {
                return Err(Error::validation("kind", format!("`{other}` does not describe a system")));
            }
        };
        Ok(SolveRequest { problem, target, cap })
    }
}

fn same_value(a: &Json, b: &Json) -> bool {
    let as_f64 = |v: &Json| match v {
        Json::Number(n) => n.as_f64(),
        Json::String(s) => s.trim().parse().ok(),
        _ => None,
    };
    a == b || matches!((as_f64(a), as_f64(b)), (Some(x), Some(y)) if x == y)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthSpec {
    pub model: CheckModel,
    pub growth: GrowthClass,
}

impl GrowthSpec {
    pub fn classify(&self) -> Result<ScalabilityVerdict> {
        match self.model {
            CheckModel::DegreesOfFreedom => classify::classify_dof(&self.growth),
            CheckModel::Fock(kind, param) => classify::classify_fock(kind, param, &self.growth),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub model: SweepModel,
    pub policy: Policy,
    pub n_values: Vec<f64>,
    pub cap: u128,
}

impl SweepSpec {
    pub fn run(&self) -> Result<SweepTable> {
        solver::sweep(self.model, &self.policy, &self.n_values, self.cap)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveProblem {
    Modes { kind: ModeSolveKind, particles: u128 },
    Particles(ParticleSolveKind),
    Levels { dofs: u128 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveRequest {
    pub problem: SolveProblem,
    pub target: f64,
    pub cap: u128,
}

impl SolveRequest {
    pub fn solve(&self) -> Result<ResourceRequirement> {
        match self.problem {
            SolveProblem::Modes { kind, particles } => solver::min_modes(kind, particles, self.target, self.cap),
            SolveProblem::Particles(kind) => solver::min_particles(kind, self.target, self.cap),
            SolveProblem::Levels { dofs } => solver::min_levels_per_dof(dofs, self.target, self.cap),
        }
    }
}

/// Any interpretable spec document.
#[derive(Clone, Debug, PartialEq)]
pub enum ParsedSpec {
    System(SystemSpec),
    Growth(GrowthSpec),
    Sweep(SweepSpec),
}

/// Parses and validates a complete spec document.
pub fn parse_spec(text: &str) -> Result<ParsedSpec> {
    let raw = RawSpec::parse(text)?;
    match raw.kind.as_str() {
        "growth" => raw.growth().map(ParsedSpec::Growth),
        "sweep" => raw.sweep().map(ParsedSpec::Sweep),
        _ => raw.system().map(ParsedSpec::System),
    }
}
