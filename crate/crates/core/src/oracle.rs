//! Brute-force enumeration of Fock configurations for small systems.
//!
//! This is the independent check on [`crate::dimension`]: it never uses a
//! counting formula to produce configurations, only to refuse work that
//! would exceed the enumeration budget.
//!
//! Every configuration is tracked as the sorted list of occupied mode
//! indices (with repetition for bosons). Streams visit these lists in
//! strictly increasing lexicographic order, which is the same as strictly
//! decreasing lexicographic order of the occupation vectors: for two bosons
//! in two modes the stream is `(2,0), (1,1), (0,2)`.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::dimension::{self, ExactCount};
use crate::{Error, Result};

/// Occupation numbers of a single configuration.
///
/// For distinguishable particles the vector has `K·D` entries, indexed
/// `site·D + label`, and each site holds at most one particle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occupation {
    pub counts: Vec<u32>,
    pub total: u32,
}

impl Occupation {
    /// Occupied mode indices in ascending order, repeated by occupation.
    pub fn mode_list(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(mode, &n)| std::iter::repeat(mode).take(n as usize))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Largest allowed mode (or external-state) count plus particle count.
    pub max_combined: u32,
    /// Largest number of configurations a single stream may produce.
    pub budget: u64,
}

/// Default per-stream budget: the smallest power of two that admits the
/// largest stream on the `K = D = 8` grid (`8^8` configurations).
pub const DEFAULT_BUDGET: u64 = 1 << 25;

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_combined: 40,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Occupation vectors longer than this are refused regardless of budget.
const MAX_MODE_VECTOR: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Bose { modes: usize },
    Fermi { modes: usize },
    Distinguishable { sites: usize, labels: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    Fresh,
    Active,
    Done,
}

/// Incremental stream of configurations; memory use is fixed per stream.
///
/// [`Configurations::advance`] lends the current configuration without
/// cloning; the [`Iterator`] impl clones it.
#[derive(Clone, Debug)]
pub struct Configurations {
    family: Family,
    positions: Vec<usize>,
    current: Occupation,
    phase: Phase,
}

impl Configurations {
    fn start(family: Family, particles: usize) -> Self {
        let positions: Vec<usize> = match family {
            Family::Bose { .. } => vec![0; particles],
            Family::Fermi { .. } => (0..particles).collect(),
            Family::Distinguishable { labels, .. } => (0..particles).map(|i| i * labels).collect(),
        };
        let width = match family {
            Family::Bose { modes } | Family::Fermi { modes } => modes,
            Family::Distinguishable { sites, labels } => sites * labels,
        };
        let mut counts = vec![0u32; width];
        for &p in &positions {
            counts[p] += 1;
        }
        Configurations {
            family,
            positions,
            current: Occupation {
                counts,
                total: particles as u32,
            },
            phase: Phase::Fresh,
        }
    }

    /// Largest mode index position `i` may hold.
    fn ceiling(&self, i: usize) -> usize {
        let len = self.positions.len();
        match self.family {
            Family::Bose { modes } => modes - 1,
            Family::Fermi { modes } => modes - len + i,
            Family::Distinguishable { sites, labels } => (sites - len + i) * labels + labels - 1,
        }
    }

    fn step(&mut self) -> bool {
        let Some(pivot) = (0..self.positions.len())
            .rev()
            .find(|&i| self.positions[i] < self.ceiling(i))
        else {
            return false;
        };
        let counts = &mut self.current.counts;
        for &p in &self.positions[pivot..] {
            counts[p] -= 1;
        }
        self.positions[pivot] += 1;
        for j in pivot + 1..self.positions.len() {
            let prev = self.positions[j - 1];
            self.positions[j] = match self.family {
                Family::Bose { .. } => prev,
                Family::Fermi { .. } => prev + 1,
                Family::Distinguishable { labels, .. } => (prev / labels + 1) * labels,
            };
        }
        for &p in &self.positions[pivot..] {
            counts[p] += 1;
        }
        true
    }

    /// Moves to the next configuration and returns it, or `None` once the
    /// stream is exhausted.
    pub fn advance(&mut self) -> Option<&Occupation> {
        match self.phase {
            Phase::Fresh => self.phase = Phase::Active,
            Phase::Active => {
                if !self.step() {
                    self.phase = Phase::Done;
                }
            }
            Phase::Done => {}
        }
        (self.phase == Phase::Active).then_some(&self.current)
    }

    /// Consumes the stream, returning how many configurations it held.
    pub fn count_all(mut self) -> u64 {
        let mut n = 0;
        while self.advance().is_some() {
            n += 1;
        }
        n
    }
}

impl Iterator for Configurations {
    type Item = Occupation;

    fn next(&mut self) -> Option<Occupation> {
        self.advance().cloned()
    }
}

fn guard(what: &str, combined: u128, expected: Result<ExactCount>, limits: &EnumerationLimits) -> Result<()> {
    if combined > limits.max_combined as u128 {
        return Err(Error::CapExceeded(format!(
            "{what}: size parameter plus particle count is {combined}, cap is {}",
            limits.max_combined
        )));
    }
    let expected = expected?;
    if *expected.value() > BigUint::from(limits.budget) {
        return Err(Error::CapExceeded(format!(
            "{what}: {} configurations exceed the budget of {}",
            expected, limits.budget
        )));
    }
    Ok(())
}

/// Every way to place `particles` bosons in `modes` modes.
pub fn enumerate_bose(modes: u32, particles: u32, limits: &EnumerationLimits) -> Result<Configurations> {
    if modes == 0 {
        return Err(Error::InvalidSpec("bose systems need M ≥ 1 modes".into()));
    }
    let what = format!("bose M={modes} L={particles}");
    guard(
        &what,
        modes as u128 + particles as u128,
        dimension::bose_dimension(modes as u128, particles as u128),
        limits,
    )?;
    Ok(Configurations::start(Family::Bose { modes: modes as usize }, particles as usize))
}

/// Every 0/1 occupation of `modes` modes with weight `particles`.
pub fn enumerate_fermi(modes: u32, particles: u32, limits: &EnumerationLimits) -> Result<Configurations> {
    if modes == 0 {
        return Err(Error::InvalidSpec("fermi systems need M ≥ 1 modes".into()));
    }
    if particles > modes {
        return Err(Error::InvalidSpec(format!(
            "fermi systems require L ≤ M (L={particles}, M={modes})"
        )));
    }
    let what = format!("fermi M={modes} L={particles}");
    guard(
        &what,
        modes as u128 + particles as u128,
        dimension::fermi_dimension(modes as u128, particles as u128),
        limits,
    )?;
    Ok(Configurations::start(Family::Fermi { modes: modes as usize }, particles as usize))
}

/// Every choice of `particles` distinct sites out of `external`, each
/// carrying one of `internal` labels.
pub fn enumerate_distinguishable(
    external: u32,
    internal: u32,
    particles: u32,
    limits: &EnumerationLimits,
) -> Result<Configurations> {
    if external == 0 || internal == 0 {
        return Err(Error::InvalidSpec("distinguishable systems need K ≥ 1 and D ≥ 1".into()));
    }
    if particles > external {
        return Err(Error::InvalidSpec(format!(
            "distinguishable systems require L ≤ K (L={particles}, K={external})"
        )));
    }
    let what = format!("distinguishable K={external} D={internal} L={particles}");
    let width = external as usize * internal as usize;
    if width > MAX_MODE_VECTOR {
        return Err(Error::CapExceeded(format!("{what}: {width} single-particle states")));
    }
    guard(
        &what,
        external as u128 + particles as u128,
        dimension::distinguishable_dimension(external as u128, internal as u128, particles as u128),
        limits,
    )?;
    Ok(Configurations::start(
        Family::Distinguishable {
            sites: external as usize,
            labels: internal as usize,
        },
        particles as usize,
    ))
}

/// The counting formulas checked by [`verify_with`]. Tests swap in broken
/// ones to make sure mismatches are caught.
#[derive(Clone, Copy)]
pub struct FormulaSet {
    pub bose: fn(u128, u128) -> Result<ExactCount>,
    pub bose_variable: fn(u128, u128) -> Result<ExactCount>,
    pub fermi: fn(u128, u128) -> Result<ExactCount>,
    pub distinguishable: fn(u128, u128, u128) -> Result<ExactCount>,
}

impl Default for FormulaSet {
    fn default() -> Self {
        FormulaSet {
            bose: dimension::bose_dimension,
            bose_variable: dimension::bose_dimension_variable,
            fermi: dimension::fermi_dimension,
            distinguishable: dimension::distinguishable_dimension,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRow {
    pub family: &'static str,
    pub params: String,
    pub enumerated: u64,
    #[serde(serialize_with = "crate::report::serialize_big")]
    pub formula: BigUint,
    /// Bose rows also check the variable-count formula against the running
    /// total of enumerated sectors `0..=L`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variable: Option<VariableCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VariableCheck {
    pub enumerated: u64,
    #[serde(serialize_with = "crate::report::serialize_big")]
    pub formula: BigUint,
}

impl VerificationRow {
    pub fn matches(&self) -> bool {
        let fixed = BigUint::from(self.enumerated) == self.formula;
        let variable = self
            .variable
            .as_ref()
            .map_or(true, |v| BigUint::from(v.enumerated) == v.formula);
        fixed && variable
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub max_modes: u32,
    pub max_particles: u32,
    pub specs_checked: usize,
    pub configurations: u64,
    pub all_pass: bool,
    pub first_mismatch: Option<VerificationRow>,
    pub rows: Vec<VerificationRow>,
}

/// Enumerates every spec on the grid `M ≤ max_modes`, `L ≤ max_particles`
/// and compares stream lengths with the standard counting formulas.
///
/// The grid covers bose (fixed and variable count), fermi with `L ≤ M`, and
/// distinguishable with `K ≤ max_modes`, `D ≤ max_modes`, `K·D ≤ 64`.
pub fn verify_formulas(max_modes: u32, max_particles: u32, limits: &EnumerationLimits) -> Result<VerificationReport> {
    verify_with(&FormulaSet::default(), max_modes, max_particles, limits)
}

pub fn verify_with(
    formulas: &FormulaSet,
    max_modes: u32,
    max_particles: u32,
    limits: &EnumerationLimits,
) -> Result<VerificationReport> {
    let formula = |r: Result<ExactCount>| r.map(ExactCount::into_value);

    let bose: Vec<Vec<VerificationRow>> = (1..=max_modes)
        .into_par_iter()
        .map(|m| {
            let mut running = 0u64;
            (0..=max_particles)
                .map(|l| {
                    let enumerated = enumerate_bose(m, l, limits)?.count_all();
                    running += enumerated;
                    Ok(VerificationRow {
                        family: "bose",
                        params: format!("M={m} L={l}"),
                        enumerated,
                        formula: formula((formulas.bose)(m as u128, l as u128))?,
                        variable: Some(VariableCheck {
                            enumerated: running,
                            formula: formula((formulas.bose_variable)(m as u128, l as u128))?,
                        }),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let fermi_grid: Vec<(u32, u32)> = (1..=max_modes)
        .flat_map(|m| (0..=m.min(max_particles)).map(move |l| (m, l)))
        .collect();
    let fermi: Vec<VerificationRow> = fermi_grid
        .into_par_iter()
        .map(|(m, l)| {
            Ok(VerificationRow {
                family: "fermi",
                params: format!("M={m} L={l}"),
                enumerated: enumerate_fermi(m, l, limits)?.count_all(),
                formula: formula((formulas.fermi)(m as u128, l as u128))?,
                variable: None,
            })
        })
        .collect::<Result<_>>()?;

    let dist_grid: Vec<(u32, u32, u32)> = (1..=max_modes)
        .flat_map(|k| {
            (1..=max_modes)
                .filter(move |d| k * d <= 64)
                .flat_map(move |d| (0..=k.min(max_particles)).map(move |l| (k, d, l)))
        })
        .collect();
    let dist: Vec<VerificationRow> = dist_grid
        .into_par_iter()
        .map(|(k, d, l)| {
            Ok(VerificationRow {
                family: "distinguishable",
                params: format!("K={k} D={d} L={l}"),
                enumerated: enumerate_distinguishable(k, d, l, limits)?.count_all(),
                formula: formula((formulas.distinguishable)(k as u128, d as u128, l as u128))?,
                variable: None,
            })
        })
        .collect::<Result<_>>()?;

    let rows: Vec<VerificationRow> = bose.into_iter().flatten().chain(fermi).chain(dist).collect();
    let configurations = rows.iter().map(|r| r.enumerated).sum();
    let first_mismatch = rows.iter().find(|r| !r.matches()).cloned();
    Ok(VerificationReport {
        max_modes,
        max_particles,
        specs_checked: rows.len(),
        configurations,
        all_pass: first_mismatch.is_none(),
        first_mismatch,
        rows,
    })
}
