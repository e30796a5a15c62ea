//! Worked physical examples: a hydrogen-atom register, NMR pseudopure
//! state preparation, a classical-wave beam, phase-space distances for
//! decoherence, and control-parameter counts for a unary register.
//!
//! Atomic quantities are kept in hartree atomic units and converted to SI
//! only when a report is assembled.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::dimension::{log2_big, meets_target, MAX_EXACT_BITS};
use crate::report::Report;
use crate::{Error, Result, Scalar};

/// Overridable physical constants (SI). Defaults are the values used for the
/// headline numbers; every report echoes the table it was computed with.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, bound(deserialize = "F: Scalar + Deserialize<'de>"))]
pub struct PhysicalConstants<F> {
    /// `a₀`, m.
    pub bohr_radius: F,
    /// `e²/a₀`, J.
    pub hartree: F,
    /// `ħ/a₀`, kg·m/s.
    pub hbar_over_a0: F,
    /// m.
    pub sun_diameter: F,
    /// m.
    pub universe_diameter: F,
    /// Default optical wavelength, m.
    pub wavelength: F,
    /// Default NMR spin polarization.
    pub polarization: F,
    /// Default number of molecules in an NMR sample.
    pub molecule_count: F,
}

impl<F: Scalar> Default for PhysicalConstants<F> {
    fn default() -> Self {
        let a0 = 5.29177e-11;
        PhysicalConstants {
            bohr_radius: F::of(a0),
            hartree: F::of(4.35974e-18),
            hbar_over_a0: F::of(1.054571817e-34 / a0),
            sun_diameter: F::of(1.3927e9),
            universe_diameter: F::of(8.8e26),
            wavelength: F::of(5e-7),
            polarization: F::of(2e-5),
            molecule_count: F::of(1e20),
        }
    }
}

impl<F: Scalar> PhysicalConstants<F> {
    fn entries(&self) -> [(&'static str, F, &'static str); 8] {
        [
            ("bohr_radius", self.bohr_radius, "m"),
            ("hartree", self.hartree, "J"),
            ("hbar_over_a0", self.hbar_over_a0, "kg m/s"),
            ("sun_diameter", self.sun_diameter, "m"),
            ("universe_diameter", self.universe_diameter, "m"),
            ("wavelength", self.wavelength, "m"),
            ("polarization", self.polarization, "dimensionless"),
            ("molecule_count", self.molecule_count, "dimensionless"),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v, _) in self.entries() {
            if !(v > F::zero() && v.is_finite()) {
                return Err(Error::validation(name, format!("must be finite and > 0 (got {v})")));
            }
        }
        if self.polarization > F::one() {
            return Err(Error::validation("polarization", "must not exceed 1"));
        }
        Ok(())
    }

    /// Parses a JSON object of overrides; missing keys keep their defaults.
    pub fn from_json(text: &str) -> Result<Self>
    where
        F: for<'de> Deserialize<'de>,
    {
        let c: Self = serde_json::from_str(text).map_err(|e| Error::Parse(format!("constants: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    fn echo(&self, mut report: Report) -> Report {
        for (name, v, unit) in self.entries() {
            report.constants.push(crate::report::Quantity::new(name, v.to_f64().unwrap_or(f64::NAN), unit));
        }
        report
    }
}

/// A bound hydrogen level with principal quantum number `n`, spin ignored.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HydrogenState<F> {
    pub n: u128,
    /// `E_n`, hartree.
    pub energy: F,
    /// `r_n`, Bohr radii.
    pub radius_a0: F,
    /// `r_n`, km.
    pub radius_km: F,
    /// `p_n`, units of `ħ/a₀`.
    pub momentum: F,
    /// Number of orbital states with principal quantum number at most `n`.
    #[serde(serialize_with = "crate::report::serialize_big")]
    pub cumulative_dimension: BigUint,
}

/// `Σ_{k=1}^{n} k² = n(n+1)(2n+1)/6`.
pub fn cumulative_hydrogen_dimension(n: &BigUint) -> BigUint {
    n * (n + 1u32) * (n * 2u32 + 1u32) / 6u32
}

pub fn hydrogen_state<F: Scalar>(n: u128, constants: &PhysicalConstants<F>) -> Result<HydrogenState<F>> {
    if n < 1 {
        return Err(Error::InvalidArgument("principal quantum number must be ≥ 1".into()));
    }
    let nf = F::of(n);
    let radius_a0 = nf * nf;
    Ok(HydrogenState {
        n,
        energy: -(F::of(2.0) * nf * nf).recip(),
        radius_a0,
        radius_km: radius_a0 * constants.bohr_radius / F::of(1000.0),
        momentum: nf.recip(),
        cumulative_dimension: cumulative_hydrogen_dimension(&BigUint::from(n)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HydrogenConvention {
    /// `r ∼ 2^(2N/3) a₀`, dropping the factor 3 in `n³/3 ∼ 2^N`.
    Asymptotic,
    /// Smallest `n` whose cumulative state count reaches `2^N`; `r = n² a₀`.
    ExactCount,
}

impl std::str::FromStr for HydrogenConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "asymptotic" => Ok(HydrogenConvention::Asymptotic),
            "exact" | "exact-count" => Ok(HydrogenConvention::ExactCount),
            other => Err(Error::Parse(format!("unknown hydrogen convention `{other}`"))),
        }
    }
}

/// Largest `N` accepted by the exact-count hydrogen inversion.
pub const MAX_HYDROGEN_EXACT_QUBITS: f64 = 10_000.0;

/// Smallest `n` with `n(n+1)(2n+1)/6 ≥ 2^N`.
pub fn hydrogen_levels_for_qubits(qubits: f64) -> Result<BigUint> {
    if !(qubits >= 0.0 && qubits <= MAX_HYDROGEN_EXACT_QUBITS) {
        return Err(Error::InvalidArgument(format!(
            "exact hydrogen inversion needs 0 ≤ N ≤ {MAX_HYDROGEN_EXACT_QUBITS} (got {qubits})"
        )));
    }
    let reaches = |n: &BigUint| meets_target(&cumulative_hydrogen_dimension(n), qubits);
    // n³/3 < Σk² ≤ n³, so the answer lies in [2^((N-2)/3), 2^((N+2)/3) + 1].
    let mut lo = BigUint::one();
    let mut hi = BigUint::one() << ((qubits as u64 + 3) / 3 + 1);
    if reaches(&lo) {
        return Ok(lo);
    }
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1u32;
        if reaches(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Orbit size needed for a hydrogen atom to supply `2^N` dimensions.
pub fn hydrogen_for_qubits<F: Scalar>(
    qubits: F,
    convention: HydrogenConvention,
    constants: &PhysicalConstants<F>,
) -> Result<HydrogenRadius<F>> {
    if !(qubits >= F::zero() && qubits.is_finite()) {
        return Err(Error::InvalidArgument(format!("N must be finite and ≥ 0 (got {qubits})")));
    }
    let (levels, radius_a0) = match convention {
        HydrogenConvention::Asymptotic => (None, (F::of(2.0) * qubits / F::of(3.0)).exp2()),
        HydrogenConvention::ExactCount => {
            let n = hydrogen_levels_for_qubits(qubits.to_f64().unwrap_or(f64::NAN))?;
            let nf = n.to_f64().unwrap_or(f64::INFINITY);
            let r = F::of(nf * nf);
            (Some(n), r)
        }
    };
    let radius_m = radius_a0 * constants.bohr_radius;
    Ok(HydrogenRadius {
        qubits,
        convention,
        levels,
        radius_a0,
        radius_km: radius_m / F::of(1000.0),
        sun_diameters: radius_m / constants.sun_diameter,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HydrogenRadius<F> {
    pub qubits: F,
    pub convention: HydrogenConvention,
    /// Principal quantum number (exact-count convention only).
    pub levels: Option<BigUint>,
    pub radius_a0: F,
    pub radius_km: F,
    pub sun_diameters: F,
}

impl<F: Scalar> HydrogenRadius<F> {
    pub fn report(&self, constants: &PhysicalConstants<F>) -> Report {
        let f = |v: F| v.to_f64().unwrap_or(f64::NAN);
        let (relation, note) = match self.convention {
            HydrogenConvention::Asymptotic => (
                "n³ ∼ 2^N, r_n = n² a₀ ∼ 2^(2N/3) a₀",
                "asymptotic convention: drops the 1/3 in Σk² ∼ n³/3",
            ),
            HydrogenConvention::ExactCount => (
                "smallest n with n(n+1)(2n+1)/6 ≥ 2^N, r_n = n² a₀",
                "exact count of orbital states; radius exceeds the asymptotic convention by ≈ 3^(2/3)",
            ),
        };
        let mut r = Report::new("hydrogen", relation)
            .input("N", f(self.qubits), "qubits")
            .input("convention", if self.levels.is_some() { "exact-count" } else { "asymptotic" }, "dimensionless");
        if let Some(n) = &self.levels {
            r = r.output("n", n.clone(), "dimensionless");
        }
        let r = r
            .output("radius", f(self.radius_a0), "a0")
            .output("radius_km", f(self.radius_km), "km")
            .output("radius_over_sun_diameter", f(self.sun_diameters), "dimensionless")
            .note(note)
            .note("spin and continuum states ignored");
        constants.echo(r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NmrPseudopure<F> {
    pub alpha: F,
    pub qubits: u32,
    /// Mixing parameter `ε = αN/2^N`.
    pub epsilon: F,
    /// Repetitions (or molecules) for a fixed signal-to-noise, `1/ε²`.
    pub repetitions: F,
}

fn check_polarization<F: Scalar>(alpha: F) -> Result<()> {
    if alpha > F::zero() && alpha <= F::one() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("polarization must lie in (0, 1] (got {alpha})")))
    }
}

pub fn nmr_pseudopure<F: Scalar>(alpha: F, qubits: u32) -> Result<NmrPseudopure<F>> {
    check_polarization(alpha)?;
    if qubits < 1 {
        return Err(Error::InvalidArgument("need at least one qubit".into()));
    }
    let epsilon = alpha * F::of(qubits) * F::of(-(qubits as f64)).exp2();
    Ok(NmrPseudopure {
        alpha,
        qubits,
        epsilon,
        repetitions: (epsilon * epsilon).recip(),
    })
}

/// Largest `N` whose pseudopure signal needs at most `budget` molecules.
///
/// `2^(2N)/(αN)²` is equal at `N = 1, 2` and increasing afterwards, so the
/// scan stops at the first infeasible `N`. Returns 0 when even `N = 1` is
/// out of reach.
pub fn nmr_max_qubits<F: Scalar>(alpha: F, budget: F) -> Result<u32> {
    check_polarization(alpha)?;
    if !(budget >= F::one() && budget.is_finite()) {
        return Err(Error::InvalidArgument(format!("molecule budget must be finite and ≥ 1 (got {budget})")));
    }
    let mut best = 0;
    for n in 1.. {
        let reps = nmr_pseudopure(alpha, n)?.repetitions;
        if !(reps <= budget) {
            break;
        }
        best = n;
    }
    Ok(best)
}

/// Initial qubits per distilled pure qubit, `1/α²`.
pub fn distillation_overhead<F: Scalar>(alpha: F) -> Result<F> {
    check_polarization(alpha)?;
    Ok((alpha * alpha).recip())
}

pub fn nmr_report<F: Scalar>(alpha: F, qubits: u32, constants: &PhysicalConstants<F>) -> Result<Report> {
    let p = nmr_pseudopure(alpha, qubits)?;
    let max = nmr_max_qubits(alpha, constants.molecule_count)?;
    let f = |v: F| v.to_f64().unwrap_or(f64::NAN);
    let r = Report::new("nmr", "ε = αN/2^N, repetitions = 1/ε² = 2^(2N)/(αN)²")
        .input("alpha", f(alpha), "dimensionless")
        .input("N", qubits, "qubits")
        .input("molecule_budget", f(constants.molecule_count), "molecules")
        .output("epsilon", f(p.epsilon), "dimensionless")
        .output("repetitions", f(p.repetitions), "molecules")
        .output("max_qubits", max, "qubits")
        .output("distillation_overhead", f(distillation_overhead(alpha)?), "qubits per pure qubit")
        .note("max_qubits: largest N with 1/ε² within the molecule budget");
    Ok(constants.echo(r))
}

/// Beam waist `w = λ·2^(N/2)` for `2^N` diffraction-limited transverse modes,
/// modeled as `(w/λ)²` modes. Computed as `λ·2^⌊N/2⌋` times `√2` for odd
/// `N`, so adding two qubits doubles the waist exactly.
pub fn classical_wave_waist<F: Scalar>(qubits: u32, wavelength: F) -> Result<F> {
    if !(wavelength > F::zero() && wavelength.is_finite()) {
        return Err(Error::InvalidArgument(format!("wavelength must be finite and > 0 (got {wavelength})")));
    }
    let mut w = wavelength * F::of((qubits / 2) as f64).exp2();
    if qubits % 2 == 1 {
        w = w * F::SQRT_2();
    }
    Ok(w)
}

/// Smallest `N` with [`classical_wave_waist`] at least `width`.
pub fn classical_wave_min_qubits<F: Scalar>(width: F, wavelength: F) -> Result<u32> {
    classical_wave_waist(0, wavelength)?;
    if !(width > F::zero() && width.is_finite()) {
        return Err(Error::InvalidArgument(format!("width must be finite and > 0 (got {width})")));
    }
    let guess = (F::of(2.0) * (width / wavelength).log2()).ceil().max(F::zero());
    let mut n = guess.to_u32().unwrap_or(u32::MAX);
    while n > 0 && classical_wave_waist(n - 1, wavelength)? >= width {
        n -= 1;
    }
    while classical_wave_waist(n, wavelength)? < width {
        n += 1;
    }
    Ok(n)
}

pub fn classical_wave_report<F: Scalar>(qubits: u32, constants: &PhysicalConstants<F>) -> Result<Report> {
    let f = |v: F| v.to_f64().unwrap_or(f64::NAN);
    let waist = classical_wave_waist(qubits, constants.wavelength)?;
    let min_n = classical_wave_min_qubits(constants.universe_diameter, constants.wavelength)?;
    let r = Report::new("classical-wave", "2^N transverse modes = (w/λ)², w = λ·2^(N/2)")
        .input("N", qubits, "qubits")
        .input("lambda", f(constants.wavelength), "m")
        .output("waist", f(waist), "m")
        .output("waist_over_universe_diameter", f(waist / constants.universe_diameter), "dimensionless")
        .output("min_qubits_for_universe_waist", min_n, "qubits")
        .note("model: one diffraction-limited mode per λ² of beam cross-section, calibrated to the ~220-qubit endpoint");
    Ok(constants.echo(r))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecoherenceComparison<F> {
    pub qubits: u32,
    /// Phase-space distance between extreme states of `N` unit-cell qubits.
    pub compact_distance: F,
    /// The same for a single unary degree of freedom with `2^N` levels.
    pub unary_distance: F,
    /// Ratio of decoherence rates, `(unary/compact)² = 2^N/(2N)`.
    pub rate_ratio: F,
}

pub fn decoherence_comparison<F: Scalar>(qubits: u32) -> Result<DecoherenceComparison<F>> {
    if qubits < 1 {
        return Err(Error::InvalidArgument("need at least one qubit".into()));
    }
    let n = F::of(qubits);
    let two = F::of(2.0);
    Ok(DecoherenceComparison {
        qubits,
        compact_distance: (two * n).sqrt(),
        unary_distance: (n / two).exp2(),
        rate_ratio: n.exp2() / (two * n),
    })
}

impl<F: Scalar> DecoherenceComparison<F> {
    pub fn report(&self) -> Report {
        let f = |v: F| v.to_f64().unwrap_or(f64::NAN);
        Report::new("decoherence", "rate ∝ distance²: compact √(2N), unary 2^(N/2), ratio 2^N/(2N)")
            .input("N", self.qubits, "qubits")
            .output("compact_distance", f(self.compact_distance), "unit cells")
            .output("unary_distance", f(self.unary_distance), "unit cells")
            .output("rate_ratio", f(self.rate_ratio), "dimensionless")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnaryControl {
    pub qubits: u32,
    #[serde(serialize_with = "crate::report::serialize_big")]
    pub levels: BigUint,
    #[serde(serialize_with = "crate::report::serialize_big")]
    pub pairwise_couplings: BigUint,
    #[serde(serialize_with = "crate::report::serialize_big")]
    pub total: BigUint,
}

/// Controls for a `2^N`-level unary register: one per level plus one per
/// pair of levels.
pub fn unary_control_parameters(qubits: u32) -> Result<UnaryControl> {
    if qubits < 1 || 2.0 * qubits as f64 > MAX_EXACT_BITS {
        return Err(Error::InvalidArgument(format!("N must lie in 1..={} (got {qubits})", MAX_EXACT_BITS as u64 / 2)));
    }
    let levels = BigUint::one() << qubits;
    let pairwise_couplings = &levels * (&levels - 1u32) >> 1u32;
    let total = &levels + &pairwise_couplings;
    Ok(UnaryControl {
        qubits,
        levels,
        pairwise_couplings,
        total,
    })
}

impl UnaryControl {
    /// `total / 2^(2N)`, which tends to 1/2.
    pub fn fraction_of_4_pow_n(&self) -> f64 {
        (log2_big(&self.total) - 2.0 * self.qubits as f64).exp2()
    }

    pub fn report(&self) -> Report {
        Report::new("unary-control", "2^N levels + 2^N(2^N-1)/2 couplings = 2^(N-1)(2^N+1)")
            .input("N", self.qubits, "qubits")
            .output("levels", self.levels.clone(), "dimensionless")
            .output("pairwise_couplings", self.pairwise_couplings.clone(), "dimensionless")
            .output("total", self.total.clone(), "dimensionless")
            .output("total_over_2^2N", self.fraction_of_4_pow_n(), "dimensionless")
            .note("counts couplings, not real parameters (a phase per coupling would double the pair count)")
    }
}
