//! Exact and asymptotic Hilbert-space dimension counting.
//!
//! Exact counts are evaluated as multiplicative binomials over
//! arbitrary-precision integers, one factor at a time, so no factorial of a
//! large argument is ever formed. Each statistics kind also has two
//! floating-point views: the log-gamma route ([`SystemSpec::log2_lgamma`]),
//! which agrees with the exact count to rounding, and the leading-order
//! asymptotic form ([`SystemSpec::asymptotic_log2`]), which does not and is
//! never used where an exact answer is expected.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::special::log2_binomial;
use crate::{Error, Result, Scalar};

/// Exact counts whose base-2 logarithm would exceed this are refused rather
/// than evaluated; the log-gamma route still covers them.
pub const MAX_EXACT_BITS: f64 = (1u64 << 22) as f64;

/// A Hilbert-space dimension: an exact nonnegative integer together with
/// its base-2 logarithm.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactCount {
    value: BigUint,
    log2: f64,
}

impl ExactCount {
    pub fn new(value: BigUint) -> Self {
        let log2 = log2_big(&value);
        ExactCount { value, log2 }
    }

    pub fn one() -> Self {
        ExactCount::new(BigUint::one())
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn into_value(self) -> BigUint {
        self.value
    }

    /// Base-2 logarithm in bits.
    pub fn log2(&self) -> f64 {
        self.log2
    }

    /// True when the dimension is at least `2^qubits`.
    pub fn reaches(&self, qubits: f64) -> bool {
        meets_target(&self.value, qubits)
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl From<u64> for ExactCount {
    fn from(v: u64) -> Self {
        ExactCount::new(BigUint::from(v))
    }
}

/// Base-2 logarithm of a big integer, read off its leading 64 bits.
/// Returns `-inf` for zero.
pub fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return (v.to_u64().expect("fits in 64 bits") as f64).log2();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().expect("64 leading bits");
    (top as f64).log2() + shift as f64
}

/// Is `v ≥ 2^target`? Exact for integral targets, log-space otherwise.
pub fn meets_target(v: &BigUint, target: f64) -> bool {
    if target <= 0.0 {
        return !v.is_zero() || target == f64::NEG_INFINITY;
    }
    if target.fract() == 0.0 && target < 9.0e15 {
        // v ≥ 2^t  ⇔  v has at least t+1 bits
        return v.bits() as f64 >= target + 1.0;
    }
    log2_big(v) >= target
}

/// Exact binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: &BigUint, k: &BigUint) -> Result<BigUint> {
    if k > n {
        return Ok(BigUint::zero());
    }
    let complement = n - k;
    let k = if complement < *k { complement } else { k.clone() };
    if k.is_zero() {
        return Ok(BigUint::one());
    }
    let estimate = log2_binomial(n.to_f64().unwrap_or(f64::INFINITY), k.to_f64().unwrap_or(f64::INFINITY));
    if !(estimate <= MAX_EXACT_BITS) {
        return Err(Error::TooLarge(format!(
            "C({n}, {k}) has about {estimate:.3e} bits; exact evaluation refused"
        )));
    }
    let steps = k.to_u64().ok_or_else(|| Error::TooLarge(format!("C({n}, {k})")))?;
    let mut acc = BigUint::one();
    // After step i, acc = C(n - k + i, i), so every division is exact.
    match n.to_u64() {
        Some(n64) => {
            let base = n64 - steps;
            for i in 1..=steps {
                acc *= base + i;
                acc /= i;
            }
        }
        None => {
            let base = n - &k;
            for i in 1..=steps {
                acc *= &base + i;
                acc /= i;
            }
        }
    }
    Ok(acc)
}

fn big(v: u128) -> BigUint {
    BigUint::from(v)
}

/// `(M+L-1)! / ((M-1)! L!)`: `L` bosons in `M` modes.
pub fn bose_dimension(modes: u128, particles: u128) -> Result<ExactCount> {
    if modes == 0 {
        return Err(Error::InvalidSpec("bose systems need M ≥ 1 modes".into()));
    }
    let n = big(modes) + big(particles) - 1u32;
    binomial(&n, &big(particles)).map(ExactCount::new)
}

/// `(M+Lmax)! / (M! Lmax!)`: any number of bosons from 0 to `Lmax` in `M`
/// modes, counted as a fixed number in `M+1` modes.
pub fn bose_dimension_variable(modes: u128, max_particles: u128) -> Result<ExactCount> {
    if modes == 0 {
        return Err(Error::InvalidSpec("bose systems need M ≥ 1 modes".into()));
    }
    let n = big(modes) + big(max_particles);
    binomial(&n, &big(max_particles)).map(ExactCount::new)
}

/// `M! / (L! (M-L)!)`: `L` fermions in `M` modes.
pub fn fermi_dimension(modes: u128, particles: u128) -> Result<ExactCount> {
    if modes == 0 {
        return Err(Error::InvalidSpec("fermi systems need M ≥ 1 modes".into()));
    }
    if particles > modes {
        return Err(Error::InvalidSpec(format!(
            "fermi systems require L ≤ M (L={particles}, M={modes})"
        )));
    }
    binomial(&big(modes), &big(particles)).map(ExactCount::new)
}

/// `C(K, L) · D^L`: `L` particles, at most one per external state, each
/// carrying one of `D` internal states.
pub fn distinguishable_dimension(external: u128, internal: u128, particles: u128) -> Result<ExactCount> {
    if external == 0 {
        return Err(Error::InvalidSpec("distinguishable systems need K ≥ 1 external states".into()));
    }
    if internal == 0 {
        return Err(Error::InvalidSpec("distinguishable systems need D ≥ 1 internal states".into()));
    }
    if particles > external {
        return Err(Error::InvalidSpec(format!(
            "distinguishable systems require L ≤ K (L={particles}, K={external})"
        )));
    }
    let sites = binomial(&big(external), &big(particles))?;
    let labels = big_pow(internal, particles)?;
    Ok(ExactCount::new(sites * labels))
}

/// `⌊A/h⌋^T`: `T` independent degrees of freedom, each holding as many
/// orthogonal states as its action in units of `h` allows.
pub fn dof_dimension(dofs: u128, action_per_dof: f64) -> Result<ExactCount> {
    if !(action_per_dof >= 1.0) || !action_per_dof.is_finite() {
        return Err(Error::InvalidSpec(format!(
            "action per degree of freedom must be a finite A/h ≥ 1 (got {action_per_dof})"
        )));
    }
    let levels = action_per_dof.floor() as u128;
    big_pow(levels, dofs).map(ExactCount::new)
}

fn big_pow(base: u128, exponent: u128) -> Result<BigUint> {
    if base <= 1 || exponent == 0 {
        return Ok(if exponent == 0 { BigUint::one() } else { big(base) });
    }
    let bits = exponent as f64 * (base as f64).log2();
    let exp32 = u32::try_from(exponent).ok().filter(|_| bits <= MAX_EXACT_BITS);
    match exp32 {
        Some(e) => Ok(big(base).pow(e)),
        None => Err(Error::TooLarge(format!("{base}^{exponent} has about {bits:.3e} bits"))),
    }
}

/// Statistics kind plus the integer parameters it needs.
///
/// Serializes with a `kind` tag and the short parameter names (`M`, `L`,
/// ...); documents are parsed by [`crate::spec`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SystemSpec {
    /// `T` independent degrees of freedom, each spanning action `A` (in units of `h`).
    #[serde(rename = "dof")]
    DegreesOfFreedom {
        #[serde(rename = "T")]
        dofs: u128,
        #[serde(rename = "A")]
        action_per_dof: f64,
    },
    #[serde(rename = "bose")]
    BoseFixed {
        #[serde(rename = "M")]
        modes: u128,
        #[serde(rename = "L")]
        particles: u128,
    },
    BoseVariable {
        #[serde(rename = "M")]
        modes: u128,
        #[serde(rename = "Lmax")]
        max_particles: u128,
    },
    Fermi {
        #[serde(rename = "M")]
        modes: u128,
        #[serde(rename = "L")]
        particles: u128,
    },
    Distinguishable {
        #[serde(rename = "K")]
        external: u128,
        #[serde(rename = "D")]
        internal: u128,
        #[serde(rename = "L")]
        particles: u128,
    },
}

/// `log2 C(rest + k, k)`. The smaller side is picked in integer arithmetic
/// so that it survives the conversion to floating point.
fn log2_choose<F: Scalar>(rest: u128, k: u128) -> F {
    let small = rest.min(k);
    let large = rest.max(k);
    log2_binomial(F::of(large) + F::of(small), F::of(small))
}

impl SystemSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            SystemSpec::DegreesOfFreedom { .. } => "dof",
            SystemSpec::BoseFixed { .. } => "bose",
            SystemSpec::BoseVariable { .. } => "bose-variable",
            SystemSpec::Fermi { .. } => "fermi",
            SystemSpec::Distinguishable { .. } => "distinguishable",
        }
    }

    /// Checks the structural constraints, naming the offending field.
    pub fn validate(&self) -> Result<()> {
        match *self {
            SystemSpec::DegreesOfFreedom { action_per_dof, .. } => {
                if !(action_per_dof >= 1.0) || !action_per_dof.is_finite() {
                    return Err(Error::validation("A", "A/h ≥ 1"));
                }
            }
            SystemSpec::BoseFixed { modes, .. } | SystemSpec::BoseVariable { modes, .. } => {
                if modes == 0 {
                    return Err(Error::validation("M", "M ≥ 1"));
                }
            }
            SystemSpec::Fermi { modes, particles } => {
                if modes == 0 {
                    return Err(Error::validation("M", "M ≥ 1"));
                }
                if particles > modes {
                    return Err(Error::validation(
                        "L",
                        format!("L ≤ M (L={particles}, M={modes})"),
                    ));
                }
            }
            SystemSpec::Distinguishable { external, internal, particles } => {
                if external == 0 {
                    return Err(Error::validation("K", "K ≥ 1"));
                }
                if internal == 0 {
                    return Err(Error::validation("D", "D ≥ 1"));
                }
                if particles > external {
                    return Err(Error::validation(
                        "L",
                        format!("L ≤ K (L={particles}, K={external})"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Exact Hilbert-space dimension.
    pub fn dimension(&self) -> Result<ExactCount> {
        match *self {
            SystemSpec::DegreesOfFreedom { dofs, action_per_dof } => dof_dimension(dofs, action_per_dof),
            SystemSpec::BoseFixed { modes, particles } => bose_dimension(modes, particles),
            SystemSpec::BoseVariable { modes, max_particles } => bose_dimension_variable(modes, max_particles),
            SystemSpec::Fermi { modes, particles } => fermi_dimension(modes, particles),
            SystemSpec::Distinguishable { external, internal, particles } => {
                distinguishable_dimension(external, internal, particles)
            }
        }
    }

    /// `log2` of the exact dimension via log-gamma, without forming the count.
    pub fn log2_lgamma<F: Scalar>(&self) -> Result<F> {
        self.validate().map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let f = |v: u128| F::of(v);
        Ok(match *self {
            SystemSpec::DegreesOfFreedom { dofs, action_per_dof } => {
                f(dofs) * F::of(action_per_dof.floor()).log2()
            }
            SystemSpec::BoseFixed { modes, particles } => log2_choose(modes - 1, particles),
            SystemSpec::BoseVariable { modes, max_particles } => log2_choose(modes, max_particles),
            SystemSpec::Fermi { modes, particles } => log2_choose(modes - particles, particles),
            SystemSpec::Distinguishable { external, internal, particles } => {
                log2_choose::<F>(external - particles, particles) + f(particles) * f(internal).log2()
            }
        })
    }

    /// Leading-order asymptotic `log2` of the dimension, with `0·log 0 = 0`
    /// at the boundaries.
    ///
    /// Bose (fixed or variable count): `M log2(1+L/M) + L log2(1+M/L)`.
    /// Fermi: `(M-L) log2(1/(1-L/M)) + L log2(M/L)`.
    /// Distinguishable: `(K-L) log2(1/(1-L/K)) + L log2(KD/L)`.
    pub fn asymptotic_log2<F: Scalar>(&self) -> Result<F> {
        self.validate().map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let f = |v: u128| F::of(v);
        let nats = match *self {
            SystemSpec::DegreesOfFreedom { .. } => {
                return Err(Error::InvalidSpec(
                    "degrees-of-freedom systems have no asymptotic count form".into(),
                ))
            }
            SystemSpec::BoseFixed { modes, particles: l }
            | SystemSpec::BoseVariable { modes, max_particles: l } => {
                if l == 0 {
                    F::zero()
                } else {
                    let (m, l) = (f(modes), f(l));
                    m * (l / m).ln_1p() + l * (m / l).ln_1p()
                }
            }
            SystemSpec::Fermi { modes, particles } => sparse_filling_nats(f(modes), f(particles), F::one()),
            SystemSpec::Distinguishable { external, internal, particles } => {
                sparse_filling_nats(f(external), f(particles), f(internal))
            }
        };
        Ok(nats / F::LN_2())
    }
}

/// `(K-L) ln(1/(1-L/K)) + L ln(K·D/L)` with boundary terms set to zero.
fn sparse_filling_nats<F: Scalar>(sites: F, particles: F, internal: F) -> F {
    if particles == F::zero() {
        return F::zero();
    }
    let holes = sites - particles;
    let hole_term = if holes == F::zero() {
        F::zero()
    } else {
        -holes * (-(particles / sites)).ln_1p()
    };
    hole_term + particles * (sites * internal / particles).ln()
}

/// Entropy in bits of a bose field mode with mean occupation `mu > 0`:
/// `-μ log2 μ + (1+μ) log2(1+μ)`.
pub fn mode_entropy<F: Scalar>(mu: F) -> Result<F> {
    if !(mu > F::zero()) || !mu.is_finite() {
        return Err(Error::InvalidArgument(format!("mode occupation must be a finite μ > 0 (got {mu})")));
    }
    // Rearranged as μ log2(1 + 1/μ) + log2(1 + μ) to avoid cancellation at large μ.
    Ok((mu * mu.recip().ln_1p() + mu.ln_1p()) / F::LN_2())
}

/// Binary Shannon entropy in bits, `H(0) = H(1) = 0`.
pub fn binary_entropy<F: Scalar>(mu: F) -> Result<F> {
    if !(mu >= F::zero() && mu <= F::one()) {
        return Err(Error::InvalidArgument(format!("filling fraction must lie in [0, 1] (got {mu})")));
    }
    let particle = if mu == F::zero() { F::zero() } else { -mu * mu.ln() };
    let hole = if mu == F::one() {
        F::zero()
    } else {
        -(F::one() - mu) * (-mu).ln_1p()
    };
    Ok((particle + hole) / F::LN_2())
}

/// Bits per external state for distinguishable particles at filling `mu`
/// with `internal` states each: `H(μ) + μ log2 D`.
pub fn bits_per_external_state<F: Scalar>(mu: F, internal: u128) -> Result<F> {
    if internal == 0 {
        return Err(Error::InvalidArgument("internal-state count must be D ≥ 1".into()));
    }
    Ok(binary_entropy(mu)? + mu * F::of(internal).log2())
}

/// Equivalent qubit count of a dimension, `log2(dim)`.
pub fn equivalent_qubits(dim: &ExactCount) -> f64 {
    dim.log2()
}
