//! Symbolic growth classes of a resource as a function of the equivalent
//! qubit count `N`.
//!
//! The set is closed: constant, logarithmic, sublinear power, quasilinear
//! (`N / log P(N)` with `P` of polynomial degree `p`), linear, superlinear
//! power and exponential. Short string forms are `const`, `log`,
//! `poly:0.5`, `quasilinear:2`, `linear:1`, `poly:2`, `exp:2`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowthClass {
    Constant,
    Logarithmic,
    /// `N^d` with `0 < d < 1`.
    SublinearPoly(f64),
    /// `N / log P(N)` where `P` has polynomial degree `p ≥ 1`. Degree 0
    /// (constant `P`) is linear growth and is represented as [`GrowthClass::Linear`].
    Quasilinear(u32),
    /// `c·N` with `c > 0`.
    Linear(f64),
    /// `N^d` with `d > 1`.
    SuperlinearPoly(f64),
    /// `b^N` with `b > 1`.
    Exponential(f64),
}

impl GrowthClass {
    /// `N / log P(N)` with `deg P = degree`; degree 0 folds into `Linear(1)`.
    pub fn quasilinear(degree: u32) -> Self {
        if degree == 0 {
            GrowthClass::Linear(1.0)
        } else {
            GrowthClass::Quasilinear(degree)
        }
    }

    /// `N^exponent` placed in the matching power category.
    pub fn power(exponent: f64) -> Result<Self> {
        let class = if exponent == 0.0 {
            GrowthClass::Constant
        } else if exponent == 1.0 {
            GrowthClass::Linear(1.0)
        } else if exponent < 1.0 {
            GrowthClass::SublinearPoly(exponent)
        } else {
            GrowthClass::SuperlinearPoly(exponent)
        };
        class.validate()?;
        Ok(class)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::InvalidArgument(what));
        match *self {
            GrowthClass::SublinearPoly(d) if !(d > 0.0 && d < 1.0) => {
                bad(format!("sublinear exponent must lie in (0, 1), got {d}"))
            }
            GrowthClass::Quasilinear(0) => bad("quasilinear degree 0 is linear growth".into()),
            GrowthClass::Linear(c) if !(c > 0.0 && c.is_finite()) => {
                bad(format!("linear coefficient must be positive, got {c}"))
            }
            GrowthClass::SuperlinearPoly(d) if !(d > 1.0 && d.is_finite()) => {
                bad(format!("superlinear exponent must exceed 1, got {d}"))
            }
            GrowthClass::Exponential(b) if !(b > 1.0 && b.is_finite()) => {
                bad(format!("exponential base must exceed 1, got {b}"))
            }
            _ => Ok(()),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            GrowthClass::Constant => 0,
            GrowthClass::Logarithmic => 1,
            GrowthClass::SublinearPoly(_) => 2,
            GrowthClass::Quasilinear(_) => 3,
            GrowthClass::Linear(_) => 4,
            GrowthClass::SuperlinearPoly(_) => 5,
            GrowthClass::Exponential(_) => 6,
        }
    }

    /// At most linear growth: everything below superlinear powers.
    pub fn is_at_most_linear(&self) -> bool {
        self.rank() <= 4
    }
}

/// Eventual-domination comparison: `Greater` when `a` eventually outgrows
/// `b`, `Equal` when they agree up to a constant factor.
///
/// Linear coefficients and quasilinear degrees only change constant
/// factors (`N / log N^p = N / (p log N)`), so they compare equal.
pub fn dominates(a: &GrowthClass, b: &GrowthClass) -> Ordering {
    use GrowthClass::*;
    match a.rank().cmp(&b.rank()) {
        Ordering::Equal => match (a, b) {
            (SublinearPoly(x), SublinearPoly(y))
            | (SuperlinearPoly(x), SuperlinearPoly(y))
            | (Exponential(x), Exponential(y)) => x.total_cmp(y),
            _ => Ordering::Equal,
        },
        other => other,
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::Constant => f.write_str("const"),
            GrowthClass::Logarithmic => f.write_str("log"),
            GrowthClass::SublinearPoly(d) | GrowthClass::SuperlinearPoly(d) => write!(f, "poly:{d}"),
            GrowthClass::Quasilinear(p) => write!(f, "quasilinear:{p}"),
            GrowthClass::Linear(c) => write!(f, "linear:{c}"),
            GrowthClass::Exponential(b) => write!(f, "exp:{b}"),
        }
    }
}

impl FromStr for GrowthClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a.trim())),
            None => (s, None),
        };
        let number = |what: &str| -> Result<f64> {
            let raw = arg.ok_or_else(|| Error::Parse(format!("growth class `{s}` needs a {what}")))?;
            raw.parse::<f64>()
                .map_err(|_| Error::Parse(format!("growth class `{s}`: `{raw}` is not a number")))
        };
        let class = match head {
            "const" | "constant" if arg.is_none() => GrowthClass::Constant,
            "log" if arg.is_none() => GrowthClass::Logarithmic,
            "poly" => GrowthClass::power(number("exponent")?)?,
            "quasilinear" => {
                let p = number("polynomial degree")?;
                if p < 0.0 || p.fract() != 0.0 || p > u32::MAX as f64 {
                    return Err(Error::Parse(format!("quasilinear degree must be a nonnegative integer, got {p}")));
                }
                GrowthClass::quasilinear(p as u32)
            }
            "linear" => GrowthClass::Linear(if arg.is_some() { number("coefficient")? } else { 1.0 }),
            "exp" => GrowthClass::Exponential(number("base")?),
            _ => return Err(Error::Parse(format!("unknown growth class `{s}`"))),
        };
        class.validate()?;
        Ok(class)
    }
}

impl Serialize for GrowthClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GrowthClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GrowthClass::*;

    #[test]
    fn parses_short_forms() {
        assert_eq!("const".parse::<GrowthClass>().unwrap(), Constant);
        assert_eq!("log".parse::<GrowthClass>().unwrap(), Logarithmic);
        assert_eq!("poly:0.5".parse::<GrowthClass>().unwrap(), SublinearPoly(0.5));
        assert_eq!("quasilinear:2".parse::<GrowthClass>().unwrap(), Quasilinear(2));
        assert_eq!("linear:1".parse::<GrowthClass>().unwrap(), Linear(1.0));
        assert_eq!("poly:2".parse::<GrowthClass>().unwrap(), SuperlinearPoly(2.0));
        assert_eq!("exp:2".parse::<GrowthClass>().unwrap(), Exponential(2.0));
        assert_eq!("quasilinear:0".parse::<GrowthClass>().unwrap(), Linear(1.0));
        assert_eq!("poly:1".parse::<GrowthClass>().unwrap(), Linear(1.0));
    }

    #[test]
    fn rejects_out_of_range() {
        for bad in ["exp:1", "exp:0.5", "linear:0", "linear:-2", "poly:-1", "quasilinear:1.5", "cubic", "poly"] {
            assert!(bad.parse::<GrowthClass>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for c in [Constant, Logarithmic, SublinearPoly(0.25), Quasilinear(3), Linear(2.5), SuperlinearPoly(3.0), Exponential(1.5)] {
            assert_eq!(c.to_string().parse::<GrowthClass>().unwrap(), c);
        }
    }

    #[test]
    fn domination_examples() {
        assert_eq!(dominates(&Exponential(2.0), &SuperlinearPoly(5.0)), Ordering::Greater);
        assert_eq!(dominates(&Quasilinear(1), &Linear(3.0)), Ordering::Less);
        assert_eq!(dominates(&SublinearPoly(0.5), &Logarithmic), Ordering::Greater);
        assert_eq!(dominates(&Linear(1.0), &Linear(7.0)), Ordering::Equal);
        assert_eq!(dominates(&Exponential(3.0), &Exponential(2.0)), Ordering::Greater);
    }
}
