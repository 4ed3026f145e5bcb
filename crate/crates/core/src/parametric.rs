//! Infinite hoops on exact rationals, with seeded sampling.
//!
//! | family        | carrier   | `x * y`             | `x -> y`             | `s(x)`        |
//! |---------------|-----------|---------------------|----------------------|---------------|
//! | Goedel        | `[0, 1]`  | `min(x, y)`         | `1` if `x <= y`, `y` | `x`           |
//! | Lukasiewicz   | `[0, 1]`  | `max(0, x + y - 1)` | `min(1, 1 - x + y)`  | `(x + 1) / 2` |
//! | product       | `[0, 1]`  | `x y`               | `1` if `x <= y`, `y/x` | partial     |
//! | `Gamma(u)`    | `[0, u]`  | `max(0, x + y - u)` | `min(u, u - x + y)`  | `(x + u) / 2` |
//! | free exponent | `t >= 0`  | `t + s`             | `max(s - t, 0)`      | `t / 2`       |
//!
//! The free exponent hoop stores the exponent `t` of `a^t`; its unit is
//! `t = 0`, larger exponents are smaller elements, and it has no least
//! element. Square roots on the product family exist only at rational
//! squares, so that family carries no total root.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hoop::PropertyFlag;

pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Godel,
    Lukasiewicz,
    Product,
    Gamma(Rational),
    FreeExponent,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("{value} is outside the carrier of {model}")]
    OutOfCarrier { model: String, value: Rational },
    #[error("{op} is not available on {model}")]
    Unsupported { model: String, op: String },
    #[error("unknown model {0:?} (expected lukasiewicz, godel, product, gamma:U or free)")]
    UnknownModel(String),
    #[error("gamma parameter must be a positive rational, got {0:?}")]
    BadParameter(String),
}

/// A parametric hoop family instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricHoop {
    family: Family,
}

impl FromStr for ParametricHoop {
    type Err = ParamError;

    /// `lukasiewicz`, `godel`, `product`, `gamma:U` or `free`.
    fn from_str(s: &str) -> Result<Self, ParamError> {
        let family = match s {
            "godel" => Family::Godel,
            "lukasiewicz" => Family::Lukasiewicz,
            "product" => Family::Product,
            "free" => Family::FreeExponent,
            _ => match s.strip_prefix("gamma:") {
                Some(u) => {
                    let u: Rational = u.parse().map_err(|_| ParamError::BadParameter(u.into()))?;
                    if !u.is_positive() {
                        return Err(ParamError::BadParameter(u.to_string()));
                    }
                    Family::Gamma(u)
                }
                None => return Err(ParamError::UnknownModel(s.into())),
            },
        };
        Ok(ParametricHoop { family })
    }
}

impl fmt::Display for ParametricHoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Godel => write!(f, "godel"),
            Family::Lukasiewicz => write!(f, "lukasiewicz"),
            Family::Product => write!(f, "product"),
            Family::Gamma(u) => write!(f, "gamma:{u}"),
            Family::FreeExponent => write!(f, "free"),
        }
    }
}

fn max(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a
    } else {
        b
    }
}

fn min(a: Rational, b: Rational) -> Rational {
    if a <= b {
        a
    } else {
        b
    }
}

/// The greatest exponent a sampled free-exponent value may take.
const FREE_EXPONENT_RANGE: i64 = 4;

impl ParametricHoop {
    pub fn new(family: Family) -> Self {
        if let Family::Gamma(u) = &family {
            assert!(u.is_positive(), "gamma parameter must be positive");
        }
        ParametricHoop { family }
    }

    pub fn godel() -> Self {
        Self::new(Family::Godel)
    }

    pub fn lukasiewicz() -> Self {
        Self::new(Family::Lukasiewicz)
    }

    pub fn product() -> Self {
        Self::new(Family::Product)
    }

    pub fn gamma(u: Rational) -> Self {
        Self::new(Family::Gamma(u))
    }

    pub fn free_exponent() -> Self {
        Self::new(Family::FreeExponent)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// The top of the real-interval carriers.
    fn top(&self) -> Option<Rational> {
        match &self.family {
            Family::Gamma(u) => Some(u.clone()),
            Family::FreeExponent => None,
            _ => Some(Rational::one()),
        }
    }

    pub fn one(&self) -> Rational {
        self.top().unwrap_or_else(Rational::zero)
    }

    pub fn zero(&self) -> Option<Rational> {
        match self.family {
            Family::FreeExponent => None,
            _ => Some(Rational::zero()),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.zero().is_some()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        !x.is_negative() && self.top().is_none_or(|t| *x <= t)
    }

    fn check(&self, x: &Rational) -> Result<(), ParamError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(ParamError::OutOfCarrier {
                model: self.to_string(),
                value: x.clone(),
            })
        }
    }

    fn unsupported(&self, op: impl Into<String>) -> ParamError {
        ParamError::Unsupported {
            model: self.to_string(),
            op: op.into(),
        }
    }

    pub fn mul(&self, x: &Rational, y: &Rational) -> Result<Rational, ParamError> {
        self.check(x)?;
        self.check(y)?;
        Ok(match &self.family {
            Family::Godel => min(x.clone(), y.clone()),
            Family::Lukasiewicz => max(Rational::zero(), x + y - Rational::one()),
            Family::Product => x * y,
            Family::Gamma(u) => max(Rational::zero(), x + y - u),
            Family::FreeExponent => x + y,
        })
    }

    pub fn imp(&self, x: &Rational, y: &Rational) -> Result<Rational, ParamError> {
        self.check(x)?;
        self.check(y)?;
        Ok(match &self.family {
            Family::Godel if x <= y => Rational::one(),
            Family::Godel => y.clone(),
            Family::Lukasiewicz => min(Rational::one(), Rational::one() - x + y),
            Family::Product if x <= y => Rational::one(),
            Family::Product => y / x,
            Family::Gamma(u) => min(u.clone(), u - x + y),
            Family::FreeExponent => max(y - x, Rational::zero()),
        })
    }

    /// The hoop order `x <= y iff x -> y = 1`.
    pub fn leq(&self, x: &Rational, y: &Rational) -> Result<bool, ParamError> {
        Ok(self.imp(x, y)? == self.one())
    }

    /// Structural properties of the family, known in closed form.
    pub fn properties(&self) -> Vec<PropertyFlag> {
        use PropertyFlag::*;
        match self.family {
            Family::Lukasiewicz | Family::Gamma(_) => {
                vec![
                    Bounded,
                    JoinHoop,
                    Wajsberg,
                    Basic,
                    Dnp,
                    LocallyFinite,
                    Local,
                    Regular,
                ]
            }
            Family::Godel => vec![Bounded, JoinHoop, Basic, Idempotent, Local, Regular],
            Family::Product => vec![Bounded, JoinHoop, Basic, Local, Regular],
            Family::FreeExponent => vec![JoinHoop, Wajsberg, Basic, Cancellative],
        }
    }

    pub fn has_property(&self, flag: PropertyFlag) -> bool {
        self.properties().contains(&flag)
    }

    /// Whether `s(x * y) = s(x) * s(y)` holds on the whole carrier.
    pub fn sqrt_is_multiplicative(&self) -> bool {
        matches!(self.family, Family::Godel | Family::FreeExponent)
    }

    pub fn has_sqrt(&self) -> bool {
        !matches!(self.family, Family::Product)
    }

    /// Closed-form square root.
    pub fn sqrt(&self, x: &Rational) -> Result<Rational, ParamError> {
        self.check(x)?;
        let two = Rational::from_integer(BigInt::from(2));
        match &self.family {
            Family::Godel => Ok(x.clone()),
            Family::Lukasiewicz => Ok((x + Rational::one()) / two),
            Family::Gamma(u) => Ok((x + u) / two),
            Family::FreeExponent => Ok(x / two),
            Family::Product => Err(self.unsupported("s")),
        }
    }

    /// The square root of the product family where it stays rational.
    pub fn partial_sqrt(&self, x: &Rational) -> Result<Option<Rational>, ParamError> {
        self.check(x)?;
        if !matches!(self.family, Family::Product) {
            return self.sqrt(x).map(Some);
        }
        let (n, d) = (x.numer(), x.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        Ok((&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd)))
    }

    pub fn has_root(&self, degree: u32) -> bool {
        match degree {
            0 => false,
            1 => true,
            2 => self.has_sqrt(),
            _ => matches!(self.family, Family::Godel | Family::FreeExponent),
        }
    }

    /// Closed-form n-th root: identity on the Goedel family, `t / n` on the
    /// free exponent hoop, and the square root for degree 2.
    pub fn root(&self, degree: u32, x: &Rational) -> Result<Rational, ParamError> {
        self.check(x)?;
        if !self.has_root(degree) {
            return Err(self.unsupported(format!("r{degree}")));
        }
        match (&self.family, degree) {
            (_, 1) => Ok(x.clone()),
            (_, 2) => self.sqrt(x),
            (Family::Godel, _) => Ok(x.clone()),
            (Family::FreeExponent, n) => Ok(x / Rational::from_integer(BigInt::from(n))),
            _ => unreachable!("has_root rejects other families"),
        }
    }

    /// Draw one value of the dyadic pool for this carrier.
    fn draw(&self, rng: &mut ChaCha8Rng, depth: u32) -> Rational {
        let top = self
            .top()
            .unwrap_or_else(|| Rational::from_integer(BigInt::from(FREE_EXPONENT_RANGE)));
        // endpoints are drawn often enough to exercise the boundary cases
        match rng.random_range(0..8u32) {
            0 => return Rational::zero(),
            1 => return top,
            _ => {}
        }
        let d = rng.random_range(0..=depth);
        let scale = 1u64 << d;
        let k = rng.random_range(0..=scale);
        top * Rational::new(BigInt::from(k), BigInt::from(scale))
    }

    /// `count` assignments of `vars` values, deterministic in the plan.
    pub fn assignments(&self, plan: &SamplePlan, vars: usize) -> Vec<Vec<Rational>> {
        let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
        (0..plan.count)
            .map(|_| (0..vars).map(|_| self.draw(&mut rng, plan.depth)).collect())
            .collect()
    }

    /// Value of `s(0)` and the goodness and strictness of the square root.
    ///
    /// Without a least element, goodness is read as multiplicativity of `s`,
    /// checked on the sampled pairs of `plan`.
    pub fn classify(&self, plan: &SamplePlan) -> Result<ParametricClassification, ParamError> {
        let Some(zero) = self.zero() else {
            let s = |x: &Rational| self.sqrt(x);
            let mut good = true;
            for pair in self.assignments(plan, 2) {
                let (x, y) = (&pair[0], &pair[1]);
                if s(&self.mul(x, y)?)? != self.mul(&s(x)?, &s(y)?)? {
                    good = false;
                    break;
                }
            }
            return Ok(ParametricClassification {
                sqrt_zero: None,
                good,
                strict: None,
            });
        };
        let s0 = self
            .partial_sqrt(&zero)?
            .ok_or_else(|| self.unsupported("s"))?;
        let neg = self.imp(&s0, &zero)?;
        Ok(ParametricClassification {
            good: s0 == zero,
            strict: Some(s0 == neg),
            sqrt_zero: Some(s0),
        })
    }
}

/// Seeded sampling over the dyadic pool `k / 2^d`, `d <= depth`, scaled to
/// the carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SamplePlan {
    pub seed: u64,
    pub count: usize,
    pub depth: u32,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            seed: 0,
            count: 256,
            depth: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricClassification {
    /// `None` for unbounded models
    pub sqrt_zero: Option<Rational>,
    pub good: bool,
    /// `None` for unbounded models
    pub strict: Option<bool>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    #[test]
    fn closed_forms() {
        let l = ParametricHoop::lukasiewicz();
        assert_eq!(l.mul(&q(1, 2), &q(1, 2)).unwrap(), q(0, 1));
        assert_eq!(l.sqrt(&q(0, 1)).unwrap(), q(1, 2));
        let p = ParametricHoop::product();
        assert_eq!(p.imp(&q(3, 4), &q(1, 2)).unwrap(), q(2, 3));
        let g = ParametricHoop::gamma(q(1, 1));
        assert_eq!(g.sqrt(&q(0, 1)).unwrap(), q(1, 2));
        let f = ParametricHoop::free_exponent();
        assert_eq!(f.sqrt(&q(3, 2)).unwrap(), q(3, 4));
        assert_eq!(f.root(3, &q(3, 2)).unwrap(), q(1, 2));
        assert_eq!(f.one(), q(0, 1));
        assert!(f.leq(&q(2, 1), &q(1, 1)).unwrap());
    }

    #[test]
    fn errors_are_distinct() {
        let p = ParametricHoop::product();
        assert!(matches!(
            p.sqrt(&q(1, 2)),
            Err(ParamError::Unsupported { .. })
        ));
        assert!(matches!(
            p.sqrt(&q(3, 2)),
            Err(ParamError::OutOfCarrier { .. })
        ));
        assert_eq!(p.partial_sqrt(&q(4, 9)).unwrap(), Some(q(2, 3)));
        assert_eq!(p.partial_sqrt(&q(1, 2)).unwrap(), None);
        let l = ParametricHoop::lukasiewicz();
        assert!(matches!(
            l.root(3, &q(1, 2)),
            Err(ParamError::Unsupported { .. })
        ));
        assert!(matches!(
            l.mul(&q(-1, 2), &q(1, 2)),
            Err(ParamError::OutOfCarrier { .. })
        ));
    }

    #[test]
    fn model_names_round_trip() {
        for name in [
            "godel",
            "lukasiewicz",
            "product",
            "gamma:1",
            "gamma:3/2",
            "free",
        ] {
            assert_eq!(name.parse::<ParametricHoop>().unwrap().to_string(), name);
        }
        assert!("gamma:0".parse::<ParametricHoop>().is_err());
        assert!("reals".parse::<ParametricHoop>().is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_in_carrier() {
        let plan = SamplePlan {
            seed: 7,
            count: 64,
            depth: 10,
        };
        for m in ["godel", "gamma:3/2", "free"] {
            let m: ParametricHoop = m.parse().unwrap();
            let a = m.assignments(&plan, 3);
            assert_eq!(a, m.assignments(&plan, 3));
            assert!(a.iter().flatten().all(|x| m.contains(x)));
        }
    }

    #[test]
    fn classifications() {
        let plan = SamplePlan::default();
        let l = ParametricHoop::lukasiewicz().classify(&plan).unwrap();
        assert_eq!(
            (l.sqrt_zero, l.good, l.strict),
            (Some(q(1, 2)), false, Some(true))
        );
        let g = ParametricHoop::godel().classify(&plan).unwrap();
        assert!(g.good && g.strict == Some(false));
        let f = ParametricHoop::free_exponent().classify(&plan).unwrap();
        assert!(f.good && f.strict.is_none());
        assert!(ParametricHoop::product().classify(&plan).unwrap().good);
    }
}
