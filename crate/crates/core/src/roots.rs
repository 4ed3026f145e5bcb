//! Square roots and n-th roots of finite hoops.
//!
//! An n-th root is a self-map `r` with
//!
//! * `r(x)^n = x` for all `x`, and
//! * `y^n <= x` implies `y <= r(x)`.
//!
//! The second clause forces `r(x) = max { y : y^n <= x }`, so a root exists
//! exactly when every such set has a greatest element whose n-th power is `x`.
//! [`nth_root_solve`] uses that construction; [`sqrt_oracle`] tries every
//! self-map instead and is kept independent of it.

use serde::Serialize;
use thiserror::Error;

use crate::hoop::{Elem, FiniteHoop, Unbounded};

/// A certified n-th root on a particular hoop. Degree 2 is the square root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootMap {
    degree: u32,
    map: Vec<Elem>,
}

/// A certified square root (an n-th root of degree 2).
pub type SqrtMap = RootMap;

impl RootMap {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        self.map
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// `r(x * y) = r(x) * r(y)` for all `x, y`.
    pub fn is_multiplicative(&self, h: &FiniteHoop) -> bool {
        h.elements().all(|x| {
            h.elements()
                .all(|y| self.apply(h.mul(x, y)) == h.mul(self.apply(x), self.apply(y)))
        })
    }

    /// `r^k(x)`
    pub fn iterate(&self, x: Elem, k: u32) -> Elem {
        (0..k).fold(x, |acc, _| self.apply(acc))
    }
}

/// The clause of the root definition that a candidate map breaks.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum RootViolation {
    #[error("map has {found} entries for a carrier of size {expected}")]
    Shape { expected: usize, found: usize },
    #[error("r({x})^{degree} != {x}")]
    Power { degree: u32, x: Elem },
    #[error("{y}^{degree} <= {x} but not {y} <= r({x})")]
    Maximality { degree: u32, x: Elem, y: Elem },
}

/// Check both root clauses for `map` on `h`.
pub fn certify_root(h: &FiniteHoop, degree: u32, map: Vec<Elem>) -> Result<RootMap, RootViolation> {
    assert!(degree >= 1, "root degree must be positive");
    if map.len() != h.size() || map.iter().any(|&y| y >= h.size()) {
        return Err(RootViolation::Shape {
            expected: h.size(),
            found: map.len(),
        });
    }
    if let Some(x) = h.elements().find(|&x| h.pow(map[x], degree) != x) {
        return Err(RootViolation::Power { degree, x });
    }
    for x in h.elements() {
        if let Some(y) = h
            .elements()
            .find(|&y| h.leq(h.pow(y, degree), x) && !h.leq(y, map[x]))
        {
            return Err(RootViolation::Maximality { degree, x, y });
        }
    }
    Ok(RootMap { degree, map })
}

pub fn certify_sqrt(h: &FiniteHoop, map: Vec<Elem>) -> Result<SqrtMap, RootViolation> {
    certify_root(h, 2, map)
}

/// `max { y : y^degree <= x }`, if the set has a greatest element.
fn greatest_below(h: &FiniteHoop, degree: u32, x: Elem) -> Option<Elem> {
    let cands: Vec<Elem> = h
        .elements()
        .filter(|&y| h.leq(h.pow(y, degree), x))
        .collect();
    cands
        .iter()
        .copied()
        .find(|&g| cands.iter().all(|&c| h.leq(c, g)))
}

/// The n-th root of `h`, or `None` when it has none. Degree 1 always yields
/// the identity.
pub fn nth_root_solve(h: &FiniteHoop, degree: u32) -> Option<RootMap> {
    assert!(degree >= 1, "root degree must be positive");
    let mut map = Vec::with_capacity(h.size());
    for x in h.elements() {
        let g = greatest_below(h, degree, x)?;
        if h.pow(g, degree) != x {
            return None;
        }
        map.push(g);
    }
    Some(RootMap { degree, map })
}

pub fn sqrt_solve(h: &FiniteHoop) -> Option<SqrtMap> {
    nth_root_solve(h, 2)
}

pub const DEFAULT_ORACLE_BOUND: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("carrier of size {size} exceeds the oracle bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("several maps satisfy both root clauses: {0:?} and {1:?}")]
    NotUnique(Vec<Elem>, Vec<Elem>),
}

/// Exhaustive square-root search over all `n^n` self-maps.
pub fn sqrt_oracle(h: &FiniteHoop, bound: usize) -> Result<Option<SqrtMap>, OracleError> {
    let n = h.size();
    if n > bound {
        return Err(OracleError::BoundExceeded { size: n, bound });
    }
    let satisfies = |m: &[Elem]| {
        h.elements().all(|x| h.mul(m[x], m[x]) == x)
            && h.elements().all(|x| {
                h.elements()
                    .all(|y| !h.leq(h.mul(y, y), x) || h.leq(y, m[x]))
            })
    };
    let mut found: Option<Vec<Elem>> = None;
    for m in all_maps(n) {
        if satisfies(&m) {
            if let Some(prev) = found {
                return Err(OracleError::NotUnique(prev, m));
            }
            found = Some(m);
        }
    }
    Ok(found.map(|map| RootMap { degree: 2, map }))
}

/// Every self-map of `{0, .., n-1}`, in lexicographic order.
pub(crate) fn all_maps(n: usize) -> impl Iterator<Item = Vec<Elem>> {
    let mut next = Some(vec![0; n]);
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = n;
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < n {
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(cur)
    })
}

/// Classification of a bounded hoop carrying a square root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SqrtClassification {
    /// `s(0) = 0`
    pub good: bool,
    /// `s(0) = s(0)'`
    pub strict: bool,
    /// `s(x) * s(x) = x`
    pub sq1: bool,
    /// `s((y * y) \/ x) /\ y = y`, with the candidate join
    pub sq2: bool,
    /// `s(x') = s(x) -> s(0)`
    pub sq3: bool,
}

pub fn sq1_holds(h: &FiniteHoop, s: &[Elem]) -> bool {
    h.elements().all(|x| h.mul(s[x], s[x]) == x)
}

pub fn sq2_holds(h: &FiniteHoop, s: &[Elem]) -> bool {
    h.elements().all(|x| {
        h.elements()
            .all(|y| h.meet(s[h.join_candidate(h.mul(y, y), x)], y) == y)
    })
}

pub fn sq3_holds(h: &FiniteHoop, s: &[Elem]) -> Result<bool, Unbounded> {
    let zero = h.require_zero()?;
    Ok(h.elements()
        .all(|x| s[h.imp(x, zero)] == h.imp(s[x], s[zero])))
}

pub fn classify_sqrt(h: &FiniteHoop, s: &SqrtMap) -> Result<SqrtClassification, Unbounded> {
    let zero = h.require_zero()?;
    let s0 = s.apply(zero);
    Ok(SqrtClassification {
        good: s0 == zero,
        strict: s0 == h.neg(s0)?,
        sq1: sq1_holds(h, s.map()),
        sq2: sq2_holds(h, s.map()),
        sq3: sq3_holds(h, s.map())?,
    })
}

/// All self-maps satisfying the three equations sq1-sq3 (exhaustive).
pub fn variety_maps(h: &FiniteHoop) -> Result<Vec<Vec<Elem>>, Unbounded> {
    h.require_zero()?;
    Ok(all_maps(h.size())
        .filter(|m| sq1_holds(h, m) && sq3_holds(h, m).unwrap_or(false) && sq2_holds(h, m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn goedel_and_boolean_roots_are_identity() {
        for h in [
            fixtures::g3(),
            fixtures::b4(),
            fixtures::two(),
            fixtures::trivial(),
        ] {
            let s = sqrt_solve(&h).expect("idempotent hoops have square roots");
            assert!(s.is_identity());
        }
        assert!(nth_root_solve(&fixtures::g3(), 3).unwrap().is_identity());
    }

    #[test]
    fn lukasiewicz_chain_has_no_root() {
        let l3 = fixtures::l3();
        assert!(sqrt_solve(&l3).is_none());
        assert!(nth_root_solve(&l3, 2).is_none());
        assert_eq!(sqrt_oracle(&l3, DEFAULT_ORACLE_BOUND), Ok(None));
    }

    #[test]
    fn degree_one_is_identity() {
        for h in [fixtures::l3(), fixtures::hoop6()] {
            assert!(nth_root_solve(&h, 1).unwrap().is_identity());
        }
    }

    #[test]
    fn oracle_agrees_on_fixtures() {
        for h in [
            fixtures::two(),
            fixtures::g3(),
            fixtures::l3(),
            fixtures::b4(),
        ] {
            assert_eq!(sqrt_oracle(&h, 5).unwrap(), sqrt_solve(&h));
        }
        assert!(matches!(
            sqrt_oracle(&fixtures::hoop6(), 5),
            Err(OracleError::BoundExceeded { size: 6, bound: 5 })
        ));
    }

    #[test]
    fn certification_rejects_bad_maps() {
        let b4 = fixtures::b4();
        assert_eq!(
            certify_sqrt(&b4, vec![0, 1, 2, 2]),
            Err(RootViolation::Power { degree: 2, x: 3 })
        );
        assert!(certify_sqrt(&b4, vec![0, 2, 1, 3]).is_err());
        assert!(certify_sqrt(&b4, vec![0, 1, 2, 3]).is_ok());
    }

    #[test]
    fn classification_of_boolean_fixtures() {
        let b4 = fixtures::b4();
        let c = classify_sqrt(&b4, &sqrt_solve(&b4).unwrap()).unwrap();
        assert!(c.good && !c.strict && c.sq1 && c.sq2 && c.sq3);
        let two = fixtures::two();
        assert!(
            classify_sqrt(&two, &sqrt_solve(&two).unwrap())
                .unwrap()
                .good
        );
        let t = fixtures::trivial();
        let c = classify_sqrt(&t, &sqrt_solve(&t).unwrap()).unwrap();
        assert!(c.good && c.strict);
    }

    #[test]
    fn all_maps_counts() {
        assert_eq!(all_maps(3).count(), 27);
        assert_eq!(all_maps(1).collect::<Vec<_>>(), vec![vec![0]]);
    }
}
