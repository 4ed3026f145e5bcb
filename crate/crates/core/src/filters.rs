//! Filters, congruences and quotients, distinguished subsets, and the
//! behaviour of square roots on quotients.
//!
//! A filter is a subset containing 1, closed under `*`, and upward closed.
//! Each filter `F` induces the congruence `x ~ y iff x -> y, y -> x in F`
//! and the quotient hoop `H/F`.

use serde::Serialize;
use thiserror::Error;

use crate::elemset::ElemSet;
use crate::hoop::{Elem, FiniteHoop, OpTable, Unbounded};
use crate::morphisms;
use crate::roots::{certify_root, certify_sqrt, RootMap, RootViolation, SqrtMap};

/// A certified filter of some host hoop.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filter {
    members: ElemSet,
}

impl Filter {
    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        !self.members.is_full()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.members.to_vec()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("subset is not a filter")]
    NotAFilter,
    #[error("filter is not proper")]
    NotProper,
    #[error("prime filters are only defined on join-hoops")]
    NotJoinHoop,
    #[error("element {0} is not idempotent")]
    NotIdempotent(Elem),
    #[error("square root is not multiplicative at ({0}, {1})")]
    NotMultiplicative(Elem, Elem),
    #[error(transparent)]
    Unbounded(#[from] Unbounded),
    #[error("root certification failed: {0}")]
    Root(#[from] RootViolation),
    #[error("quotient construction inconsistent: {0}")]
    Inconsistent(String),
}

pub fn is_filter(h: &FiniteHoop, set: &ElemSet) -> bool {
    set.contains(h.one())
        && set
            .iter()
            .all(|x| set.iter().all(|y| set.contains(h.mul(x, y))))
        && set
            .iter()
            .all(|x| h.elements().all(|y| !h.leq(x, y) || set.contains(y)))
}

/// Certify `set` as a filter of `h`.
pub fn filter(h: &FiniteHoop, set: ElemSet) -> Result<Filter, FilterError> {
    if set.universe() == h.size() && is_filter(h, &set) {
        Ok(Filter { members: set })
    } else {
        Err(FilterError::NotAFilter)
    }
}

/// All upward closed sets containing 1, in bitset order.
pub fn up_sets(h: &FiniteHoop) -> Vec<ElemSet> {
    let n = h.size();
    // a linear extension read from the top: x < y implies |up(y)| < |up(x)|
    let mut order: Vec<Elem> = h.elements().collect();
    let up: Vec<usize> = h.elements().map(|x| h.up_set(x).len()).collect();
    order.sort_by_key(|&x| (up[x], x));

    fn walk(h: &FiniteHoop, order: &[Elem], i: usize, cur: &mut ElemSet, out: &mut Vec<ElemSet>) {
        let Some(&x) = order.get(i) else {
            out.push(cur.clone());
            return;
        };
        let above_in = h.elements().all(|y| !h.lt(x, y) || cur.contains(y));
        if above_in {
            cur.insert(x);
            walk(h, order, i + 1, cur, out);
            cur.remove(x);
        }
        if x != h.one() {
            walk(h, order, i + 1, cur, out);
        }
    }

    let mut out = Vec::new();
    walk(h, &order, 0, &mut ElemSet::empty(n), &mut out);
    out.sort();
    out
}

/// Every filter of `h`: the up-sets that are closed under `*`.
pub fn all_filters(h: &FiniteHoop) -> Vec<Filter> {
    up_sets(h)
        .into_iter()
        .filter(|s| s.iter().all(|x| s.iter().all(|y| s.contains(h.mul(x, y)))))
        .map(|members| Filter { members })
        .collect()
}

/// The least filter containing `gens` (and 1).
pub fn generated_filter(h: &FiniteHoop, gens: &ElemSet) -> Filter {
    let mut cur = gens.clone();
    cur.insert(h.one());
    loop {
        let mut next = cur.clone();
        for x in cur.iter() {
            for y in cur.iter() {
                next.insert(h.mul(x, y));
            }
            for y in h.elements() {
                if h.leq(x, y) {
                    next.insert(y);
                }
            }
        }
        if next == cur {
            return Filter { members: cur };
        }
        cur = next;
    }
}

pub fn principal_filter(h: &FiniteHoop, x: Elem) -> Filter {
    generated_filter(h, &ElemSet::from_elems(h.size(), [x]))
}

/// Prime test; only defined for proper filters of join-hoops.
pub fn is_prime(h: &FiniteHoop, f: &Filter) -> Result<bool, FilterError> {
    if !h.is_join_hoop() {
        return Err(FilterError::NotJoinHoop);
    }
    if !f.is_proper() {
        return Err(FilterError::NotProper);
    }
    Ok(h.elements().all(|x| {
        h.elements()
            .all(|y| !f.contains(h.join_candidate(x, y)) || f.contains(x) || f.contains(y))
    }))
}

/// A proper filter with no filter strictly between it and the carrier.
pub fn is_maximal(h: &FiniteHoop, f: &Filter) -> Result<bool, FilterError> {
    if !f.is_proper() {
        return Err(FilterError::NotProper);
    }
    Ok(!all_filters(h)
        .iter()
        .any(|g| g.is_proper() && g.members != f.members && f.members.is_subset(&g.members)))
}

/// `H/F` with its projection.
#[derive(Clone, Debug)]
pub struct QuotientHoop {
    pub hoop: FiniteHoop,
    pub projection: Vec<Elem>,
    pub classes: Vec<Vec<Elem>>,
}

impl QuotientHoop {
    pub fn class_of(&self, x: Elem) -> Elem {
        self.projection[x]
    }
}

pub fn congruent(h: &FiniteHoop, f: &Filter, x: Elem, y: Elem) -> bool {
    f.contains(h.imp(x, y)) && f.contains(h.imp(y, x))
}

/// Quotient by the congruence of `f`. Classes are ordered by their least
/// member; each class is labelled by that member.
pub fn quotient(h: &FiniteHoop, f: &Filter) -> Result<QuotientHoop, FilterError> {
    let n = h.size();
    let mut projection = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for x in h.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let class: Vec<Elem> = h.elements().filter(|&y| congruent(h, f, x, y)).collect();
        for &y in &class {
            if projection[y] != usize::MAX {
                return Err(FilterError::Inconsistent(format!(
                    "element {y} lies in two classes"
                )));
            }
            projection[y] = c;
        }
        classes.push(class);
    }
    let m = classes.len();
    let induced = |op: &dyn Fn(Elem, Elem) -> Elem, name: &str| -> Result<OpTable, FilterError> {
        let mut rows = vec![vec![0; m]; m];
        for (i, ci) in classes.iter().enumerate() {
            for (j, cj) in classes.iter().enumerate() {
                let v = projection[op(ci[0], cj[0])];
                for &x in ci {
                    for &y in cj {
                        if projection[op(x, y)] != v {
                            return Err(FilterError::Inconsistent(format!(
                                "{name} not compatible at ({x}, {y})"
                            )));
                        }
                    }
                }
                rows[i][j] = v;
            }
        }
        Ok(OpTable::from_rows("quotient", m, &rows).expect("classes index the carrier"))
    };
    let mul = induced(&|x, y| h.mul(x, y), "mul")?;
    let imp = induced(&|x, y| h.imp(x, y), "imp")?;
    let labels = classes.iter().map(|c| h.label(c[0]).to_string()).collect();
    let hoop = FiniteHoop::from_tables(
        mul,
        imp,
        projection[h.one()],
        h.zero().map(|z| projection[z]),
    )
    .map_err(|e| FilterError::Inconsistent(e.to_string()))?
    .with_labels(labels)
    .expect("class representatives are distinct");
    Ok(QuotientHoop {
        hoop,
        projection,
        classes,
    })
}

/// The induced square root `[x] -> [s(x)]` on `H/F`, certified.
pub fn quotient_sqrt(
    h: &FiniteHoop,
    q: &QuotientHoop,
    s: &SqrtMap,
) -> Result<SqrtMap, FilterError> {
    h.require_zero()?;
    let map: Vec<Elem> = q
        .classes
        .iter()
        .map(|c| q.projection[s.apply(c[0])])
        .collect();
    for c in &q.classes {
        for &x in c {
            if q.projection[s.apply(x)] != q.projection[s.apply(c[0])] {
                return Err(FilterError::Inconsistent(format!(
                    "s not compatible at {x}"
                )));
            }
        }
    }
    Ok(certify_sqrt(&q.hoop, map)?)
}

fn require_multiplicative(h: &FiniteHoop, s: &SqrtMap) -> Result<(), FilterError> {
    for x in h.elements() {
        for y in h.elements() {
            if s.apply(h.mul(x, y)) != h.mul(s.apply(x), s.apply(y)) {
                return Err(FilterError::NotMultiplicative(x, y));
            }
        }
    }
    Ok(())
}

/// `s(F)`, certified as a filter of the subalgebra `s(H)` (returned as a set
/// of host elements). Requires `s` to be multiplicative.
pub fn sqrt_image_filter(h: &FiniteHoop, f: &Filter, s: &SqrtMap) -> Result<Filter, FilterError> {
    require_multiplicative(h, s)?;
    let image = ElemSet::from_elems(h.size(), h.elements().map(|x| s.apply(x)));
    let (sub, embed) = h
        .subalgebra(&image)
        .ok_or_else(|| FilterError::Inconsistent("s(H) is not a subalgebra".into()))?;
    let sf = ElemSet::from_elems(h.size(), f.members.iter().map(|x| s.apply(x)));
    let local = ElemSet::from_elems(
        sub.size(),
        (0..sub.size()).filter(|&i| sf.contains(embed[i])),
    );
    if !is_filter(&sub, &local) {
        return Err(FilterError::NotAFilter);
    }
    Ok(Filter { members: sf })
}

/// Compare `s_F(H/F)` with `s(H)/s(F)` through `s_F[x] -> [s(x)]`.
///
/// Returns whether that assignment is a well-defined isomorphism.
pub fn sqrt_quotient_isomorphism(
    h: &FiniteHoop,
    f: &Filter,
    s: &SqrtMap,
) -> Result<bool, FilterError> {
    h.require_zero()?;
    require_multiplicative(h, s)?;
    // left side: the image of s_F inside H/F
    let q = quotient(h, f)?;
    let sf = quotient_sqrt(h, &q, s)?;
    let left_set = ElemSet::from_elems(q.hoop.size(), (0..q.hoop.size()).map(|c| sf.apply(c)));
    let Some((left, left_embed)) = q.hoop.subalgebra(&left_set) else {
        return Ok(false);
    };
    // right side: s(H) / s(F)
    let image = ElemSet::from_elems(h.size(), h.elements().map(|x| s.apply(x)));
    let Some((sh, sh_embed)) = h.subalgebra(&image) else {
        return Ok(false);
    };
    let s_f = sqrt_image_filter(h, f, s)?;
    let local = ElemSet::from_elems(
        sh.size(),
        (0..sh.size()).filter(|&i| s_f.contains(sh_embed[i])),
    );
    let right = quotient(&sh, &filter(&sh, local)?)?;
    let sh_index = |x: Elem| sh_embed.binary_search(&x).expect("s(x) lies in s(H)");

    let mut map = vec![None; left.size()];
    for x in h.elements() {
        let l = left_embed
            .binary_search(&sf.apply(q.class_of(x)))
            .expect("s_F[x] lies in the image");
        let r = right.class_of(sh_index(s.apply(x)));
        match map[l] {
            None => map[l] = Some(r),
            Some(prev) if prev != r => return Ok(false),
            _ => {}
        }
    }
    let map: Vec<Elem> = map
        .into_iter()
        .map(|m| m.expect("every class has a member"))
        .collect();
    Ok(morphisms::is_isomorphism(&left, &right.hoop, &map))
}

/// Idempotent, regular, dense, nilpotent and complemented elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinguishedSubsets {
    pub idempotent: Vec<Elem>,
    pub regular: Vec<Elem>,
    pub dense: Vec<Elem>,
    pub nilpotent: Vec<Elem>,
    pub boolean: Vec<Elem>,
    /// Pairs where the candidate join failed to be a join while testing for
    /// complements.
    pub findings: Vec<String>,
}

pub fn idempotents(h: &FiniteHoop) -> Vec<Elem> {
    h.elements().filter(|&x| h.is_idempotent_elem(x)).collect()
}

pub fn distinguished_subsets(h: &FiniteHoop) -> Result<DistinguishedSubsets, Unbounded> {
    let zero = h.require_zero()?;
    let neg = |x| h.imp(x, zero);
    let mut findings = Vec::new();
    let boolean = h
        .elements()
        .filter(|&x| {
            h.elements().any(|b| {
                let j = h.join_candidate(x, b);
                if j != h.one() || h.meet(x, b) != zero {
                    return false;
                }
                if !h.is_lub(x, b, j) {
                    findings.push(format!(
                        "candidate join of {} and {} is not a least upper bound",
                        h.label(x),
                        h.label(b)
                    ));
                    return false;
                }
                true
            })
        })
        .collect();
    Ok(DistinguishedSubsets {
        idempotent: idempotents(h),
        regular: h.elements().filter(|&x| neg(neg(x)) == x).collect(),
        dense: h.elements().filter(|&x| neg(x) == zero).collect(),
        nilpotent: h
            .elements()
            .filter(|&x| h.ord(x).map(|o| o.is_finite()).unwrap_or(false))
            .collect(),
        boolean,
        findings,
    })
}

/// `H[a] = { x : a <= x }` for idempotent `a`, as a subalgebra with its
/// embedding.
pub fn up_set_subalgebra(h: &FiniteHoop, a: Elem) -> Result<(FiniteHoop, Vec<Elem>), FilterError> {
    if !h.is_idempotent_elem(a) {
        return Err(FilterError::NotIdempotent(a));
    }
    let set = h.up_set(a);
    if !is_filter(h, &set) {
        return Err(FilterError::NotAFilter);
    }
    let (sub, embed) = h
        .subalgebra(&set)
        .ok_or_else(|| FilterError::Inconsistent("up-set of an idempotent is not closed".into()))?;
    Ok((sub.with_bottom(), embed))
}

/// Restrict a root of `h` to `H[a]` and certify it there.
pub fn restrict_root(h: &FiniteHoop, a: Elem, r: &RootMap) -> Result<RootMap, FilterError> {
    let (sub, embed) = up_set_subalgebra(h, a)?;
    let map = embed
        .iter()
        .map(|&x| {
            embed
                .binary_search(&r.apply(x))
                .map_err(|_| FilterError::Inconsistent(format!("root leaves H[a] at {x}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(certify_root(&sub, r.degree(), map)?)
}

/// Outcome of the orbit-complement dichotomy for a square root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    /// union of the orbits `{x, s(x), s(s(x)), ..}` over `x <= s(0)`
    pub orbit_union: Vec<Elem>,
    /// the complement of `orbit_union`
    pub complement: Vec<Elem>,
    pub complement_is_maximal_filter: bool,
    pub complement_generates_all: bool,
}

impl OrbitReport {
    pub fn holds(&self) -> bool {
        self.complement_is_maximal_filter || self.complement_generates_all
    }
}

pub fn orbit_complement_check(h: &FiniteHoop, s: &SqrtMap) -> Result<OrbitReport, Unbounded> {
    let zero = h.require_zero()?;
    let s0 = s.apply(zero);
    let mut orbits = ElemSet::empty(h.size());
    for x in h.elements().filter(|&x| h.leq(x, s0)) {
        let mut y = x;
        while orbits.insert(y) {
            y = s.apply(y);
        }
    }
    let complement = orbits.complement();
    let is_max = is_filter(h, &complement)
        && !complement.is_full()
        && is_maximal(
            h,
            &Filter {
                members: complement.clone(),
            },
        )
        .unwrap_or(false);
    let generated = generated_filter(h, &complement);
    Ok(OrbitReport {
        orbit_union: orbits.to_vec(),
        complement: complement.to_vec(),
        complement_is_maximal_filter: is_max,
        complement_generates_all: generated.members.is_full(),
    })
}
