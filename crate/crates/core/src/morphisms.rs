//! Homomorphisms, isomorphisms and direct products.

use crate::hoop::{Elem, FiniteHoop, OpTable};
use crate::roots::{certify_root, RootMap, RootViolation, SqrtMap};

/// The first place where `map` fails to be a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismFailure {
    Shape,
    Unit,
    Bottom,
    Mul(Elem, Elem),
    Imp(Elem, Elem),
}

/// Check `map` against `*`, `->`, 1, and 0 when both sides are bounded.
pub fn homomorphism_failure(
    src: &FiniteHoop,
    tgt: &FiniteHoop,
    map: &[Elem],
) -> Option<MorphismFailure> {
    if map.len() != src.size() || map.iter().any(|&y| y >= tgt.size()) {
        return Some(MorphismFailure::Shape);
    }
    if map[src.one()] != tgt.one() {
        return Some(MorphismFailure::Unit);
    }
    if let (Some(z), Some(w)) = (src.zero(), tgt.zero()) {
        if map[z] != w {
            return Some(MorphismFailure::Bottom);
        }
    }
    for x in src.elements() {
        for y in src.elements() {
            if map[src.mul(x, y)] != tgt.mul(map[x], map[y]) {
                return Some(MorphismFailure::Mul(x, y));
            }
            if map[src.imp(x, y)] != tgt.imp(map[x], map[y]) {
                return Some(MorphismFailure::Imp(x, y));
            }
        }
    }
    None
}

pub fn is_homomorphism(src: &FiniteHoop, tgt: &FiniteHoop, map: &[Elem]) -> bool {
    homomorphism_failure(src, tgt, map).is_none()
}

pub fn is_isomorphism(src: &FiniteHoop, tgt: &FiniteHoop, map: &[Elem]) -> bool {
    if src.size() != tgt.size() || map.len() != src.size() {
        return false;
    }
    let mut hit = vec![false; tgt.size()];
    for &y in map {
        if y >= tgt.size() || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    is_homomorphism(src, tgt, map)
}

/// Isomorphism-invariant fingerprint of one element.
fn invariant(h: &FiniteHoop, x: Elem) -> (usize, usize, bool, usize) {
    let up = h.elements().filter(|&y| h.leq(x, y)).count();
    let down = h.elements().filter(|&y| h.leq(y, x)).count();
    let mut powers = vec![x];
    loop {
        let next = h.mul(*powers.last().unwrap(), x);
        if powers.contains(&next) {
            break;
        }
        powers.push(next);
    }
    (up, down, h.is_idempotent_elem(x), powers.len())
}

/// The lexicographically first isomorphism `a -> b`, if any.
pub fn find_isomorphism(a: &FiniteHoop, b: &FiniteHoop) -> Option<Vec<Elem>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let inv_a: Vec<_> = a.elements().map(|x| invariant(a, x)).collect();
    let inv_b: Vec<_> = b.elements().map(|x| invariant(b, x)).collect();
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }

    fn consistent(a: &FiniteHoop, b: &FiniteHoop, map: &[Option<Elem>], x: Elem) -> bool {
        let fx = map[x].unwrap();
        (0..a.size()).all(|y| {
            let Some(fy) = map[y] else { return true };
            let check = |v: Elem, w: Elem| map[v].is_none_or(|fv| fv == w);
            check(a.mul(x, y), b.mul(fx, fy))
                && check(a.imp(x, y), b.imp(fx, fy))
                && check(a.imp(y, x), b.imp(fy, fx))
        })
    }

    fn extend(
        a: &FiniteHoop,
        b: &FiniteHoop,
        inv_a: &[(usize, usize, bool, usize)],
        inv_b: &[(usize, usize, bool, usize)],
        x: Elem,
        map: &mut Vec<Option<Elem>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if x == a.size() {
            return true;
        }
        for y in b.elements() {
            if used[y] || inv_a[x] != inv_b[y] {
                continue;
            }
            if x == a.one() && y != b.one() {
                continue;
            }
            map[x] = Some(y);
            used[y] = true;
            if consistent(a, b, map, x) && extend(a, b, inv_a, inv_b, x + 1, map, used) {
                return true;
            }
            map[x] = None;
            used[y] = false;
        }
        false
    }

    let mut map = vec![None; n];
    let mut used = vec![false; n];
    if !extend(a, b, &inv_a, &inv_b, 0, &mut map, &mut used) {
        return None;
    }
    let map: Vec<Elem> = map.into_iter().map(Option::unwrap).collect();
    debug_assert!(is_isomorphism(a, b, &map));
    Some(map)
}

/// Componentwise product. The pair `(x, y)` has index `x * |b| + y` and label
/// `(lx,ly)`.
pub fn product(a: &FiniteHoop, b: &FiniteHoop) -> FiniteHoop {
    let m = b.size();
    let n = a.size() * m;
    let pair = |i: Elem| (i / m, i % m);
    let idx = |x: Elem, y: Elem| x * m + y;
    let mul = OpTable::from_fn(n, |i, j| {
        let ((x1, y1), (x2, y2)) = (pair(i), pair(j));
        idx(a.mul(x1, x2), b.mul(y1, y2))
    });
    let imp = OpTable::from_fn(n, |i, j| {
        let ((x1, y1), (x2, y2)) = (pair(i), pair(j));
        idx(a.imp(x1, x2), b.imp(y1, y2))
    });
    let zero = match (a.zero(), b.zero()) {
        (Some(z), Some(w)) => Some(idx(z, w)),
        _ => None,
    };
    let labels = (0..n)
        .map(|i| format!("({},{})", a.label(i / m), b.label(i % m)))
        .collect();
    FiniteHoop::from_tables(mul, imp, idx(a.one(), b.one()), zero)
        .expect("product of hoops is a hoop")
        .with_labels(labels)
        .expect("pair labels are distinct")
}

/// The componentwise root on `a x b`, certified.
pub fn product_root(
    a: &FiniteHoop,
    ra: &RootMap,
    b: &FiniteHoop,
    rb: &RootMap,
) -> Result<RootMap, RootViolation> {
    assert_eq!(
        ra.degree(),
        rb.degree(),
        "component roots must share a degree"
    );
    let p = product(a, b);
    let m = b.size();
    let map = (0..p.size())
        .map(|i| ra.apply(i / m) * m + rb.apply(i % m))
        .collect();
    certify_root(&p, ra.degree(), map)
}

pub fn product_sqrt(
    a: &FiniteHoop,
    sa: &SqrtMap,
    b: &FiniteHoop,
    sb: &SqrtMap,
) -> Result<SqrtMap, RootViolation> {
    product_root(a, sa, b, sb)
}

/// `f(s(x)) = t(f(x))` for all `x`.
pub fn preserves_root(src_root: &RootMap, tgt_root: &RootMap, map: &[Elem]) -> bool {
    (0..map.len()).all(|x| map[src_root.apply(x)] == tgt_root.apply(map[x]))
}

/// Carry a root of `src` across an isomorphism to `tgt`.
pub fn transport_root(
    src: &FiniteHoop,
    tgt: &FiniteHoop,
    iso: &[Elem],
    r: &RootMap,
) -> Result<RootMap, RootViolation> {
    let mut map = vec![0; tgt.size()];
    for x in src.elements() {
        map[iso[x]] = iso[r.apply(x)];
    }
    certify_root(tgt, r.degree(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::roots::sqrt_solve;

    #[test]
    fn chains_are_not_isomorphic() {
        assert_eq!(find_isomorphism(&fixtures::g3(), &fixtures::l3()), None);
        let g3 = fixtures::g3();
        assert_eq!(find_isomorphism(&g3, &g3), Some(vec![0, 1, 2]));
    }

    #[test]
    fn boolean_square_is_b4() {
        let two = fixtures::two();
        let p = product(&two, &two);
        assert_eq!(p.labels(), &["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        let iso = find_isomorphism(&p, &fixtures::b4()).unwrap();
        assert!(is_isomorphism(&p, &fixtures::b4(), &iso));
        let s = sqrt_solve(&two).unwrap();
        let ps = product_sqrt(&two, &s, &two, &s).unwrap();
        assert_eq!(Some(ps.clone()), sqrt_solve(&p));
        let b4 = fixtures::b4();
        let t = transport_root(&p, &b4, &iso, &ps).unwrap();
        assert!(preserves_root(&ps, &t, &iso));
    }

    #[test]
    fn homomorphism_checks() {
        let two = fixtures::two();
        let g3 = fixtures::g3();
        // 0 -> 0, 1 -> 1 embeds the two-element chain
        assert!(is_homomorphism(&two, &g3, &[0, 2]));
        // collapsing m to 1 is the quotient by {m, 1}
        assert!(is_homomorphism(&g3, &two, &[0, 1, 1]));
        assert_eq!(
            homomorphism_failure(&g3, &two, &[0, 0, 1]),
            Some(MorphismFailure::Imp(1, 0))
        );
        assert_eq!(
            homomorphism_failure(&g3, &two, &[0, 1, 0]),
            Some(MorphismFailure::Unit)
        );
    }

    #[test]
    fn automorphisms_of_b4() {
        let b4 = fixtures::b4();
        assert_eq!(
            find_isomorphism(&b4, &b4.permuted(&[0, 2, 1, 3])),
            Some(vec![0, 1, 2, 3])
        );
        assert!(is_isomorphism(&b4, &b4, &[0, 2, 1, 3]));
    }
}
