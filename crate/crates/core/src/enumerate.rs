//! All finite hoops of a given size, up to isomorphism, and the square-root
//! census over them.
//!
//! Every finite hoop has a least element, which absorbs `*`, and `x * y = 1`
//! only for `x = y = 1`. The search therefore fixes the bottom at index 0 and
//! the unit at index `n - 1`, and backtracks over the commutative products of
//! the remaining elements with incremental associativity pruning. The order
//! of a hoop is its divisibility order, so `->` is recovered as the residuum
//! and the pair is then certified against the axioms. Isomorphic copies are
//! merged by a canonical form: the smallest multiplication table over all
//! relabellings of the middle elements that respect an isomorphism invariant.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::hoop::{Elem, FiniteHoop, OpTable, Order, PropertyFlag};
use crate::roots::{classify_sqrt, sqrt_solve};

/// Largest size enumerated without opting in.
pub const DEFAULT_BOUND: usize = 5;
/// Largest size enumerated at all.
pub const EXTENDED_BOUND: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("size {size} exceeds the enumeration bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("size must be at least 1")]
    Empty,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// allow sizes up to [`EXTENDED_BOUND`]
    pub extended: bool,
    pub exec: Exec,
}

impl EnumerateOptions {
    pub fn bound(&self) -> usize {
        if self.extended {
            EXTENDED_BOUND
        } else {
            DEFAULT_BOUND
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub size: usize,
    /// canonical representatives, ordered by canonical table
    pub models: Vec<FiniteHoop>,
}

/// Multiplication tables under construction: `None` marks an open cell.
struct Search {
    n: usize,
    cells: Vec<Option<Elem>>,
    /// open cells `(i, j)` with `0 < i <= j < n - 1`, in fill order
    order: Vec<(Elem, Elem)>,
}

impl Search {
    fn new(n: usize) -> Self {
        let mut cells = vec![None; n * n];
        let top = n - 1;
        for x in 0..n {
            for (a, b, v) in [(0, x, 0), (x, 0, 0), (top, x, x), (x, top, x)] {
                cells[a * n + b] = Some(v);
            }
        }
        let order = (1..top)
            .flat_map(|i| (i..top).map(move |j| (i, j)))
            .collect();
        Search { n, cells, order }
    }

    fn get(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.cells[x * self.n + y]
    }

    fn set(&mut self, x: Elem, y: Elem, v: Option<Elem>) {
        self.cells[x * self.n + y] = v;
        self.cells[y * self.n + x] = v;
    }

    /// No triple with all products known breaks associativity.
    fn associative_so_far(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let (Some(xy), Some(yz)) = (self.get(x, y), self.get(y, z)) else {
                        return true;
                    };
                    match (self.get(xy, z), self.get(x, yz)) {
                        (Some(l), Some(r)) => l == r,
                        _ => true,
                    }
                })
            })
        })
    }

    fn fill(&mut self, k: usize, out: &mut Vec<Vec<Elem>>) {
        let Some(&(i, j)) = self.order.get(k) else {
            out.push(self.cells.iter().map(|c| c.unwrap()).collect());
            return;
        };
        for v in 0..self.n - 1 {
            self.set(i, j, Some(v));
            if self.associative_so_far() {
                self.fill(k + 1, out);
            }
        }
        self.set(i, j, None);
    }
}

/// Invariant of element `x` under relabellings fixing bottom and unit.
fn invariant(n: usize, t: &[Elem], x: Elem) -> (bool, usize, usize) {
    let mut powers = vec![x];
    loop {
        let next = t[powers.last().unwrap() * n + x];
        if powers.contains(&next) {
            break;
        }
        powers.push(next);
    }
    let fixes = (0..n).filter(|&y| t[x * n + y] == x).count();
    (t[x * n + x] == x, powers.len(), fixes)
}

fn permutations(items: &[Elem]) -> Vec<Vec<Elem>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// The canonical multiplication table of `t`, which must have its least
/// element at index 0 and its unit at `n - 1`.
pub fn canonical_form(n: usize, t: &[Elem]) -> Vec<Elem> {
    if n <= 2 {
        return t.to_vec();
    }
    // group middle elements by invariant; a relabelling may only permute
    // within a group, and groups are laid out in invariant order
    let mut middle: Vec<Elem> = (1..n - 1).collect();
    middle.sort_by_key(|&x| invariant(n, t, x));
    let mut groups: Vec<Vec<Elem>> = Vec::new();
    for &x in &middle {
        match groups.last_mut() {
            Some(g) if invariant(n, t, g[0]) == invariant(n, t, x) => g.push(x),
            _ => groups.push(vec![x]),
        }
    }
    let mut layouts: Vec<Vec<Elem>> = vec![Vec::new()];
    for g in &groups {
        let perms = permutations(g);
        layouts = layouts
            .into_iter()
            .flat_map(|l| {
                perms.iter().map(move |p| {
                    let mut l = l.clone();
                    l.extend(p);
                    l
                })
            })
            .collect();
    }
    let mut best: Option<Vec<Elem>> = None;
    for layout in layouts {
        // new index i + 1 holds old element layout[i]
        let mut old_of_new = vec![0];
        old_of_new.extend(layout);
        old_of_new.push(n - 1);
        let mut new_of_old = vec![0; n];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let relabelled: Vec<Elem> = (0..n * n)
            .map(|c| new_of_old[t[old_of_new[c / n] * n + old_of_new[c % n]]])
            .collect();
        if best.as_ref().is_none_or(|b| relabelled < *b) {
            best = Some(relabelled);
        }
    }
    best.unwrap()
}

fn certify(n: usize, table: Vec<Elem>) -> Option<FiniteHoop> {
    let rows: Vec<Vec<Elem>> = table.chunks(n).map(|r| r.to_vec()).collect();
    let mul = OpTable::from_rows("mul", n, &rows).ok()?;
    FiniteHoop::from_mul_residuated(mul, n - 1, Some(0))
}

pub fn enumerate_hoops(n: usize) -> Result<EnumerationResult, EnumerateError> {
    enumerate_hoops_with(n, EnumerateOptions::default())
}

pub fn enumerate_hoops_with(
    n: usize,
    opts: EnumerateOptions,
) -> Result<EnumerationResult, EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::Empty);
    }
    if n > opts.bound() {
        return Err(EnumerateError::BoundExceeded {
            size: n,
            bound: opts.bound(),
        });
    }
    if n == 1 {
        let mul = OpTable::from_fn(1, |_, _| 0);
        let trivial = FiniteHoop::from_mul_residuated(mul, 0, Some(0)).expect("trivial hoop");
        return Ok(EnumerationResult {
            size: 1,
            models: vec![trivial],
        });
    }
    // split on the first open cell; each branch is searched independently
    let seeds: Vec<Option<Elem>> = if n > 2 {
        (0..n - 1).map(Some).collect()
    } else {
        vec![None]
    };
    let keys: Vec<Vec<Elem>> = opts.exec.flat_map(seeds, |seed| {
        let mut s = Search::new(n);
        let mut raw = Vec::new();
        match seed {
            Some(v) => {
                let (i, j) = s.order[0];
                s.set(i, j, Some(v));
                if s.associative_so_far() {
                    s.fill(1, &mut raw);
                }
            }
            None => s.fill(0, &mut raw),
        }
        let mut keys: BTreeSet<Vec<Elem>> = BTreeSet::new();
        for t in raw {
            // cheap screen before canonicalizing: the residuum must exist
            if certify(n, t.clone()).is_some() {
                keys.insert(canonical_form(n, &t));
            }
        }
        keys.into_iter().collect()
    });
    let keys: BTreeSet<Vec<Elem>> = keys.into_iter().collect();
    let models = keys
        .into_iter()
        .map(|t| certify(n, t).expect("canonical relabelling of a hoop is a hoop"))
        .collect();
    Ok(EnumerationResult { size: n, models })
}

/// Census flags of one enumerated model. Columns that need a square root are
/// `None` when the model has none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub index: usize,
    pub size: usize,
    pub bounded: bool,
    pub basic: bool,
    pub wajsberg: bool,
    pub dnp: bool,
    pub join: bool,
    pub idempotent: bool,
    pub idempotent_count: usize,
    pub nilpotent_count: usize,
    pub has_sqrt: bool,
    pub sqrt_identity: Option<bool>,
    pub good: Option<bool>,
    pub strict: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub size: usize,
    pub rows: Vec<CensusRow>,
}

impl Census {
    /// Models where having a square root and being idempotent disagree, or
    /// where the root is not the identity.
    pub fn rigidity_exceptions(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.has_sqrt != r.idempotent || r.sqrt_identity == Some(false))
            .map(|r| r.index)
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
        let mut out = String::from(
            "index,size,bounded,basic,wajsberg,dnp,join,idempotent,idempotents,nilpotents,has_sqrt,sqrt_identity,good,strict\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.index,
                r.size,
                r.bounded,
                r.basic,
                r.wajsberg,
                r.dnp,
                r.join,
                r.idempotent,
                r.idempotent_count,
                r.nilpotent_count,
                r.has_sqrt,
                opt(r.sqrt_identity),
                opt(r.good),
                opt(r.strict)
            ));
        }
        out
    }
}

pub fn census_row(index: usize, h: &FiniteHoop) -> CensusRow {
    let s = sqrt_solve(h);
    let class = s.as_ref().and_then(|s| classify_sqrt(h, s).ok());
    CensusRow {
        index,
        size: h.size(),
        bounded: h.is_bounded(),
        basic: h.has_property(PropertyFlag::Basic),
        wajsberg: h.has_property(PropertyFlag::Wajsberg),
        dnp: h.has_property(PropertyFlag::Dnp),
        join: h.is_join_hoop(),
        idempotent: h.has_property(PropertyFlag::Idempotent),
        idempotent_count: h.elements().filter(|&x| h.is_idempotent_elem(x)).count(),
        nilpotent_count: h
            .elements()
            .filter(|&x| matches!(h.ord(x), Ok(Order::Finite(_))))
            .count(),
        has_sqrt: s.is_some(),
        sqrt_identity: s.as_ref().map(|s| s.is_identity()),
        good: class.map(|c| c.good),
        strict: class.map(|c| c.strict),
    }
}

pub fn sqrt_census(models: &EnumerationResult, exec: Exec) -> Census {
    let indexed: Vec<(usize, &FiniteHoop)> = models.models.iter().enumerate().collect();
    Census {
        size: models.size,
        rows: exec.map(indexed, |(i, h)| census_row(i, h)),
    }
}

/// A deliberately naive generator for tiny sizes, used to cross-check the
/// search above. It tries every multiplication table with every choice of
/// unit, keeps the commutative monoids, pairs each with every implication
/// table whose diagonal is the unit, certifies the pair, and merges
/// isomorphic results with an explicit isomorphism search.
pub mod reference {
    use crate::hoop::{check_axioms, Elem, FiniteHoop, OpTable};
    use crate::morphisms::find_isomorphism;

    pub const MAX_SIZE: usize = 3;

    fn tables(n: usize, fixed: impl Fn(usize) -> Option<Elem>) -> Vec<OpTable> {
        let free: Vec<usize> = (0..n * n).filter(|&c| fixed(c).is_none()).collect();
        let total = n.pow(free.len() as u32);
        (0..total)
            .map(|mut code| {
                let mut cells: Vec<Elem> = (0..n * n).map(|c| fixed(c).unwrap_or(0)).collect();
                for &c in &free {
                    cells[c] = code % n;
                    code /= n;
                }
                OpTable::from_fn(n, |x, y| cells[x * n + y])
            })
            .collect()
    }

    fn is_comm_monoid(mul: &OpTable, one: Elem) -> bool {
        let n = mul.size();
        (0..n).all(|x| mul.get(one, x) == x)
            && (0..n).all(|x| (0..n).all(|y| mul.get(x, y) == mul.get(y, x)))
            && (0..n).all(|x| {
                (0..n)
                    .all(|y| (0..n).all(|z| mul.get(mul.get(x, y), z) == mul.get(x, mul.get(y, z))))
            })
    }

    pub fn all_hoops(n: usize) -> Vec<FiniteHoop> {
        assert!(
            (1..=MAX_SIZE).contains(&n),
            "reference generator handles sizes 1..={MAX_SIZE}"
        );
        let mut found: Vec<FiniteHoop> = Vec::new();
        for mul in tables(n, |_| None) {
            for one in 0..n {
                if !is_comm_monoid(&mul, one) {
                    continue;
                }
                for imp in tables(n, |c| (c / n == c % n).then_some(one)) {
                    if !check_axioms(&mul, &imp, one, None).passed {
                        continue;
                    }
                    let h = FiniteHoop::from_tables(mul.clone(), imp, one, None)
                        .expect("axioms checked")
                        .with_bottom();
                    if !found.iter().any(|g| find_isomorphism(g, &h).is_some()) {
                        found.push(h);
                    }
                }
            }
        }
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::morphisms::find_isomorphism;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_hoops(1).unwrap().models.len(), 1);
        assert_eq!(enumerate_hoops(2).unwrap().models.len(), 1);
        let three = enumerate_hoops(3).unwrap().models;
        assert_eq!(three.len(), 2);
        assert!(find_isomorphism(&three[0], &fixtures::l3()).is_some());
        assert!(find_isomorphism(&three[1], &fixtures::g3()).is_some());
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(
            enumerate_hoops(6).unwrap_err(),
            EnumerateError::BoundExceeded { size: 6, bound: 5 }
        );
        assert_eq!(enumerate_hoops(0).unwrap_err(), EnumerateError::Empty);
    }

    #[test]
    fn canonical_form_is_relabelling_invariant() {
        let h = fixtures::b4();
        let t = h.mul_table().cells().to_vec();
        let swapped = h.permuted(&[0, 2, 1, 3]);
        assert_eq!(
            canonical_form(4, &t),
            canonical_form(4, swapped.mul_table().cells())
        );
    }

    #[test]
    fn census_of_three() {
        let c = sqrt_census(&enumerate_hoops(3).unwrap(), Exec::Sequential);
        assert_eq!(c.rows.len(), 2);
        assert!(!c.rows[0].has_sqrt && c.rows[1].has_sqrt);
        assert!(c.rigidity_exceptions().is_empty());
        assert!(c
            .to_csv()
            .lines()
            .nth(1)
            .unwrap()
            .ends_with("false,n/a,n/a,n/a"));
    }
}
