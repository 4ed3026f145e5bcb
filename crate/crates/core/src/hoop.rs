//! Finite hoops given by operation tables.
//!
//! A [`FiniteHoop`] can only be obtained through certification: both tables are
//! checked for shape and range, then for the four hoop axioms
//!
//! * H1 `(H, *, 1)` is a commutative monoid,
//! * H2 `x -> x = 1`,
//! * H3 `x * (x -> y) = y * (y -> x)`,
//! * H4 `(x * y) -> z = x -> (y -> z)`,
//!
//! and, when a bottom is designated, for `0 <= x` under the derived order
//! `x <= y  iff  x -> y = 1`. Once built, a hoop is immutable.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::elemset::ElemSet;

/// Index of an element in a carrier `{0, .., n-1}`.
pub type Elem = usize;

/// A total binary operation on `{0, .., n-1}`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpTable {
    n: usize,
    cells: Vec<Elem>,
}

impl OpTable {
    /// Validate an `n x n` table given as rows.
    pub fn from_rows(
        table: &'static str,
        n: usize,
        rows: &[Vec<Elem>],
    ) -> Result<Self, TableError> {
        if rows.len() != n {
            return Err(TableError::RowCount {
                table,
                expected: n,
                found: rows.len(),
            });
        }
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(TableError::RowLength {
                    table,
                    row: r,
                    expected: n,
                    found: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(TableError::OutOfRange {
                        table,
                        row: r,
                        col: c,
                        value: v,
                    });
                }
                cells.push(v);
            }
        }
        Ok(OpTable { n, cells })
    }

    /// Build a table from a function. Panics if `f` leaves the carrier.
    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem) -> Elem) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                assert!(
                    v < n,
                    "table entry ({x},{y}) = {v} outside carrier of size {n}"
                );
                cells.push(v);
            }
        }
        OpTable { n, cells }
    }

    #[inline]
    pub fn get(&self, x: Elem, y: Elem) -> Elem {
        self.cells[x * self.n + y]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Elem] {
        &self.cells
    }

    pub fn row(&self, x: Elem) -> &[Elem] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }
}

/// Malformed input, reported separately from axiom violations.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("the carrier must have at least one element")]
    EmptyCarrier,
    #[error("{table} table has {found} rows, expected {expected}")]
    RowCount {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{table} table row {row} has {found} entries, expected {expected}")]
    RowLength {
        table: &'static str,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{table} table entry ({row},{col}) = {value} lies outside the carrier")]
    OutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("tables have different sizes ({mul} and {imp})")]
    SizeMismatch { mul: usize, imp: usize },
    #[error("designated unit {0} lies outside the carrier")]
    UnitOutOfRange(Elem),
    #[error("designated bottom {0} lies outside the carrier")]
    ZeroOutOfRange(Elem),
    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
}

/// The axiom clause a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    /// H1: `x * y = y * x`
    Commutative,
    /// H1: `(x * y) * z = x * (y * z)`
    Associative,
    /// H1: `1 * x = x`
    Unit,
    /// H2
    SelfImplication,
    /// H3
    Divisibility,
    /// H4
    Residuation,
    /// the designated bottom lies below every element
    Bottom,
}

impl Axiom {
    pub fn tag(self) -> &'static str {
        match self {
            Axiom::Commutative => "H1-comm",
            Axiom::Associative => "H1-assoc",
            Axiom::Unit => "H1-unit",
            Axiom::SelfImplication => "H2",
            Axiom::Divisibility => "H3",
            Axiom::Residuation => "H4",
            Axiom::Bottom => "bottom",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A violated axiom with the lexicographically smallest witness tuple.
///
/// For [`Axiom::Unit`] the witness is `(1, x)`; for [`Axiom::Bottom`] it is
/// `(0, x)`; otherwise it lists the quantified variables in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn violation(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("malformed tables: {0}")]
    Malformed(#[from] TableError),
    #[error("axioms violated: {}", .0.violations.iter().map(|v| format!("{} at {:?}", v.axiom, v.witness)).collect::<Vec<_>>().join(", "))]
    Axioms(AxiomReport),
}

/// Raised by operations that need a designated bottom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("operation requires a bounded hoop (no bottom designated)")]
pub struct Unbounded;

/// Order of an element: the least `n >= 1` with `x^n = 0`, or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Structural properties decided by exhaustive search over the carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PropertyFlag {
    Bounded,
    JoinHoop,
    Wajsberg,
    Basic,
    Dnp,
    Cancellative,
    Idempotent,
    LocallyFinite,
    Local,
    Regular,
}

impl PropertyFlag {
    pub const ALL: [PropertyFlag; 10] = [
        PropertyFlag::Bounded,
        PropertyFlag::JoinHoop,
        PropertyFlag::Wajsberg,
        PropertyFlag::Basic,
        PropertyFlag::Dnp,
        PropertyFlag::Cancellative,
        PropertyFlag::Idempotent,
        PropertyFlag::LocallyFinite,
        PropertyFlag::Local,
        PropertyFlag::Regular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyFlag::Bounded => "bounded",
            PropertyFlag::JoinHoop => "join",
            PropertyFlag::Wajsberg => "wajsberg",
            PropertyFlag::Basic => "basic",
            PropertyFlag::Dnp => "dnp",
            PropertyFlag::Cancellative => "cancellative",
            PropertyFlag::Idempotent => "idempotent",
            PropertyFlag::LocallyFinite => "locally-finite",
            PropertyFlag::Local => "local",
            PropertyFlag::Regular => "regular",
        }
    }
}

impl fmt::Display for PropertyFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyFlag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PropertyFlag::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

/// A certified finite hoop.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteHoop {
    mul: OpTable,
    imp: OpTable,
    one: Elem,
    zero: Option<Elem>,
    labels: Vec<String>,
}

/// Check H1-H4 (and the bottom, if given) on well-formed tables.
///
/// Every violated axiom is reported once, with its lexicographically smallest
/// witness.
pub fn check_axioms(mul: &OpTable, imp: &OpTable, one: Elem, zero: Option<Elem>) -> AxiomReport {
    let n = mul.size();
    let mut violations = Vec::new();
    let leq = |x: Elem, y: Elem| imp.get(x, y) == one;

    let first2 = |pred: &dyn Fn(Elem, Elem) -> bool| -> Option<Vec<Elem>> {
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| !pred(x, y))
            .map(|(x, y)| vec![x, y])
    };
    let first3 = |pred: &dyn Fn(Elem, Elem, Elem) -> bool| -> Option<Vec<Elem>> {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !pred(x, y, z) {
                        return Some(vec![x, y, z]);
                    }
                }
            }
        }
        None
    };

    if let Some(w) = first2(&|x, y| mul.get(x, y) == mul.get(y, x)) {
        violations.push(Violation {
            axiom: Axiom::Commutative,
            witness: w,
        });
    }
    if let Some(w) = first3(&|x, y, z| mul.get(mul.get(x, y), z) == mul.get(x, mul.get(y, z))) {
        violations.push(Violation {
            axiom: Axiom::Associative,
            witness: w,
        });
    }
    if let Some(x) = (0..n).find(|&x| mul.get(one, x) != x || mul.get(x, one) != x) {
        violations.push(Violation {
            axiom: Axiom::Unit,
            witness: vec![one, x],
        });
    }
    if let Some(x) = (0..n).find(|&x| imp.get(x, x) != one) {
        violations.push(Violation {
            axiom: Axiom::SelfImplication,
            witness: vec![x],
        });
    }
    if let Some(w) = first2(&|x, y| mul.get(x, imp.get(x, y)) == mul.get(y, imp.get(y, x))) {
        violations.push(Violation {
            axiom: Axiom::Divisibility,
            witness: w,
        });
    }
    if let Some(w) = first3(&|x, y, z| imp.get(mul.get(x, y), z) == imp.get(x, imp.get(y, z))) {
        violations.push(Violation {
            axiom: Axiom::Residuation,
            witness: w,
        });
    }
    if let Some(z) = zero {
        if let Some(x) = (0..n).find(|&x| !leq(z, x)) {
            violations.push(Violation {
                axiom: Axiom::Bottom,
                witness: vec![z, x],
            });
        }
    }
    AxiomReport {
        passed: violations.is_empty(),
        violations,
    }
}

/// Certify tables given as rows of element indices.
pub fn build_hoop(
    size: usize,
    mul: &[Vec<Elem>],
    imp: &[Vec<Elem>],
    one: Elem,
    zero: Option<Elem>,
) -> Result<FiniteHoop, BuildError> {
    if size == 0 {
        return Err(TableError::EmptyCarrier.into());
    }
    let mul = OpTable::from_rows("mul", size, mul)?;
    let imp = OpTable::from_rows("imp", size, imp)?;
    FiniteHoop::from_tables(mul, imp, one, zero)
}

fn default_labels(n: usize, one: Elem, zero: Option<Elem>) -> Vec<String> {
    let mut next = 0usize;
    (0..n)
        .map(|x| {
            if x == one {
                "1".to_string()
            } else if Some(x) == zero {
                "0".to_string()
            } else {
                let l = if next < 26 {
                    ((b'a' + next as u8) as char).to_string()
                } else {
                    format!("e{next}")
                };
                next += 1;
                l
            }
        })
        .collect()
}

impl FiniteHoop {
    pub fn from_tables(
        mul: OpTable,
        imp: OpTable,
        one: Elem,
        zero: Option<Elem>,
    ) -> Result<Self, BuildError> {
        let n = mul.size();
        if n == 0 {
            return Err(TableError::EmptyCarrier.into());
        }
        if imp.size() != n {
            return Err(TableError::SizeMismatch {
                mul: n,
                imp: imp.size(),
            }
            .into());
        }
        if one >= n {
            return Err(TableError::UnitOutOfRange(one).into());
        }
        if let Some(z) = zero {
            if z >= n {
                return Err(TableError::ZeroOutOfRange(z).into());
            }
        }
        let report = check_axioms(&mul, &imp, one, zero);
        if !report.passed {
            return Err(BuildError::Axioms(report));
        }
        Ok(FiniteHoop {
            labels: default_labels(n, one, zero),
            mul,
            imp,
            one,
            zero,
        })
    }

    /// Certify a multiplication table whose implication is the residuum
    /// `x -> y = max { z : z * x <= y }` under the divisibility order.
    /// Returns `None` when the order or the residuum does not exist, or the
    /// resulting tables are not a hoop.
    pub fn from_mul_residuated(mul: OpTable, one: Elem, zero: Option<Elem>) -> Option<Self> {
        let imp = residuum(&mul)?;
        FiniteHoop::from_tables(mul, imp, one, zero).ok()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, TableError> {
        if labels.len() != self.size() {
            return Err(TableError::LabelCount {
                expected: self.size(),
                found: labels.len(),
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(TableError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// Designate the least element as bottom. Every finite hoop has one.
    pub fn with_bottom(mut self) -> Self {
        let b = self.bottom();
        if self.zero != Some(b) {
            self.zero = Some(b);
            if self.labels == default_labels(self.size(), self.one, None) {
                self.labels = default_labels(self.size(), self.one, Some(b));
            }
        }
        self
    }

    pub fn size(&self) -> usize {
        self.mul.size()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn zero(&self) -> Option<Elem> {
        self.zero
    }

    pub fn is_bounded(&self) -> bool {
        self.zero.is_some()
    }

    pub fn require_zero(&self) -> Result<Elem, Unbounded> {
        self.zero.ok_or(Unbounded)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn find_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mul_table(&self) -> &OpTable {
        &self.mul
    }

    pub fn imp_table(&self) -> &OpTable {
        &self.imp
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul.get(x, y)
    }

    #[inline]
    pub fn imp(&self, x: Elem, y: Elem) -> Elem {
        self.imp.get(x, y)
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.imp(x, y) == self.one
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    /// `x /\ y = x * (x -> y)`
    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.mul(x, self.imp(x, y))
    }

    /// `((x -> y) -> y) /\ ((y -> x) -> x)`; a join only on join-hoops.
    #[inline]
    pub fn join_candidate(&self, x: Elem, y: Elem) -> Elem {
        self.meet(self.imp(self.imp(x, y), y), self.imp(self.imp(y, x), x))
    }

    /// Whether `j` is the least upper bound of `x` and `y`.
    pub fn is_lub(&self, x: Elem, y: Elem, j: Elem) -> bool {
        self.leq(x, j)
            && self.leq(y, j)
            && self
                .elements()
                .all(|z| !(self.leq(x, z) && self.leq(y, z)) || self.leq(j, z))
    }

    pub fn is_join_hoop(&self) -> bool {
        self.elements().all(|x| {
            self.elements()
                .all(|y| self.is_lub(x, y, self.join_candidate(x, y)))
        })
    }

    /// `x' = x -> 0`
    pub fn neg(&self, x: Elem) -> Result<Elem, Unbounded> {
        Ok(self.imp(x, self.require_zero()?))
    }

    /// `x^k` with `x^0 = 1`.
    pub fn pow(&self, x: Elem, k: u32) -> Elem {
        (0..k).fold(self.one, |acc, _| self.mul(acc, x))
    }

    /// Least `n >= 1` with `x^n = 0`, or infinity once the powers stabilize.
    pub fn ord(&self, x: Elem) -> Result<Order, Unbounded> {
        let zero = self.require_zero()?;
        let mut p = x;
        let mut n = 1u32;
        loop {
            if p == zero {
                return Ok(Order::Finite(n));
            }
            let next = self.mul(p, x);
            // powers decrease, so a repeated value is a fixed point
            if next == p {
                return Ok(Order::Infinite);
            }
            p = next;
            n += 1;
        }
    }

    pub fn is_idempotent_elem(&self, x: Elem) -> bool {
        self.mul(x, x) == x
    }

    /// The least element (meet of the whole carrier).
    pub fn bottom(&self) -> Elem {
        self.elements().fold(self.one, |acc, x| self.meet(acc, x))
    }

    pub fn is_chain(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    pub fn up_set(&self, a: Elem) -> ElemSet {
        ElemSet::from_elems(self.size(), self.elements().filter(|&x| self.leq(a, x)))
    }

    pub fn has_property(&self, flag: PropertyFlag) -> bool {
        let els = || self.elements();
        let pairs = || els().flat_map(move |x| els().map(move |y| (x, y)));
        match flag {
            PropertyFlag::Bounded => self.is_bounded(),
            PropertyFlag::JoinHoop => self.is_join_hoop(),
            PropertyFlag::Wajsberg => {
                pairs().all(|(x, y)| self.imp(self.imp(x, y), y) == self.imp(self.imp(y, x), x))
            }
            PropertyFlag::Basic => pairs().all(|(x, y)| {
                els().all(|z| {
                    let lhs = self.imp(self.imp(x, y), z);
                    let rhs = self.imp(self.imp(self.imp(y, x), z), z);
                    self.leq(lhs, rhs)
                })
            }),
            PropertyFlag::Cancellative => pairs().all(|(x, y)| self.imp(y, self.mul(x, y)) == x),
            PropertyFlag::Idempotent => els().all(|x| self.is_idempotent_elem(x)),
            PropertyFlag::Dnp => match self.zero {
                Some(z) => els().all(|x| self.imp(self.imp(x, z), z) == x),
                None => false,
            },
            PropertyFlag::LocallyFinite => match self.zero {
                Some(_) => els()
                    .filter(|&x| x != self.one)
                    .all(|x| self.ord(x).map(Order::is_finite).unwrap_or(false)),
                None => false,
            },
            PropertyFlag::Local => match self.zero {
                Some(z) => els().all(|x| {
                    self.ord(x).map(Order::is_finite).unwrap_or(false)
                        || self
                            .ord(self.imp(x, z))
                            .map(Order::is_finite)
                            .unwrap_or(false)
                }),
                None => false,
            },
            PropertyFlag::Regular => match self.zero {
                Some(z) => pairs()
                    .filter(|&(x, y)| x != z && y != z)
                    .all(|(x, y)| self.meet(x, y) != z),
                None => false,
            },
        }
    }

    pub fn properties(&self) -> Vec<PropertyFlag> {
        PropertyFlag::ALL
            .into_iter()
            .filter(|&p| self.has_property(p))
            .collect()
    }

    /// Whether `set` contains 1 and is closed under `*` and `->`.
    pub fn is_subuniverse(&self, set: &ElemSet) -> bool {
        set.contains(self.one)
            && set.iter().all(|x| {
                set.iter()
                    .all(|y| set.contains(self.mul(x, y)) && set.contains(self.imp(x, y)))
            })
    }

    /// The subalgebra on `set`, with its embedding into `self`.
    ///
    /// Elements keep their relative order and labels. The bottom is kept when
    /// it belongs to `set`.
    pub fn subalgebra(&self, set: &ElemSet) -> Option<(FiniteHoop, Vec<Elem>)> {
        if !self.is_subuniverse(set) {
            return None;
        }
        let embed = set.to_vec();
        let index = |x: Elem| embed.binary_search(&x).expect("closed subset");
        let m = embed.len();
        let mul = OpTable::from_fn(m, |i, j| index(self.mul(embed[i], embed[j])));
        let imp = OpTable::from_fn(m, |i, j| index(self.imp(embed[i], embed[j])));
        let zero = self.zero.filter(|z| set.contains(*z)).map(index);
        let labels = embed.iter().map(|&x| self.labels[x].clone()).collect();
        let sub = FiniteHoop::from_tables(mul, imp, index(self.one), zero)
            .expect("subalgebra of a hoop is a hoop")
            .with_labels(labels)
            .expect("labels of a hoop are distinct");
        Some((sub, embed))
    }

    /// Relabel along a bijection: element `x` becomes `perm[x]`.
    pub fn permuted(&self, perm: &[Elem]) -> FiniteHoop {
        let n = self.size();
        let mut inv = vec![0; n];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        let mul = OpTable::from_fn(n, |i, j| perm[self.mul(inv[i], inv[j])]);
        let imp = OpTable::from_fn(n, |i, j| perm[self.imp(inv[i], inv[j])]);
        let labels = (0..n).map(|i| self.labels[inv[i]].clone()).collect();
        FiniteHoop {
            mul,
            imp,
            one: perm[self.one],
            zero: self.zero.map(|z| perm[z]),
            labels,
        }
    }
}

/// The residuum of a commutative monoid table under its divisibility order,
/// if that order is antisymmetric and every residuum has a greatest element.
pub fn residuum(mul: &OpTable) -> Option<OpTable> {
    let n = mul.size();
    // divisibility: x <= y iff x = y * z for some z
    let mut below = vec![false; n * n];
    for y in 0..n {
        for z in 0..n {
            below[mul.get(y, z) * n + y] = true;
        }
    }
    let leq = |x: Elem, y: Elem| below[x * n + y];
    for x in 0..n {
        for y in 0..n {
            if x != y && leq(x, y) && leq(y, x) {
                return None;
            }
        }
    }
    let mut cells = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let cands: Vec<Elem> = (0..n).filter(|&z| leq(mul.get(z, x), y)).collect();
            let top = cands
                .iter()
                .copied()
                .find(|&g| cands.iter().all(|&c| leq(c, g)))?;
            cells.push(top);
        }
    }
    Some(OpTable { n, cells })
}

impl fmt::Display for FiniteHoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hoop of size {} {{{}}}",
            self.size(),
            self.labels.join(", ")
        )
    }
}
