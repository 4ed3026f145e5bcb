//! A term language over the hoop signature, identity checking, the identity
//! catalog, and the counterexample hunter.
//!
//! Concrete syntax, loosest binding first:
//!
//! | syntax                 | meaning                               |
//! |------------------------|---------------------------------------|
//! | `a -> b`               | implication, right associative        |
//! | `a \/ b`               | `((a -> b) -> b) /\ ((b -> a) -> a)`  |
//! | `a /\ b`               | `a * (a -> b)`                        |
//! | `a * b`                | multiplication                        |
//! | `a'`, `a^k`            | `a -> 0`, `k`-fold product            |
//! | `s(a)`, `r3(a)`        | square root, cube root (`r1`..`r9`)   |
//! | `x y z w`, `0 1`       | variables, constants                  |
//!
//! An identity is `lhs = rhs` or `lhs <= rhs`, optionally preceded by premises
//! `p1, p2 =>` and by a hypothesis list `{bounded, sqrt}`. The relation
//! `a <= b` is evaluated as `a -> b = 1`.

mod catalog;
mod eval;
mod hunt;
mod parser;
mod procedures;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::hoop::PropertyFlag;

pub use catalog::{
    catalog, catalog_entry, run_catalog, CatalogEntry, CatalogReport, EntryBody, EntryResult, Tally,
};
pub use eval::{
    check_identity, eval_term, Algebra, CheckError, CheckReport, EvalError, FiniteModel, Model,
    ParametricModel, Verdict, Witness,
};
pub use hunt::{hunt, HuntError, HuntWitness};
pub use parser::{parse_identity, parse_term, ParseError, ParseErrorKind};
pub use procedures::Procedure;

/// Variable names, in evaluation order.
pub const VARIABLES: [char; 4] = ['x', 'y', 'z', 'w'];

/// Largest root degree the syntax accepts.
pub const MAX_ROOT_DEGREE: u32 = 9;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    /// index into [`VARIABLES`]
    Var(usize),
    Zero,
    One,
    Mul(Box<Term>, Box<Term>),
    Imp(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Pow(Box<Term>, u32),
    Sqrt(Box<Term>),
    Root(u32, Box<Term>),
}

impl Term {
    fn precedence(&self) -> u8 {
        match self {
            Term::Imp(..) => 1,
            Term::Join(..) => 2,
            Term::Meet(..) => 3,
            Term::Mul(..) => 4,
            Term::Neg(_) | Term::Pow(..) => 5,
            _ => 6,
        }
    }

    fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Zero | Term::One => vec![],
            Term::Mul(a, b) | Term::Imp(a, b) | Term::Meet(a, b) | Term::Join(a, b) => vec![a, b],
            Term::Neg(a) | Term::Pow(a, _) | Term::Sqrt(a) | Term::Root(_, a) => vec![a],
        }
    }

    fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Indices of the variables that occur, ascending.
    pub fn variables(&self) -> Vec<usize> {
        let mut vs = Vec::new();
        self.visit(&mut |t| {
            if let Term::Var(i) = t {
                vs.push(*i);
            }
        });
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Root degrees used, with `s` counted as degree 2.
    pub fn root_degrees(&self) -> Vec<u32> {
        let mut ds = Vec::new();
        self.visit(&mut |t| match t {
            Term::Sqrt(_) => ds.push(2),
            Term::Root(n, _) => ds.push(*n),
            _ => {}
        });
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Whether the term mentions `0` or negation.
    pub fn uses_bottom(&self) -> bool {
        let mut found = false;
        self.visit(&mut |t| found |= matches!(t, Term::Zero | Term::Neg(_)));
        found
    }

    fn fmt_child(&self, child: &Term, parens: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let _ = self;
        if parens {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

impl fmt::Display for Term {
    /// Prints with the fewest parentheses that reparse to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        let binary =
            |f: &mut fmt::Formatter<'_>, a: &Term, op: &str, b: &Term, right_assoc: bool| {
                let (lp, rp) = if right_assoc {
                    (a.precedence() <= p, b.precedence() < p)
                } else {
                    (a.precedence() < p, b.precedence() <= p)
                };
                self.fmt_child(a, lp, f)?;
                write!(f, " {op} ")?;
                self.fmt_child(b, rp, f)
            };
        match self {
            Term::Var(i) => write!(f, "{}", VARIABLES[*i]),
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Mul(a, b) => binary(f, a, "*", b, false),
            Term::Imp(a, b) => binary(f, a, "->", b, true),
            Term::Meet(a, b) => binary(f, a, "/\\", b, false),
            Term::Join(a, b) => binary(f, a, "\\/", b, false),
            Term::Neg(a) => {
                self.fmt_child(a, a.precedence() < 5, f)?;
                write!(f, "'")
            }
            Term::Pow(a, k) => {
                self.fmt_child(a, a.precedence() < 5, f)?;
                write!(f, "^{k}")
            }
            Term::Sqrt(a) => write!(f, "s({a})"),
            Term::Root(n, a) => write!(f, "r{n}({a})"),
        }
    }
}

impl FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_term(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    Eq,
    Le,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
        })
    }
}

/// `lhs = rhs` or `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub lhs: Term,
    pub rel: Relation,
    pub rhs: Term,
}

impl Atom {
    fn terms(&self) -> [&Term; 2] {
        [&self.lhs, &self.rhs]
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel, self.rhs)
    }
}

/// A side condition on the model, checked before any assignment is tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    Flag(PropertyFlag),
    /// a square root exists
    Sqrt,
    /// an n-th root exists
    Root(u32),
    /// the square root exists and `s(x * y) = s(x) * s(y)` for all `x, y`
    SqrtMultiplicative,
    /// bounded, with a square root and `s(0) = 0`
    Good,
    /// bounded, with a square root and `s(0) = s(0)'`
    Strict,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Flag(p) => write!(f, "{p}"),
            Hypothesis::Sqrt => write!(f, "sqrt"),
            Hypothesis::Root(n) => write!(f, "root{n}"),
            Hypothesis::SqrtMultiplicative => write!(f, "sqrt-mult"),
            Hypothesis::Good => write!(f, "good"),
            Hypothesis::Strict => write!(f, "strict"),
        }
    }
}

impl FromStr for Hypothesis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sqrt" => Ok(Hypothesis::Sqrt),
            "sqrt-mult" => Ok(Hypothesis::SqrtMultiplicative),
            "good" => Ok(Hypothesis::Good),
            "strict" => Ok(Hypothesis::Strict),
            _ => {
                if let Some(n) = s.strip_prefix("root") {
                    return match n.parse::<u32>() {
                        Ok(n) if (1..=MAX_ROOT_DEGREE).contains(&n) => Ok(Hypothesis::Root(n)),
                        _ => Err(s.to_string()),
                    };
                }
                s.parse::<PropertyFlag>()
                    .map(Hypothesis::Flag)
                    .map_err(|_| s.to_string())
            }
        }
    }
}

/// A universally quantified statement with optional hypotheses and premises.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub hypotheses: Vec<Hypothesis>,
    pub premises: Vec<Atom>,
    pub conclusion: Atom,
}

impl Identity {
    fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.premises
            .iter()
            .chain(std::iter::once(&self.conclusion))
    }

    fn terms(&self) -> impl Iterator<Item = &Term> {
        self.atoms().flat_map(|a| a.terms())
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.terms().flat_map(|t| t.variables()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn root_degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms().flat_map(|t| t.root_degrees()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn uses_bottom(&self) -> bool {
        self.terms().any(Term::uses_bottom)
    }

    /// The identity with the hypotheses its own syntax requires added: a
    /// root for every root symbol and a bottom for `0` or negation.
    pub fn with_implied_hypotheses(&self) -> Identity {
        let mut hs = self.hypotheses.clone();
        if self.uses_bottom() {
            hs.push(Hypothesis::Flag(PropertyFlag::Bounded));
        }
        for d in self.root_degrees() {
            hs.push(match d {
                2 => Hypothesis::Sqrt,
                n => Hypothesis::Root(n),
            });
        }
        let mut seen = Vec::new();
        hs.retain(|h| {
            let fresh = !seen.contains(h);
            seen.push(*h);
            fresh
        });
        Identity {
            hypotheses: hs,
            ..self.clone()
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.hypotheses.is_empty() {
            let hs: Vec<String> = self.hypotheses.iter().map(|h| h.to_string()).collect();
            write!(f, "{{{}}} ", hs.join(", "))?;
        }
        if !self.premises.is_empty() {
            let ps: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
            write!(f, "{} => ", ps.join(", "))?;
        }
        write!(f, "{}", self.conclusion)
    }
}

impl FromStr for Identity {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_identity(s)
    }
}
