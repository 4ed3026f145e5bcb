//! Workbench for hoop algebras with square roots.
//!
//! Finite hoops are given by operation tables and certified on construction
//! ([`hoop`]). On top of them sit root computation ([`roots`]), filters and
//! quotients ([`filters`]), homomorphisms and products ([`morphisms`]) and
//! enumeration up to isomorphism ([`enumerate`]). Infinite example families
//! with exact rational arithmetic live in [`parametric`]. The [`term`] module
//! parses and evaluates identities over either kind of model and audits the
//! built-in identity catalog.

pub mod elemset;
pub mod enumerate;
pub mod exec;
pub mod filters;
pub mod fixtures;
pub mod format;
pub mod hoop;
pub mod morphisms;
pub mod parametric;
pub mod roots;
pub mod term;

pub use elemset::ElemSet;
pub use exec::Exec;
pub use hoop::{
    build_hoop, Axiom, AxiomReport, BuildError, Elem, FiniteHoop, OpTable, Order, PropertyFlag,
};
pub use roots::{nth_root_solve, sqrt_oracle, sqrt_solve, RootMap, SqrtMap};
