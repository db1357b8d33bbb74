//! Involutory symmetric generation of finitely generated Coxeter groups.
//!
//! Given a Coxeter diagram and a distinguished node `s`, the maximal
//! parabolic subgroup `W'` generated by the remaining nodes acts on the
//! conjugacy class `s^{W'}` by conjugation. This crate builds that action
//! (via Todd–Coxeter coset enumeration of `W'` over the parabolic subgroup
//! on the nodes commuting with `s`), the progenitor `2^{*m}:W'`, the
//! finite presentation of `W` as a quotient of that progenitor, and
//! decides whether the resulting symmetric generating set is strict.
//!
//! Every result is cross-checked against an independent route: the
//! orbit of the simple root of `s` under the exact reflection
//! representation, and brute-force computations in the regular
//! representation of small finite groups.
//!
//! Node indices are zero-based throughout the Rust API. Every textual
//! format (diagram files, reports, tables, JSON) is one-based.

pub mod cli;
pub mod diagram;
pub mod enumerator;
pub mod exactfield;
pub mod presentation;
pub mod rootorbit;
pub mod symgen;

pub use diagram::{CoxeterMatrix, GroupClass, Label, NodePartition};
pub use enumerator::{CosetTable, EnumerateError, PermutationAction};
pub use exactfield::{FieldContext, FieldElem, GramMatrix, Signature};
pub use presentation::{Letter, Presentation, Word};
pub use symgen::{analyze, verify, CheckResult, CheckStatus, Limits, SymGenReport};
