//! Exact-arithmetic calculus of linked sequences of vector spaces, limit
//! linear series on a two-component nodal curve, and the divisor loci they
//! cut out on symmetric products, enumerable over small finite fields.
//!
//! The crate is organized bottom-up:
//!
//! - [`qlinalg`] — matrices and canonical-echelon subspaces over exact fields;
//! - [`numfn`] — the integer calculus of admissible numerical functions,
//!   their refinements, and fiber dimensions of forgetful maps;
//! - [`linked`] — linked sequences of vector spaces, their numerical
//!   invariants, exactness certificates, truncation and expansion;
//! - [`curvemodel`] — a concrete polynomial model of twist sequences and
//!   level series on a curve with two rational components, with forgetful
//!   maps and a constructive fiber sampler;
//! - [`abelmap`] — divisors of sections, the degree-d Abel map, and
//!   enumeration of divisor loci over prime fields;
//! - [`json`] — canonical, byte-stable JSON for every document type;
//! - [`cli`] — the `llseries` command-line front end.
//!
//! See the `examples/` directory for one runnable walkthrough per capability.

pub mod abelmap;
pub mod cli;
pub mod curvemodel;
pub mod json;
pub mod linked;
pub mod numfn;
pub mod qlinalg;

pub use qlinalg::{FieldSpec, Matrix, Scalar, Subspace};
