//! Exact computational workbench for K-groups at desk scale.
//!
//! The crate combines exact integer linear algebra (Smith normal form,
//! canonical forms of finitely generated abelian groups), group completion
//! of commutative monoids, an idempotent-matrix calculus over exact fields,
//! elementary-matrix reduction certificates, finite-field K-group formulas
//! with brute-force symbol cross-checks, Bernoulli-number tables, and a
//! numerical realization of the clutching construction over spheres.

pub mod abelian;
pub mod bott;
pub mod error;
pub mod field;
pub mod grothendieck;
pub mod kfinite;
pub mod kzero;

pub use error::{Error, Result};
