//! A workbench for common knowledge logic.
//!
//! - [`formula`]: the language, its parser and printer, and the expansion of
//!   derived connectives.
//! - [`kripke`]: finite frames and models, CKL-frame recognition and model
//!   checking.
//! - [`algebra`]: finite modal algebras and the MH- and CKL-algebra axiom
//!   checks.
//! - [`cofinite`]: the finite/cofinite algebra that satisfies the MH axioms
//!   but has no greatest lower bound for `{E^n a}`.
//! - [`proof`]: a checker for Hilbert-style derivations.

pub mod algebra;
pub mod cofinite;
pub mod formula;
pub mod kripke;
pub mod proof;
