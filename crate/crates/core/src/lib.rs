//! Parity for the rationals.
//!
//! A reduced fraction `m/n` is *even* when `m` is even and `n` odd, *odd*
//! when both are odd, and has parity *none* when `n` is even. This crate
//! provides exact arithmetic over that classification:
//!
//! * [`rational`], [`parity`], [`valuation`]: reduced big rationals, the
//!   three classes with their addition/multiplication tables, and p-adic
//!   order.
//! * [`partition`]: the 2-adic levels `Q_k`, the subgroups `Q_K`, dyadic
//!   forms and the cosets of `Q_P` (odd-denominator rationals).
//! * [`trees`]: Calkin-Wilf and Stern-Brocot enumeration together with
//!   symbol-only parity automata and their closed-form row patterns.
//! * [`density`]: orderings of ℕ and ℚ and exact prefix-density reports.
//!
//! Data-parallel loops go through [`par::Execution`]; the `parallel`
//! feature (default) backs them with rayon.

pub mod density;
pub mod error;
pub mod par;
pub mod parity;
pub mod partition;
pub mod rational;
pub mod trees;
pub mod valuation;

pub use error::{Error, Result};
pub use par::Execution;
pub use parity::{parity_add, parity_mul, Parity, ParityOutcome};
pub use rational::{classify, is_uneven, make_rational, nu, nu2, Rational};
pub use valuation::Valuation;

/// Default ceiling on how many elements a single enumeration may produce.
pub const DEFAULT_ELEMENT_CAP: u64 = 100_000_000;
