//! Exact Macaulay binomial representations, shadows of monomial sets, and
//! machine-checked persistence of minimal growth for Gotzmann sets.
//!
//! - [`binomial`]: representations `h = C(h(n)+n, n) + ...` and the growth
//!   operators built on them.
//! - [`monomial`]: monomials in lex order, fixed-degree sets, shadows and the
//!   variable splits used by the induction.
//! - [`engine`]: Gotzmann checks, persistence chains, splitting indices,
//!   certificates and the lemma sweeps.
//! - [`cli`]: the `macaulay` command-line frontend.

pub mod binomial;
pub mod cli;
pub mod engine;
pub mod monomial;
