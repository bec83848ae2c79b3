//! Sequential-design laboratory for computerized adaptive testing under
//! logistic item response theory models.
//!
//! The library side provides the item response primitives ([`irt`]), the
//! monotone estimating equations and their solver ([`estimator`]), the
//! sequential item-selection rules ([`designer`]), a deterministic Monte
//! Carlo harness ([`simulator`]), and the divergence demonstrations that
//! show why the discrimination schedule must stay bounded
//! ([`counterexample`]). The [`cli`] module is the command-line front end
//! over all of it.

pub mod cli;
pub mod counterexample;
pub mod designer;
pub mod estimator;
pub mod irt;
pub mod simulator;
