//! A numerical laboratory for a heterogeneous-agent growth model in which
//! leverage drives a phase transition between fundamental land prices and
//! land-price bubbles.
//!
//! * [`economy`]: technologies, productivity distributions, the leverage
//!   threshold `λ̄` and assumption checks.
//! * [`closed_economy`]: aggregate maps, growth rates, steady states and
//!   perfect-foresight transition paths.
//! * [`bubble`]: deflators, fundamental values and the summability test for
//!   bubbles.
//! * [`open_economy`]: trend-stationary equilibria of the two-sector open
//!   economy.
//! * [`wealth`]: Pareto exponents of the stationary wealth distribution and
//!   a Monte Carlo panel for validating them.
//! * [`experiments`]: phase diagram and the leverage/productivity boom-bust
//!   experiments.

// `!(x > 0.0)` is deliberate throughout: NaN has to fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bubble;
pub mod closed_economy;
pub mod economy;
pub mod error;
pub mod experiments;
pub mod numerics;
pub mod open_economy;
pub mod report;
pub mod wealth;

pub use error::{Error, ErrorCategory, Result};
