//! Exact arithmetic in `Q_p` at a user-chosen finite precision.

mod arith;
mod context;
mod norm;
mod number;

pub use arith::{binomial_valuation, is_prime, mod_inverse, multiplicative_order, split_valuation};
pub use context::PadicContext;
pub use norm::NormValue;
pub use number::PadicNumber;
