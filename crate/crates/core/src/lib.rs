//! Capped-precision p-adic arithmetic and a laboratory for the fixed-point
//! dynamics of `f(x) = x^(2n+1) + a x^(n+1)` with `0 < |a|_p < 1`.
//!
//! Layers, bottom up:
//!
//! * [`padic`]: elements of `Q_p` at finite absolute precision, exact norms.
//! * [`ext`]: certified finite extensions `Q_p[t]/(g)` and the extended norm.
//! * [`roots`]: Hensel/Newton lifting, square roots, n-th roots, roots of unity.
//! * [`dynamics`]: fixed points, multipliers, disk radii, orbit certification.
//! * [`report`]: literal grammar, verification reports and the suite registry.

pub mod dynamics;
pub mod error;
pub mod ext;
pub mod padic;
pub mod poly;
pub mod report;
pub mod roots;

pub use error::{Error, Result};
pub use ext::{ExtElement, ExtField, FieldKind};
pub use padic::{NormValue, PadicContext, PadicNumber};
