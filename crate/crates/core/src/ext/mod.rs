//! Finite extensions `K = Q_p[t]/(g)` with the unique extension of the
//! p-adic norm.

mod element;
mod field;
pub mod fp;
mod linalg;

pub use element::ExtElement;
pub use field::{ExtField, FieldKind};
pub use linalg::{determinant, solve};
