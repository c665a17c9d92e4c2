//! Root extraction: Newton lifting, square roots, n-th roots and roots of
//! unity at finite level.

mod newton;
mod nth;
mod sqrt;
mod unity;

pub use newton::{newton_lift, LiftCertificate};
pub use nth::{nth_roots, p_th_root, NthRoots};
pub use sqrt::sqrt;
pub use unity::{nth_roots_of_unity, p_power_roots_of_unity, RootsOfUnitySet};
