//! The map `f(x) = x^(2n+1) + a x^(n+1)`: fixed points, multipliers, disk
//! radii, orbits and sampled certification of Siegel disks and basins.

mod classify;
mod fixed;
mod map;
mod orbit;
mod verify;

pub use classify::{
    classify, disk_radius, format_tags, theorem_case, CaseTag, Character, DiskRadius, FixedPointRecord,
};
pub use fixed::{c_pm, fixed_points, Branch, FieldPolicy, FixedPoint, FixedPointFamily};
pub use map::PolyMap;
pub use orbit::{distance, iterate, OrbitStep, OrbitTrace, Termination};
pub use verify::{
    disjointness_matrix, preimage_field_degree, preimage_sphere_check, random_unit, verify_attraction,
    verify_sphere_invariance, DistanceMatrix, Sampling,
};
