//! Commutator solvers at the algebra and group level, and the empirical
//! openness measurement built on them.

mod algebra;
mod group;
mod openness;

pub use algebra::{
    decompose_algebra, invert_ad_on_complement, regular_element, regular_gap, AlgebraConfig, AlgebraDecomposition,
    MIN_GAP,
};
pub use group::{
    c_map, decompose_group, phi, phi_inverse_first, solve_pq, GroupConfig, GroupDecomposition, PqConfig,
    PqSolution, SPECTRAL_MARGIN,
};
pub use openness::{
    fit_power_law, measure_openness, random_target, sample_seed, Level, OpennessConfig, OpennessReport, OpennessRow,
    SampleFailure,
};
