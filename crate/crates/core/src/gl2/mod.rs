//! Conjugation quandles on GL(2, C): matrices, conjugacy classes, conjugator
//! spaces, class-restricted witnesses and numeric probes.

mod class;
mod exact;
mod mat;
pub mod probes;
mod sample;
mod space;
mod witness;

pub use class::{classify, quadratic_roots, ClassLabel};
pub use exact::{is_gaussian_rational, to_exact, Gq};
pub use mat::{conj_op, format_complex, parse_complex, pgl_normalize, residual, root_of_unity, scale_map, Mat2, ONE, ZERO};
pub use sample::{random_conjugator, random_member, sample_rng};
pub use space::{conjugator_space, Arithmetic, ConjugatorSpace};
pub use witness::{
    membership_residual, path_residual, two_step_path, witness_in_class, witness_residual, SolverValue, WitnessReport,
    WitnessStatus, ALL_SOLUTIONS_SINGULAR, DETERMINANT_INCONSISTENT, ONLY_SCALAR_SOLUTIONS, SCALAR_CONJUGATION,
    TRACE_MUST_BE_ZERO,
};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Tolerance for deciding that two labels name the same class.
pub const CLASS_TOL: f64 = 1e-6;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GlError {
    #[error("matrix is singular (|det| = {det:e})")]
    Singular { det: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}
