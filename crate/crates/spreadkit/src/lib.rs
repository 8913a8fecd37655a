//! Partial spreads and constant-dimension subspace codes over finite fields.
//!
//! A partial k-spread in F_q^n is a set of k-dimensional subspaces that
//! pairwise intersect only in the zero vector, i.e. a constant dimension
//! code with subspace distance 2k. This crate provides:
//!
//! - exact arithmetic in GF(p^e) ([`field`]),
//! - linear algebra and canonical subspaces over F_q ([`matrix`], [`subspace`]),
//! - rank-metric (MRD) codes, lifted MRD codes, the multi-component partial
//!   spread construction, and echelon-Ferrers assembly ([`codes`]),
//! - spread verification, hole computation, vector space partition types,
//!   and hyperplane spectra ([`verify`]),
//! - counting certificates: tail conditions, forbidden partition types, and
//!   the standard equations for hyperplane spectra ([`analysis`]),
//! - lower/upper/exact bounds for A_q(n, 2k; k) with provenance ([`bounds`]),
//! - a brute-force branch-and-bound oracle for tiny instances ([`search`]),
//! - a JSON spread-file format and a command line front end
//!   ([`spread_file`], [`cli`]).

// Index-style loops mirror the row/column arithmetic throughout.
#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod bounds;
pub mod cli;
pub mod codes;
pub mod field;
pub mod matrix;
pub mod search;
pub mod spread_file;
pub mod subspace;
pub mod verify;

pub use analysis::{
    forbidden_partition_check, solve_standard_equations, tail_admissible,
    ContradictionCertificate, ForbiddenVariant, StandardEquationsSolution, TailClause, TailVerdict,
};
pub use bounds::{
    bounds_record, bounds_table, deficiency, exact_value, lower_bound, theta_floor, upper_bound,
    BoundsRecord, Rule,
};
pub use codes::{
    echelon_ferrers_assemble, lifted_mrd, min_rank_distance, mrd_full_rank_code, mrd_size,
    multi_component, MatrixCode, PivotVector, SubspaceCode,
};
pub use field::FieldCtx;
pub use matrix::FqMatrix;
pub use search::{enumerate_k_subspaces, max_partial_spread, SearchLimits, SearchResult};
pub use spread_file::SpreadFile;
pub use subspace::{gaussian_binomial, Point, Subspace};
pub use verify::{
    compute_holes, hyperplane_spectrum, partition_type, verify_spread, HyperplaneSpectrum,
    PartitionType, VerificationReport,
};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field GF({p}^{e}) out of range (order cap {cap})")]
    DegreeOutOfRange { p: u64, e: u32, cap: u64 },
    #[error("division by zero in finite field")]
    DivisionByZero,
    #[error("ambient spaces do not match")]
    AmbientMismatch,
    #[error("generators span the zero space")]
    ZeroSpace,
    #[error("zero vector does not define a point")]
    ZeroVector,
    #[error("codewords have mixed dimensions")]
    MixedDimensions,
    #[error("duplicate codeword")]
    DuplicateCodeword,
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("pivot vectors {i} and {j} have Hamming distance {dist}, need at least {required}")]
    SkeletonDistance {
        i: usize,
        j: usize,
        dist: u32,
        required: u32,
    },
    #[error("component does not fit its echelon region: {0}")]
    Shape(String),
    #[error("component {index} has minimum rank distance {found}, need at least {required}")]
    ComponentDistance {
        index: usize,
        found: u32,
        required: u32,
    },
    #[error("code is not a partial spread")]
    NotASpread,
    #[error("no nonnegative integer solutions")]
    InconsistentSystem,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("spread file error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
