//! Exact counting of permutation polynomials over finite fields by degree,
//! via permanents of matrices over group rings and cyclotomic rings, with a
//! brute-force oracle for cross-checking.

pub mod bound;
pub mod counting;
pub mod cyclo;
pub mod dd;
pub mod error;
pub mod field;
pub mod gauss;
pub mod group_ring;
pub mod guards;
pub mod oracle;
pub mod partition;
pub mod permanent;
pub mod ring;

pub use bound::{bound_check, factorial, BoundCheck};
pub use counting::{
    build_matrix_a, compute_table, count_all, count_deg_qm2, count_route, count_via_cyclotomic, count_via_partition,
    full_table, gq, CountTable, Method, PermanentReport, Route,
};
pub use cyclo::CycloElem;
pub use error::{Error, ErrorKind, Result};
pub use field::{FieldCtx, FieldElem, FieldSpec};
pub use gauss::{check_gauss_sums, gauss_sums, GaussCheck, GaussSum};
pub use group_ring::GroupRingElem;
pub use guards::{Config, Guards};
pub use oracle::{brute_force_table, count_restricted_solutions, interpolate, PermutationAssignment};
pub use permanent::{permanent_naive, permanent_ryser, RingMatrix};
pub use ring::Ring;
