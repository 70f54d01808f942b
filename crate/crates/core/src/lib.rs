//! Element-order sums ψ(G), Ω-filtrations and CP2 membership for finite
//! p-groups given by multiplication tables, with a verification harness
//! that checks the classical ψ characterizations over a catalog of small
//! p-groups.

pub mod cli;
pub mod cp2;
mod error;
pub mod group;
pub mod harness;
pub mod omega;
pub mod psi;
pub mod scalar;

pub use cp2::{is_cp2_omega, is_cp2_pairwise, Cp2Method, Cp2Report, Cp2Witness};
pub use error::{NotPGroup, PsiError};
pub use group::{
    build_group, group_from_expr, parse_group_expr, parse_group_table, serialize_group, AssocCheck,
    BuildError, BuildOptions, Elem, FiniteGroup, GroupError, GroupExpr, Subgroup,
};
pub use omega::{
    exponent, omega_filtration, omega_set, omega_subgroup, prime_of, psi_brute, psi_subset,
    OmegaFiltration, OmegaLevel,
};
pub use psi::{
    order_bijection, predict_order, psi_bottom_recursion, psi_equal_via_omega, psi_filtration,
    psi_top_recursion, BijectionOutcome, GroupProfile, OrderBijection, PsiComparison,
};
pub use scalar::PsiScalar;

/// Fixed-width ψ value; exact for every group that fits a dense table.
pub type Psi = u64;

/// Arbitrary-precision ψ value.
pub type BigPsi = num_bigint::BigUint;
