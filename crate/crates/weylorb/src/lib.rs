//! Exact-arithmetic Weyl group orbits and orbit branching rules for the
//! classical Lie algebras A, B, C, D.
//!
//! The crate generates the finite orbit of a dominant weight under the Weyl
//! group, applies integer projection matrices that map weights of `A_n` to
//! weights of its maximal reductive subalgebras, and regroups the projected
//! points into subalgebra orbits with exact integer multiplicities. All
//! coordinates are rationals in the basis of fundamental weights (Dynkin
//! labels), so every identity is checked exactly, never within a tolerance.
//!
//! Entry points:
//! - [`parse_algebra`] / [`parse_weight`] build the domain objects from text.
//! - [`generate_orbit`], [`orbit_size`], [`to_dominant`] handle orbits.
//! - [`catalog`] and the `series_*` constructors supply projection matrices;
//!   [`derive_projection`] solves for one from associated weight pairs.
//! - [`branch`] computes an orbit branching rule; [`verify_branch`] and
//!   [`validate_projection`] check results by multiset identities.

mod algebra;
mod branching;
mod error;
mod linalg;
mod orbits;
mod projections;

pub use algebra::{
    cartan_matrix, parse_algebra, quadratic_form, weyl_order, CartanMatrix, Family,
    QuadraticForm, ReductiveAlgebra, SimpleComponent,
};
pub use branching::{
    branch, pullback_points, signed_orbit_decomposition, verify_branch, BranchRecord,
    BranchingRule, SignedOrbitSum, TermRecord, VerifyReport,
};
pub use error::{Error, Result};
pub use linalg::RatMatrix;
pub use orbits::{
    apply_reflection, contragredient, generate_orbit, orbit_size, parse_weight, to_dominant,
    Orbit, Weight,
};
pub use projections::{
    auto_associate, catalog, catalog_entries, catalog_subjoined, compose_projection,
    derive_projection, invert_projection, series_a2n1_cn, series_a2n1_dn, series_a2n_bn,
    series_equidimensional, validate_projection, MatrixRecord, ProjectionMatrix, Provenance,
    SeedCheck, ValidationReport,
};

/// Exact scalar used throughout: a reduced fraction over `i64`.
///
/// Workspace profiles enable overflow checks everywhere, so arithmetic that
/// would leave the `i64` range panics instead of silently wrapping.
pub type Rational = num_rational::Rational64;

#[doc(hidden)]
pub mod perf {
    //! Fixed-strategy entry points for benchmarks. The public API picks the
    //! execution strategy itself; these force one side or the other so the
    //! two can be compared.

    pub use crate::branching::branch_with_strategy;
    pub use crate::orbits::{generate_orbit_with_strategy, Strategy};
}
