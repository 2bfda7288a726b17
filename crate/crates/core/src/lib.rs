//! Exact verification toolkit for the all-minors matrix tree identity.
//!
//! For an n x n semi-laplacian matrix M (every column sums to zero) and
//! equal-size vertex subsets U, W, the determinant of the submatrix with
//! rows W and columns U deleted equals the signed sum, over all spanning
//! oriented forests from U to W, of each forest's edge-entry product:
//!
//! ```text
//! det M(W, U) = sum over F of eps(U, W, F) * prod_{(i,j) in F} M_ij
//! ```
//!
//! The crate evaluates both sides exactly, numerically over big rationals
//! and symbolically over a sparse integer-coefficient polynomial ring, and
//! also checks the directional-derivative and cancellation structure
//! underlying the identity. Forest enumeration is deliberately brute force;
//! explicit caps keep it from being invoked out of its depth. There is no
//! floating point anywhere.

use std::ops::{Neg, Sub};

use num_traits::{One, Zero};

pub mod det;
pub mod engine;
pub mod error;
pub mod forest;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod random;
pub mod signs;
pub mod subset;
pub mod surgery;

/// 1-based vertex label in {1, ..., n}.
pub type Vertex = usize;

/// Exact arbitrary-precision rational scalar.
pub type Rational = num_rational::BigRational;

/// Digraph edge (tail, head, weight) as consumed by the graph builders.
pub type WeightedEdge = (Vertex, Vertex, Rational);

/// Matrix over the exact rationals.
pub type RationalMatrix = matrix::Matrix<Rational>;

/// Matrix over the edge-variable polynomial ring.
pub type PolyMatrix = matrix::Matrix<poly::EdgePolynomial>;

/// Largest n accepted by forest enumeration unless a caller raises the cap.
pub const DEFAULT_ENUM_CAP: usize = 8;

/// Largest n accepted by the symbolic routines unless a caller raises it.
pub const DEFAULT_SYMBOLIC_CAP: usize = 4;

/// The scalar interface the engine needs: a commutative ring with decidable
/// equality. Satisfied by [`Rational`] and [`poly::EdgePolynomial`]; both
/// represent values exactly, which is what makes zero-tolerance comparison
/// of the identity's two sides meaningful.
pub trait Ring:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

pub use det::{det_cofactor, det_exact};
pub use engine::{
    count_trees, count_trees_with_cap, forest_derivative_expansion,
    forest_derivative_expansion_with_cap, forest_monomial, forest_sum, forest_sum_over,
    forest_sum_with_cap, fuzz_campaign, fuzz_campaign_with_cap, generic_semi_laplacian,
    generic_semi_laplacian_with_cap, minor_derivative_via_cofactor,
    minor_derivative_via_cofactor_with_cap, partial_forest_sum, partial_forest_sum_with_cap,
    partial_minor_det, partial_minor_det_with_cap, semi_laplacian_from_digraph, signed_forests,
    signed_forests_with_cap, symbolic_verify, symbolic_verify_with_cap, verify_identity,
    verify_identity_with_cap, Direction, FuzzFailure, FuzzSummary, TreeCountReport,
    TreeEnumeration, VerificationReport,
};
pub use error::{Error, Result};
pub use forest::{
    enumerate_forests, enumerate_forests_with_cap, induced_bijection, is_valid_forest,
    ForestCertificate, OrientedForest, UwBijection,
};
pub use matrix::Matrix;
pub use poly::{var_count, var_index, var_pair, EdgePolynomial};
pub use random::{mix_seed, random_semi_laplacian};
pub use signs::{
    count_inversions, epsilon, epsilon_double_prime, epsilon_prime, epsilon_prime_position_form,
    sgn_bijection, Sign, SignedForestTriple,
};
pub use subset::{subsets_of_size, VertexSubset};
pub use surgery::{cancellation_pairs, cancellation_pairs_with_cap, glue, reattach};
