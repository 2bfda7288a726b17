//! Both sides of the determinant / forest-sum identity, evaluated over the
//! rationals and over the symbolic polynomial ring, plus the directional
//! derivative forms of both sides and the randomized campaign driver.

use std::time::{Duration, Instant};

use num_traits::Zero;

use crate::det::{det_cofactor, det_exact};
use crate::error::{Error, Result};
use crate::forest::{enumerate_forests_with_cap, OrientedForest};
use crate::matrix::Matrix;
use crate::poly::{var_index, EdgePolynomial};
use crate::random::{mix_seed, random_semi_laplacian};
use crate::signs::{epsilon, epsilon_double_prime, epsilon_prime, SignedForestTriple};
use crate::subset::{subsets_of_size, VertexSubset};
use crate::surgery::glue;
use crate::{
    PolyMatrix, Rational, RationalMatrix, Ring, Vertex, WeightedEdge, DEFAULT_ENUM_CAP,
    DEFAULT_SYMBOLIC_CAP,
};

/// Product of the matrix entries over the forest's edges; 1 for no edges.
pub fn forest_monomial<T: Ring>(f: &OrientedForest, m: &Matrix<T>) -> Result<T> {
    if !m.is_square() || m.rows() != f.n() {
        return Err(Error::Contract(format!(
            "forest on {} vertices paired with a {}x{} matrix",
            f.n(),
            m.rows(),
            m.cols()
        )));
    }
    let mut acc = T::one();
    for (a, b) in f.edges() {
        acc = acc * m[(a, b)].clone();
    }
    Ok(acc)
}

/// The complete signed enumeration of forests from U to W, in canonical
/// order. Reusable across many matrices on the same vertex set.
pub fn signed_forests(
    n: usize,
    u: &VertexSubset,
    w: &VertexSubset,
) -> Result<Vec<SignedForestTriple>> {
    signed_forests_with_cap(n, u, w, DEFAULT_ENUM_CAP)
}

pub fn signed_forests_with_cap(
    n: usize,
    u: &VertexSubset,
    w: &VertexSubset,
    cap: usize,
) -> Result<Vec<SignedForestTriple>> {
    enumerate_forests_with_cap(n, u, w, cap)?
        .into_iter()
        .map(|f| SignedForestTriple::new(u.clone(), w.clone(), f))
        .collect()
}

/// Sum of sign * monomial against a precomputed signed enumeration.
pub fn forest_sum_over<T: Ring>(signed: &[SignedForestTriple], m: &Matrix<T>) -> Result<T> {
    let mut acc = T::zero();
    for t in signed {
        acc = acc + t.epsilon.apply(forest_monomial(&t.forest, m)?);
    }
    Ok(acc)
}

fn check_semi_laplacian<T: Ring>(m: &Matrix<T>) -> Result<()> {
    if let Some(col) = m.unbalanced_column()? {
        return Err(Error::Contract(format!(
            "matrix is not semi-laplacian: column {col} does not sum to zero"
        )));
    }
    Ok(())
}

/// The signed sum of forest monomials over all forests from U to W.
/// The matrix must be semi-laplacian; the identity is only claimed there.
pub fn forest_sum<T: Ring>(m: &Matrix<T>, u: &VertexSubset, w: &VertexSubset) -> Result<T> {
    forest_sum_with_cap(m, u, w, DEFAULT_ENUM_CAP)
}

pub fn forest_sum_with_cap<T: Ring>(
    m: &Matrix<T>,
    u: &VertexSubset,
    w: &VertexSubset,
    cap: usize,
) -> Result<T> {
    check_semi_laplacian(m)?;
    let signed = signed_forests_with_cap(m.rows(), u, w, cap)?;
    forest_sum_over(&signed, m)
}

/// Outcome of evaluating both sides of the identity for one (M, U, W).
#[derive(Debug, Clone)]
pub struct VerificationReport<T> {
    pub n: usize,
    pub u: VertexSubset,
    pub w: VertexSubset,
    pub forest_count: usize,
    pub lhs: T,
    pub rhs: T,
    pub matched: bool,
    pub elapsed: Duration,
}

/// Compares det of the (W, U)-deleted minor against the forest sum.
pub fn verify_identity(
    m: &RationalMatrix,
    u: &VertexSubset,
    w: &VertexSubset,
) -> Result<VerificationReport<Rational>> {
    verify_identity_with_cap(m, u, w, DEFAULT_ENUM_CAP)
}

pub fn verify_identity_with_cap(
    m: &RationalMatrix,
    u: &VertexSubset,
    w: &VertexSubset,
    cap: usize,
) -> Result<VerificationReport<Rational>> {
    let start = Instant::now();
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "identity verification requires a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    check_semi_laplacian(m)?;
    let n = m.rows();
    let signed = signed_forests_with_cap(n, u, w, cap)?;
    let lhs = det_exact(&m.minor(w, u)?)?;
    let rhs = forest_sum_over(&signed, m)?;
    Ok(VerificationReport {
        n,
        u: u.clone(),
        w: w.clone(),
        forest_count: signed.len(),
        matched: lhs == rhs,
        lhs,
        rhs,
        elapsed: start.elapsed(),
    })
}

/// The n x n matrix whose off-diagonal entries are the formal variables
/// x_{ij} and whose diagonal entries are the negated column sums, so every
/// column sums to the zero polynomial.
pub fn generic_semi_laplacian(n: usize) -> Result<PolyMatrix> {
    generic_semi_laplacian_with_cap(n, DEFAULT_SYMBOLIC_CAP)
}

pub fn generic_semi_laplacian_with_cap(n: usize, cap: usize) -> Result<PolyMatrix> {
    if n == 0 {
        return Err(Error::Domain("matrix size must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::ResourceGuard(format!(
            "n = {n} exceeds the symbolic cap {cap}"
        )));
    }
    let mut m = Matrix::filled(n, n, EdgePolynomial::constant_in(n, 0));
    for j in 1..=n {
        let mut diag = EdgePolynomial::constant_in(n, 0);
        for i in 1..=n {
            if i != j {
                let v = EdgePolynomial::variable(n, i, j)?;
                m[(i, j)] = v.clone();
                diag = diag - v;
            }
        }
        m[(j, j)] = diag;
    }
    Ok(m)
}

/// Verifies the identity as an exact polynomial equality at the generic
/// semi-laplacian matrix: cofactor-expanded minor determinant against the
/// symbolic forest sum.
pub fn symbolic_verify(
    n: usize,
    u: &VertexSubset,
    w: &VertexSubset,
) -> Result<VerificationReport<EdgePolynomial>> {
    symbolic_verify_with_cap(n, u, w, DEFAULT_SYMBOLIC_CAP)
}

pub fn symbolic_verify_with_cap(
    n: usize,
    u: &VertexSubset,
    w: &VertexSubset,
    cap: usize,
) -> Result<VerificationReport<EdgePolynomial>> {
    let start = Instant::now();
    let gm = generic_semi_laplacian_with_cap(n, cap)?;
    let signed = signed_forests_with_cap(n, u, w, cap)?;
    // Widening by a full-width zero keeps exponent vectors at length n(n-1)
    // even when a side degenerates to a constant (the k = n case).
    let wide = EdgePolynomial::constant_in(n, 0);
    let lhs = wide.clone() + det_cofactor(&gm.minor(w, u)?)?;
    let rhs = wide + forest_sum_over(&signed, &gm)?;
    Ok(VerificationReport {
        n,
        u: u.clone(),
        w: w.clone(),
        forest_count: signed.len(),
        matched: lhs == rhs,
        lhs,
        rhs,
        elapsed: start.elapsed(),
    })
}

/// A tangent direction: raise entry (i, j), lower entry (w0, j). On the
/// free off-diagonal variables this is the operator d/dx_ij - d/dx_w0j.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Direction {
    pub i: Vertex,
    pub j: Vertex,
    pub w0: Vertex,
}

fn validate_direction(
    dir: Direction,
    u: &VertexSubset,
    w: &VertexSubset,
    n: usize,
) -> Result<()> {
    for (label, v) in [("i", dir.i), ("j", dir.j), ("w0", dir.w0)] {
        if v == 0 || v > n {
            return Err(Error::Index(format!("{label} = {v} out of range 1..={n}")));
        }
    }
    if u.ambient() != n || w.ambient() != n {
        return Err(Error::Contract(format!(
            "subsets over {} and {} vertices used with n = {}",
            u.ambient(),
            w.ambient(),
            n
        )));
    }
    if dir.i == dir.j {
        return Err(Error::Contract(format!(
            "direction needs i != j: the diagonal entry ({0},{0}) is not a free variable",
            dir.i
        )));
    }
    if dir.w0 == dir.j {
        return Err(Error::Contract(format!(
            "direction needs w0 != j: the diagonal entry ({0},{0}) is not a free variable",
            dir.j
        )));
    }
    if !w.contains(dir.w0) {
        return Err(Error::Contract(format!(
            "w0 = {} must be a member of W = {}",
            dir.w0, w
        )));
    }
    Ok(())
}

/// Applies the direction's operator to the symbolic forest-sum polynomial.
/// No membership constraints on i and j beyond i != j: when j is in U the
/// result is zero because no forest has an edge into a root, and when i is
/// in W the two derivative halves cancel term by term.
pub fn partial_forest_sum(
    dir: Direction,
    u: &VertexSubset,
    w: &VertexSubset,
    n: usize,
) -> Result<EdgePolynomial> {
    partial_forest_sum_with_cap(dir, u, w, n, DEFAULT_SYMBOLIC_CAP)
}

pub fn partial_forest_sum_with_cap(
    dir: Direction,
    u: &VertexSubset,
    w: &VertexSubset,
    n: usize,
    cap: usize,
) -> Result<EdgePolynomial> {
    validate_direction(dir, u, w, n)?;
    let gm = generic_semi_laplacian_with_cap(n, cap)?;
    let signed = signed_forests_with_cap(n, u, w, cap)?;
    let s = EdgePolynomial::constant_in(n, 0) + forest_sum_over(&signed, &gm)?;
    let d_ij = s.derivative(var_index(n, dir.i, dir.j)?);
    let d_w0j = s.derivative(var_index(n, dir.w0, dir.j)?);
    Ok(d_ij - d_w0j)
}

/// The same directional derivative expanded combinatorially: a sum over the
/// forests from U+{j} to W+{i}, each weighted by the descendant sign of
/// (i, j) and the sign of its gluing. Requires i outside W and j outside U.
pub fn forest_derivative_expansion(
    dir: Direction,
    u: &VertexSubset,
    w: &VertexSubset,
    n: usize,
) -> Result<EdgePolynomial> {
    forest_derivative_expansion_with_cap(dir, u, w, n, DEFAULT_SYMBOLIC_CAP)
}

pub fn forest_derivative_expansion_with_cap(
    dir: Direction,
    u: &VertexSubset,
    w: &VertexSubset,
    n: usize,
    cap: usize,
) -> Result<EdgePolynomial> {
    validate_direction(dir, u, w, n)?;
    if w.contains(dir.i) {
        return Err(Error::Contract(format!(
            "i = {} must lie outside W = {}",
            dir.i, w
        )));
    }
    if u.contains(dir.j) {
        return Err(Error::Contract(format!(
            "j = {} must lie outside U = {}",
            dir.j, u
        )));
    }
    let gm = generic_semi_laplacian_with_cap(n, cap)?;
    let u_big = u.with_inserted(dir.j)?;
    let w_big = w.with_inserted(dir.i)?;
    let mut acc = EdgePolynomial::constant_in(n, 0);
    for f in &enumerate_forests_with_cap(n, &u_big, &w_big, cap)? {
        let glued = glue(f, u, w, dir.i, dir.j, dir.w0)?;
        let sign = epsilon_double_prime(f, dir.i, dir.j)? * epsilon(u, w, &glued)?;
        acc = acc + sign.apply(forest_monomial(f, &gm)?);
    }
    Ok(acc)
}

/// The direction's operator applied to the symbolic minor determinant.
/// Internally cross-checked against the single-cofactor form, which this
/// derivative must equal entry by entry.
pub fn partial_minor_det(
    dir: Direction,
    u: &VertexSubset,
    w: &VertexSubset,
    n: usize,
) -> Result<EdgePolynomial> {
    partial_minor_det_with_cap(dir, u, w, n, DEFAULT_SYMBOLIC_CAP)
}

pub fn partial_minor_det_with_cap(
    dir: Direction,
    u: &VertexSubset,
    w: &VertexSubset,
    n: usize,
    cap: usize,
) -> Result<EdgePolynomial> {
    validate_direction(dir, u, w, n)?;
    let gm = generic_semi_laplacian_with_cap(n, cap)?;
    let d = {
        let dpoly = EdgePolynomial::constant_in(n, 0) + det_cofactor(&gm.minor(w, u)?)?;
        let d_ij = dpoly.derivative(var_index(n, dir.i, dir.j)?);
        let d_w0j = dpoly.derivative(var_index(n, dir.w0, dir.j)?);
        d_ij - d_w0j
    };
    let alt = minor_derivative_via_cofactor_with_cap(dir.i, dir.j, u, w, n, cap)?;
    if d != alt {
        return Err(Error::Internal(
            "directional derivative of the minor determinant disagrees with its cofactor form"
                .into(),
        ));
    }
    Ok(d)
}

/// The position-signed determinant of the larger minor: the sign of entry
/// (i, j)'s slot inside the (W, U)-deleted matrix times det of the matrix
/// with row i and column j additionally deleted.
pub fn minor_derivative_via_cofactor(
    i: Vertex,
    j: Vertex,
    u: &VertexSubset,
    w: &VertexSubset,
    n: usize,
) -> Result<EdgePolynomial> {
    minor_derivative_via_cofactor_with_cap(i, j, u, w, n, DEFAULT_SYMBOLIC_CAP)
}

pub fn minor_derivative_via_cofactor_with_cap(
    i: Vertex,
    j: Vertex,
    u: &VertexSubset,
    w: &VertexSubset,
    n: usize,
    cap: usize,
) -> Result<EdgePolynomial> {
    if u.ambient() != n || w.ambient() != n {
        return Err(Error::Contract(format!(
            "subsets over {} and {} vertices used with n = {}",
            u.ambient(),
            w.ambient(),
            n
        )));
    }
    let gm = generic_semi_laplacian_with_cap(n, cap)?;
    let sign = epsilon_prime(i, j, u, w)?;
    let big = gm.minor(&w.with_inserted(i)?, &u.with_inserted(j)?)?;
    Ok(EdgePolynomial::constant_in(n, 0) + sign.apply(det_cofactor(&big)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzFailure {
    pub n: usize,
    pub u: Vec<Vertex>,
    pub w: Vec<Vertex>,
    pub trial: usize,
}

#[derive(Debug, Clone)]
pub struct FuzzSummary {
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub entry_bound: i64,
    pub checks: usize,
    pub failures: Vec<FuzzFailure>,
}

/// Runs the identity over every (U, W) pair for every n up to n_max, with
/// `trials` seeded random integer matrices per n. Fully deterministic for a
/// given seed. The enumeration per pair happens once and is reused.
pub fn fuzz_campaign(
    n_max: usize,
    trials: usize,
    seed: u64,
    entry_bound: i64,
) -> Result<FuzzSummary> {
    fuzz_campaign_with_cap(n_max, trials, seed, entry_bound, DEFAULT_ENUM_CAP)
}

pub fn fuzz_campaign_with_cap(
    n_max: usize,
    trials: usize,
    seed: u64,
    entry_bound: i64,
    cap: usize,
) -> Result<FuzzSummary> {
    if n_max == 0 {
        return Err(Error::Domain("campaign needs n_max >= 1".into()));
    }
    if n_max > cap {
        return Err(Error::ResourceGuard(format!(
            "n_max = {n_max} exceeds the enumeration cap {cap}"
        )));
    }
    let mut checks = 0usize;
    let mut failures = Vec::new();
    for n in 1..=n_max {
        let mut pairs = Vec::new();
        for k in 1..=n {
            for u in subsets_of_size(n, k) {
                for w in subsets_of_size(n, k) {
                    let signed = signed_forests_with_cap(n, &u, &w, cap)?;
                    pairs.push((u.clone(), w, signed));
                }
            }
        }
        for trial in 0..trials {
            let m =
                random_semi_laplacian(n, entry_bound, mix_seed(seed, n as u64, trial as u64))?;
            for (u, w, signed) in &pairs {
                let lhs = det_exact(&m.minor(w, u)?)?;
                let rhs = forest_sum_over(signed, &m)?;
                checks += 1;
                if lhs != rhs {
                    failures.push(FuzzFailure {
                        n,
                        u: u.members().to_vec(),
                        w: w.members().to_vec(),
                        trial,
                    });
                }
            }
        }
    }
    Ok(FuzzSummary { n_max, trials, seed, entry_bound, checks, failures })
}

/// Builds the semi-laplacian of a weighted digraph column by column: edge
/// (u, v) of weight c adds c at entry (u, v) and subtracts c at (v, v).
/// Self-loops contribute nothing and are skipped.
pub fn semi_laplacian_from_digraph(
    n: usize,
    edges: &[WeightedEdge],
) -> Result<RationalMatrix> {
    if n == 0 {
        return Err(Error::Domain("graph must have at least 1 vertex".into()));
    }
    let mut m = Matrix::filled(n, n, Rational::zero());
    for (u, v, weight) in edges {
        for (label, vertex) in [("tail", *u), ("head", *v)] {
            if vertex == 0 || vertex > n {
                return Err(Error::Index(format!(
                    "edge {label} {vertex} out of range 1..={n}"
                )));
            }
        }
        if u == v {
            continue;
        }
        m[(*u, *v)] = &m[(*u, *v)] + weight;
        m[(*v, *v)] = &m[(*v, *v)] - weight;
    }
    Ok(m)
}

#[derive(Debug, Clone)]
pub struct TreeEnumeration {
    pub tree_count: usize,
    pub weight_sum: Rational,
    pub signed_sum: Rational,
}

#[derive(Debug, Clone)]
pub struct TreeCountReport {
    pub n: usize,
    pub root: Vertex,
    pub det_minor: Rational,
    /// Present when n is within the enumeration cap.
    pub enumeration: Option<TreeEnumeration>,
    pub matched: Option<bool>,
}

/// Spanning-tree count and weight of a digraph, both by determinant and
/// (within the cap) by exhaustive enumeration of trees rooted at `root`.
pub fn count_trees(
    n: usize,
    edges: &[WeightedEdge],
    root: Vertex,
) -> Result<TreeCountReport> {
    count_trees_with_cap(n, edges, root, DEFAULT_ENUM_CAP)
}

pub fn count_trees_with_cap(
    n: usize,
    edges: &[WeightedEdge],
    root: Vertex,
    cap: usize,
) -> Result<TreeCountReport> {
    let m = semi_laplacian_from_digraph(n, edges)?;
    if root == 0 || root > n {
        return Err(Error::Index(format!("root {root} out of range 1..={n}")));
    }
    let sub = VertexSubset::new(n, vec![root])?;
    let det_minor = det_exact(&m.minor(&sub, &sub)?)?;
    if n > cap {
        return Ok(TreeCountReport { n, root, det_minor, enumeration: None, matched: None });
    }
    let signed = signed_forests_with_cap(n, &sub, &sub, cap)?;
    let mut tree_count = 0usize;
    let mut weight_sum = Rational::zero();
    let mut signed_sum = Rational::zero();
    for t in &signed {
        // Trees using an absent edge pick up a zero factor; only trees the
        // graph actually supports are counted.
        let monomial = forest_monomial(&t.forest, &m)?;
        if monomial.is_zero() {
            continue;
        }
        tree_count += 1;
        weight_sum += monomial.clone();
        signed_sum += t.epsilon.apply(monomial);
    }
    let matched = det_minor == signed_sum;
    Ok(TreeCountReport {
        n,
        root,
        det_minor,
        enumeration: Some(TreeEnumeration { tree_count, weight_sum, signed_sum }),
        matched: Some(matched),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn rat(v: i64) -> Rational {
        Rational::from(BigInt::from(v))
    }

    fn int_matrix(rows: Vec<Vec<i64>>) -> RationalMatrix {
        Matrix::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect(),
        )
        .unwrap()
    }

    fn subset(n: usize, members: &[Vertex]) -> VertexSubset {
        VertexSubset::new(n, members.to_vec()).unwrap()
    }

    #[test]
    fn monomial_examples() {
        let m = int_matrix(vec![vec![3, 5], vec![-3, -5]]);
        assert_eq!(forest_monomial(&OrientedForest::new(2), &m).unwrap(), rat(1));
        let f = OrientedForest::from_edges(2, &[(1, 2)]).unwrap();
        assert_eq!(forest_monomial(&f, &m).unwrap(), rat(5));
        let chain = OrientedForest::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(forest_monomial(&chain, &m).is_err(), "size mismatch");
    }

    #[test]
    fn forest_sum_two_by_two() {
        let m = int_matrix(vec![vec![3, 5], vec![-3, -5]]);
        let u = subset(2, &[1]);
        // One forest {(1,2)} with sign -1: the sum is -M_12 = -5 = M_22.
        assert_eq!(forest_sum(&m, &u, &u).unwrap(), rat(-5));
        let report = verify_identity(&m, &u, &u).unwrap();
        assert!(report.matched);
        assert_eq!(report.lhs, rat(-5));
        assert_eq!(report.forest_count, 1);
    }

    #[test]
    fn forest_sum_full_subsets_is_one() {
        for n in 1..=4 {
            let m = random_semi_laplacian(n, 9, 11).unwrap();
            let full = VertexSubset::full(n);
            assert_eq!(forest_sum(&m, &full, &full).unwrap(), rat(1));
        }
    }

    #[test]
    fn forest_sum_rejects_unbalanced_matrix() {
        let m = int_matrix(vec![vec![1, 0], vec![0, 1]]);
        let u = subset(2, &[1]);
        let err = forest_sum(&m, &u, &u).unwrap_err();
        assert!(err.to_string().contains("column 1"), "got: {err}");
    }

    #[test]
    fn zero_matrix_matches_trivially() {
        let m = int_matrix(vec![vec![0; 3], vec![0; 3], vec![0; 3]]);
        let report = verify_identity(&m, &subset(3, &[2]), &subset(3, &[3])).unwrap();
        assert!(report.matched);
        assert_eq!(report.lhs, rat(0));
        assert_eq!(report.rhs, rat(0));
    }

    #[test]
    fn generic_matrix_shape() {
        let m1 = generic_semi_laplacian(1).unwrap();
        assert!(m1[(1, 1)].is_zero());

        let m2 = generic_semi_laplacian(2).unwrap();
        let x12 = EdgePolynomial::variable(2, 1, 2).unwrap();
        let x21 = EdgePolynomial::variable(2, 2, 1).unwrap();
        assert_eq!(m2[(1, 1)], -x21.clone());
        assert_eq!(m2[(1, 2)], x12.clone());
        assert_eq!(m2[(2, 1)], x21);
        assert_eq!(m2[(2, 2)], -x12);

        for n in 1..=4 {
            let m = generic_semi_laplacian(n).unwrap();
            assert!(m.is_semi_laplacian().unwrap(), "n = {n}");
        }
        assert!(matches!(
            generic_semi_laplacian(5),
            Err(Error::ResourceGuard(_))
        ));
    }

    #[test]
    fn symbolic_verify_small_cases() {
        let u = subset(1, &[1]);
        let report = symbolic_verify(1, &u, &u).unwrap();
        assert!(report.matched);
        assert_eq!(report.lhs, EdgePolynomial::one());

        let u = subset(2, &[1]);
        let report = symbolic_verify(2, &u, &u).unwrap();
        assert!(report.matched);
        let expected = -EdgePolynomial::variable(2, 1, 2).unwrap();
        assert_eq!(report.lhs, expected);
        assert_eq!(report.rhs, expected);
    }

    #[test]
    fn degenerate_directions_vanish() {
        // j in U: forests have no edge into a root.
        let u = subset(3, &[1]);
        let w = subset(3, &[2]);
        let d = partial_forest_sum(Direction { i: 3, j: 1, w0: 2 }, &u, &w, 3).unwrap();
        assert!(d.is_zero());

        // i in W: the two halves of the operator cancel in pairs.
        let d = partial_forest_sum(Direction { i: 2, j: 3, w0: 2 }, &u, &w, 3).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn derivative_identity_spot_checks() {
        for n in 2..=3 {
            for ui in 1..=n {
                for wi in 1..=n {
                    let u = subset(n, &[ui]);
                    let w = subset(n, &[wi]);
                    for i in 1..=n {
                        for j in 1..=n {
                            if i == j || w.contains(i) || u.contains(j) || wi == j {
                                continue;
                            }
                            let dir = Direction { i, j, w0: wi };
                            let lhs = partial_minor_det(dir, &u, &w, n).unwrap();
                            let rhs = partial_forest_sum(dir, &u, &w, n).unwrap();
                            let expansion =
                                forest_derivative_expansion(dir, &u, &w, n).unwrap();
                            assert_eq!(lhs, rhs, "n={n} U={u} W={w} {dir:?}");
                            assert_eq!(rhs, expansion, "n={n} U={u} W={w} {dir:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cofactor_form_at_largest_k_is_a_signed_constant() {
        // k = n-1: deleting one more row and column leaves a 0x0 minor, so
        // the cofactor form is the insertion sign times 1.
        let u = subset(2, &[1]);
        let d = minor_derivative_via_cofactor(2, 2, &u, &u, 2).unwrap();
        assert_eq!(d, EdgePolynomial::constant_in(2, 1));
    }

    #[test]
    fn fuzz_campaign_is_deterministic_and_clean() {
        let a = fuzz_campaign(2, 3, 7, 9).unwrap();
        let b = fuzz_campaign(2, 3, 7, 9).unwrap();
        assert_eq!(a.checks, b.checks);
        assert_eq!(a.failures, b.failures);
        assert!(a.failures.is_empty());
        // n = 1 has one pair; n = 2 has five; three trials each.
        assert_eq!(a.checks, (1 + 5) * 3);

        let single = fuzz_campaign(1, 1, 0, 9).unwrap();
        assert_eq!(single.checks, 1);
        assert!(single.failures.is_empty());
    }

    #[test]
    fn digraph_laplacian_columns_sum_to_zero() {
        let edges = vec![
            (1, 2, rat(2)),
            (2, 1, rat(1)),
            (1, 3, rat(4)),
            (3, 3, rat(9)), // self-loop: ignored
        ];
        let m = semi_laplacian_from_digraph(3, &edges).unwrap();
        assert!(m.is_semi_laplacian().unwrap());
        assert_eq!(m[(1, 2)], rat(2));
        assert_eq!(m[(2, 2)], rat(-2));
        // Column 3 holds only the (1,3) edge; the self-loop left no trace.
        assert_eq!(m[(3, 3)], rat(-4));
        assert!(semi_laplacian_from_digraph(2, &[(1, 3, rat(1))]).is_err());
    }

    #[test]
    fn tree_counts_on_small_graphs() {
        // Complete digraph on 4 vertices, unit weights: 16 spanning trees.
        let mut edges = Vec::new();
        for a in 1..=4 {
            for b in 1..=4 {
                if a != b {
                    edges.push((a, b, rat(1)));
                }
            }
        }
        let report = count_trees(4, &edges, 1).unwrap();
        let enumeration = report.enumeration.unwrap();
        assert_eq!(enumeration.tree_count, 16);
        assert_eq!(enumeration.weight_sum, rat(16));
        assert_eq!(report.matched, Some(true));

        // Path 1 - 2 - 3 with unit weights in both directions: one tree.
        let edges = vec![
            (1, 2, rat(1)),
            (2, 1, rat(1)),
            (2, 3, rat(1)),
            (3, 2, rat(1)),
        ];
        let report = count_trees(3, &edges, 1).unwrap();
        assert_eq!(report.enumeration.unwrap().tree_count, 1);
        assert_eq!(report.matched, Some(true));

        // Single vertex: the 0x0 minor has determinant 1.
        let report = count_trees(1, &[], 1).unwrap();
        assert_eq!(report.det_minor, rat(1));
        assert_eq!(report.enumeration.unwrap().tree_count, 1);
        assert_eq!(report.matched, Some(true));
    }
}
