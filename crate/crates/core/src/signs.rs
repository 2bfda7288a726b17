//! The sign attached to a forest between two vertex subsets, and the two
//! auxiliary signs that appear in its edge-insertion recurrence.

use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};
use crate::forest::{induced_bijection, is_valid_forest, OrientedForest, UwBijection};
use crate::subset::VertexSubset;
use crate::{Ring, Vertex};

/// A value in {+1, -1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// (-1)^e
    pub fn from_exponent(e: usize) -> Self {
        if e.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// x or -x according to the sign.
    pub fn apply<T: Ring>(self, x: T) -> T {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Number of pairs p < q with seq[p] > seq[q].
pub fn count_inversions(seq: &[Vertex]) -> usize {
    let mut count = 0;
    for p in 0..seq.len() {
        for q in p + 1..seq.len() {
            if seq[p] > seq[q] {
                count += 1;
            }
        }
    }
    count
}

/// Sign of the permutation sorting (pi(u_1), ..., pi(u_k)) where
/// u_1 < ... < u_k are the members of U: (-1)^inversions.
pub fn sgn_bijection(u: &VertexSubset, pi: &UwBijection) -> Result<Sign> {
    if pi.domain() != u.members() {
        return Err(Error::Contract(format!(
            "bijection domain {:?} does not match U = {}",
            pi.domain(),
            u
        )));
    }
    Ok(Sign::from_exponent(count_inversions(&pi.images())))
}

/// The forest sign: (-1)^(n + |U|) * (-1)^(sum U + sum W) * sgn(pi_F).
pub fn epsilon(u: &VertexSubset, w: &VertexSubset, f: &OrientedForest) -> Result<Sign> {
    let pi = induced_bijection(f, u, w)?;
    let fixed = Sign::from_exponent(f.n() + u.len() + u.member_sum() + w.member_sum());
    Ok(fixed * sgn_bijection(u, &pi)?)
}

fn check_outside(
    label_vertex: &str,
    v: Vertex,
    label_set: &str,
    s: &VertexSubset,
) -> Result<()> {
    if v == 0 || v > s.ambient() {
        return Err(Error::Index(format!(
            "vertex {label_vertex} = {v} out of range 1..={}",
            s.ambient()
        )));
    }
    if s.contains(v) {
        return Err(Error::Contract(format!(
            "{label_vertex} = {v} must lie outside {label_set} = {s}"
        )));
    }
    Ok(())
}

/// The subset-dependent sign of inserting row i and column j:
/// (-1)^(i + |{w in W : w < i}| + j + |{u in U : u < j}|).
/// Requires i outside W and j outside U.
pub fn epsilon_prime(
    i: Vertex,
    j: Vertex,
    u: &VertexSubset,
    w: &VertexSubset,
) -> Result<Sign> {
    if u.ambient() != w.ambient() {
        return Err(Error::Contract(format!(
            "U over {} vertices paired with W over {}",
            u.ambient(),
            w.ambient()
        )));
    }
    check_outside("i", i, "W", w)?;
    check_outside("j", j, "U", u)?;
    Ok(Sign::from_exponent(
        i + w.count_below(i) + j + u.count_below(j),
    ))
}

/// Equivalent form of `epsilon_prime` whose exponent is the 1-based row and
/// column position of entry (i, j) inside the matrix with rows W and columns
/// U deleted: (-1)^((i - |{w < i}|) + (j - |{u < j}|)). The two exponents
/// differ by twice a count, so the signs agree on every valid input.
pub fn epsilon_prime_position_form(
    i: Vertex,
    j: Vertex,
    u: &VertexSubset,
    w: &VertexSubset,
) -> Result<Sign> {
    if u.ambient() != w.ambient() {
        return Err(Error::Contract(format!(
            "U over {} vertices paired with W over {}",
            u.ambient(),
            w.ambient()
        )));
    }
    check_outside("i", i, "W", w)?;
    check_outside("j", j, "U", u)?;
    Ok(Sign::from_exponent(
        (i - w.count_below(i)) + (j - u.count_below(j)),
    ))
}

/// -1 iff i is a (strict) descendant of j in F, else +1.
pub fn epsilon_double_prime(f: &OrientedForest, i: Vertex, j: Vertex) -> Result<Sign> {
    if f.is_descendant(i, j)? {
        Ok(Sign::Minus)
    } else {
        Ok(Sign::Plus)
    }
}

/// A forest together with its subset pair and sign; construction computes
/// the sign, so the stored value always matches `epsilon(u, w, forest)`.
#[derive(Debug, Clone)]
pub struct SignedForestTriple {
    pub u: VertexSubset,
    pub w: VertexSubset,
    pub forest: OrientedForest,
    pub epsilon: Sign,
}

impl SignedForestTriple {
    pub fn new(u: VertexSubset, w: VertexSubset, forest: OrientedForest) -> Result<Self> {
        if !is_valid_forest(&forest, &u, &w)? {
            return Err(Error::Contract(format!(
                "graph with edges {:?} is not a forest from {} to {}",
                forest.edges(),
                u,
                w
            )));
        }
        let epsilon = epsilon(&u, &w, &forest)?;
        Ok(Self { u, w, forest, epsilon })
    }
}
