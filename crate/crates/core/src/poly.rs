//! Sparse multivariate polynomials with integer coefficients in the formal
//! off-diagonal entry variables x_{ij} of an n x n matrix.
//!
//! Exponent vectors are dense and have fixed length n(n-1), indexed by the
//! ordered pairs (i, j), i != j, sorted by (i, j). Polynomials built by the
//! nullary `Zero`/`One` constructors carry zero variables and act as plain
//! constants: arithmetic and equality lift them into the variable set of
//! the other operand. Combining two polynomials over distinct non-constant
//! variable sets is a programming error and panics.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{Rational, Vertex};

/// Number of formal variables for an n x n matrix: the off-diagonal count.
pub fn var_count(n: usize) -> usize {
    n * n.saturating_sub(1)
}

/// Position of x_{ij} in the canonical variable order.
pub fn var_index(n: usize, i: Vertex, j: Vertex) -> Result<usize> {
    if i == 0 || i > n || j == 0 || j > n {
        return Err(Error::Index(format!(
            "variable pair ({i},{j}) out of range 1..={n}"
        )));
    }
    if i == j {
        return Err(Error::Index(format!(
            "diagonal pair ({i},{i}) has no formal variable"
        )));
    }
    Ok((i - 1) * (n - 1) + if j < i { j - 1 } else { j - 2 })
}

/// Inverse of `var_index`.
pub fn var_pair(n: usize, idx: usize) -> Result<(Vertex, Vertex)> {
    if idx >= var_count(n) {
        return Err(Error::Index(format!(
            "variable index {idx} out of range for n = {n}"
        )));
    }
    let i = idx / (n - 1) + 1;
    let p = idx % (n - 1);
    let j = if p + 1 < i { p + 1 } else { p + 2 };
    Ok((i, j))
}

/// Ambient matrix size recovered from a variable count, when one exists.
fn ambient_from_nvars(nvars: usize) -> Option<usize> {
    let mut n = 1usize;
    loop {
        let c = var_count(n);
        if c == nvars {
            return Some(n);
        }
        if c > nvars {
            return None;
        }
        n += 1;
    }
}

#[derive(Debug, Clone)]
pub struct EdgePolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl EdgePolynomial {
    fn normalized(nvars: usize, mut terms: BTreeMap<Vec<u32>, BigInt>) -> Self {
        terms.retain(|exps, coeff| {
            debug_assert_eq!(exps.len(), nvars);
            !coeff.is_zero()
        });
        Self { nvars, terms }
    }

    /// A constant with no variables attached.
    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { nvars: 0, terms }
    }

    /// A constant carrying the full variable set for an n x n matrix, so its
    /// exponent vectors have length n(n-1).
    pub fn constant_in<C: Into<BigInt>>(n: usize, c: C) -> Self {
        let c = c.into();
        let nvars = var_count(n);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Self { nvars, terms }
    }

    /// The variable x_{ij} for an n x n matrix.
    pub fn variable(n: usize, i: Vertex, j: Vertex) -> Result<Self> {
        let idx = var_index(n, i, j)?;
        let mut exps = vec![0u32; var_count(n)];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, BigInt::one());
        Ok(Self { nvars: var_count(n), terms })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing exponent-vector order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// The value when the polynomial has no variable occurrences.
    pub fn constant_value(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            let (exps, coeff) = self.terms.iter().next().expect("one term");
            if exps.iter().all(|&e| e == 0) {
                return Some(coeff.clone());
            }
        }
        None
    }

    fn widened(&self, nvars: usize) -> Self {
        if self.nvars == nvars {
            return self.clone();
        }
        assert_eq!(
            self.nvars, 0,
            "cannot combine polynomials over {} and {} variables",
            self.nvars, nvars
        );
        let terms = self
            .terms
            .values()
            .map(|c| (vec![0u32; nvars], c.clone()))
            .collect();
        Self { nvars, terms }
    }

    fn unified(a: &Self, b: &Self) -> (Self, Self) {
        let nvars = a.nvars.max(b.nvars);
        (a.widened(nvars), b.widened(nvars))
    }

    /// Formal partial derivative with respect to the variable at `var`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(
            var < self.nvars,
            "derivative variable {var} out of range for {} variables",
            self.nvars
        );
        let mut terms = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let e = exps[var];
            if e == 0 {
                continue;
            }
            let mut lowered = exps.clone();
            lowered[var] = e - 1;
            terms.insert(lowered, coeff * BigInt::from(e));
        }
        Self::normalized(self.nvars, terms)
    }

    /// Exact evaluation at one rational value per variable.
    pub fn evaluate(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "{} values supplied for {} variables",
                values.len(),
                self.nvars
            )));
        }
        let mut acc = Rational::zero();
        for (exps, coeff) in &self.terms {
            let mut term = Rational::from(coeff.clone());
            for (v, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term *= &values[v];
                }
            }
            acc += term;
        }
        Ok(acc)
    }
}

impl PartialEq for EdgePolynomial {
    /// Structural equality; constants compare equal across variable sets.
    fn eq(&self, other: &Self) -> bool {
        if self.nvars == other.nvars {
            return self.terms == other.terms;
        }
        match (self.constant_value(), other.constant_value()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for EdgePolynomial {}

impl Add for EdgePolynomial {
    type Output = EdgePolynomial;

    fn add(self, rhs: EdgePolynomial) -> EdgePolynomial {
        let (mut a, b) = EdgePolynomial::unified(&self, &rhs);
        for (exps, coeff) in b.terms {
            let entry = a.terms.entry(exps).or_insert_with(BigInt::zero);
            *entry += coeff;
        }
        EdgePolynomial::normalized(a.nvars, a.terms)
    }
}

impl Sub for EdgePolynomial {
    type Output = EdgePolynomial;

    fn sub(self, rhs: EdgePolynomial) -> EdgePolynomial {
        self + (-rhs)
    }
}

impl Neg for EdgePolynomial {
    type Output = EdgePolynomial;

    fn neg(mut self) -> EdgePolynomial {
        for coeff in self.terms.values_mut() {
            *coeff = -(std::mem::take(coeff));
        }
        self
    }
}

impl Mul for EdgePolynomial {
    type Output = EdgePolynomial;

    fn mul(self, rhs: EdgePolynomial) -> EdgePolynomial {
        let (a, b) = EdgePolynomial::unified(&self, &rhs);
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exps: Vec<u32> =
                    ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let entry = terms.entry(exps).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        EdgePolynomial::normalized(a.nvars, terms)
    }
}

impl Zero for EdgePolynomial {
    fn zero() -> Self {
        EdgePolynomial::constant(0)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for EdgePolynomial {
    fn one() -> Self {
        EdgePolynomial::constant(1)
    }
}

impl fmt::Display for EdgePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ambient = ambient_from_nvars(self.nvars);
        for (pos, (exps, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = match ambient {
                    Some(n) => {
                        let (i, j) = var_pair(n, v).expect("index within range");
                        format!("x_{i}_{j}")
                    }
                    None => format!("x{v}"),
                };
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
