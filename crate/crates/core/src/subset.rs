use crate::error::{Error, Result};
use crate::Vertex;

/// An ordered subset of the vertex set `{1, ..., n}`.
///
/// Members are kept strictly increasing; all vertices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSubset {
    n: usize,
    members: Vec<Vertex>,
}

impl VertexSubset {
    /// Builds a subset of `{1, ..., n}`. Input order does not matter;
    /// duplicates and out-of-range members are rejected.
    pub fn new(n: usize, mut members: Vec<Vertex>) -> Result<Self> {
        members.sort_unstable();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::Contract(format!(
                    "duplicate member {} in vertex subset",
                    pair[0]
                )));
            }
        }
        for &v in &members {
            if v == 0 || v > n {
                return Err(Error::Index(format!(
                    "vertex {v} out of range 1..={n}"
                )));
            }
        }
        Ok(Self { n, members })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, members: Vec::new() }
    }

    /// The full set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        Self { n, members: (1..=n).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Members in increasing order.
    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    /// Sum of the members, as used in the sign exponents.
    pub fn member_sum(&self) -> usize {
        self.members.iter().sum()
    }

    /// Number of members strictly below `v`.
    pub fn count_below(&self, v: Vertex) -> usize {
        self.members.iter().take_while(|&&m| m < v).count()
    }

    /// The subset with `v` inserted; errors if `v` is already present.
    pub fn with_inserted(&self, v: Vertex) -> Result<Self> {
        if v == 0 || v > self.n {
            return Err(Error::Index(format!(
                "vertex {v} out of range 1..={}",
                self.n
            )));
        }
        if self.contains(v) {
            return Err(Error::Contract(format!(
                "vertex {v} already a member of the subset"
            )));
        }
        let mut members = self.members.clone();
        let pos = members.partition_point(|&m| m < v);
        members.insert(pos, v);
        Ok(Self { n: self.n, members })
    }

    /// A copy with member `v` removed; `v` must be a member.
    pub fn with_removed(&self, v: Vertex) -> Result<Self> {
        match self.members.binary_search(&v) {
            Ok(pos) => {
                let mut members = self.members.clone();
                members.remove(pos);
                Ok(Self { n: self.n, members })
            }
            Err(_) => Err(Error::Contract(format!(
                "vertex {v} is not a member of the subset"
            ))),
        }
    }

    /// Vertices of the ambient set not in the subset, increasing.
    pub fn complement(&self) -> Vec<Vertex> {
        (1..=self.n).filter(|&v| !self.contains(v)).collect()
    }
}

impl std::fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (idx, v) in self.members.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// All size-`k` subsets of `{1, ..., n}` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<VertexSubset> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<Vertex>, out: &mut Vec<VertexSubset>) {
        if current.len() == k {
            out.push(VertexSubset { n, members: current.clone() });
            return;
        }
        let remaining = k - current.len();
        for v in start..=n {
            if n - v + 1 < remaining {
                break;
            }
            current.push(v);
            rec(n, k, v + 1, current, out);
            current.pop();
        }
    }
    rec(n, k, 1, &mut current, &mut out);
    out
}
