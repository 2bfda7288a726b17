//! Oriented forests on the vertex set `{1, ..., n}` in parent-map form,
//! with validity checking, exhaustive enumeration, and path queries.

use crate::error::{Error, Result};
use crate::subset::VertexSubset;
use crate::{Vertex, DEFAULT_ENUM_CAP};

/// An oriented graph where each vertex has at most one incoming edge,
/// stored as `parent[v] = u` meaning the edge (u, v) points from u into v.
///
/// Construction does not validate acyclicity: surgery on forests can pass
/// through graphs with cycles, which `is_valid_forest` rejects.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedForest {
    n: usize,
    parent: Vec<Option<Vertex>>,
}

impl OrientedForest {
    /// The edgeless graph on n vertices.
    pub fn new(n: usize) -> Self {
        Self { n, parent: vec![None; n] }
    }

    /// Builds from oriented edges (u, v), u the parent of v.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut f = Self::new(n);
        for &(u, v) in edges {
            f.check_vertex(u)?;
            f.check_vertex(v)?;
            if f.parent[v - 1].is_some() {
                return Err(Error::Contract(format!(
                    "vertex {v} has more than one incoming edge"
                )));
            }
            f.parent[v - 1] = Some(u);
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::Index(format!(
                "vertex {v} out of range 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn parent_of(&self, v: Vertex) -> Result<Option<Vertex>> {
        self.check_vertex(v)?;
        Ok(self.parent[v - 1])
    }

    pub(crate) fn set_parent(&mut self, v: Vertex, parent: Option<Vertex>) {
        self.parent[v - 1] = parent;
    }

    /// Edges (parent, child), ordered by child.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        (1..=self.n)
            .filter_map(|v| self.parent[v - 1].map(|u| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.parent.iter().filter(|p| p.is_some()).count()
    }

    /// Vertices with no incoming edge, ascending.
    pub fn roots(&self) -> Vec<Vertex> {
        (1..=self.n).filter(|&v| self.parent[v - 1].is_none()).collect()
    }

    /// True iff b is reachable from a along edge orientation; a = b counts
    /// as a length-0 path. Safe on cyclic graphs (walk capped at n steps).
    pub fn has_oriented_path(&self, a: Vertex, b: Vertex) -> Result<bool> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Ok(true);
        }
        let mut cur = b;
        for _ in 0..self.n {
            match self.parent[cur - 1] {
                Some(p) if p == a => return Ok(true),
                Some(p) => cur = p,
                None => return Ok(false),
            }
        }
        Ok(false)
    }

    /// True iff i != j and an oriented path runs from j to i.
    /// A vertex is not its own descendant.
    pub fn is_descendant(&self, i: Vertex, j: Vertex) -> Result<bool> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        Ok(i != j && self.has_oriented_path(j, i)?)
    }

    /// The root reached by following parents from v, or None on a cycle.
    fn root_of(&self, v: Vertex) -> Option<Vertex> {
        let mut cur = v;
        for _ in 0..=self.n {
            match self.parent[cur - 1] {
                Some(p) => cur = p,
                None => return Some(cur),
            }
        }
        None
    }
}

/// True iff G is a forest from U to W: acyclic, roots exactly U, and each
/// tree containing exactly one W-vertex. Since roots are the U-vertices and
/// every U-vertex is a root, each tree then holds exactly one U-vertex too.
pub fn is_valid_forest(g: &OrientedForest, u: &VertexSubset, w: &VertexSubset) -> Result<bool> {
    if u.ambient() != g.n() || w.ambient() != g.n() {
        return Err(Error::Contract(format!(
            "subsets over {} and {} vertices applied to a graph on {}",
            u.ambient(),
            w.ambient(),
            g.n()
        )));
    }
    if u.len() != w.len() {
        return Err(Error::Contract(format!(
            "|U| = {} and |W| = {} differ",
            u.len(),
            w.len()
        )));
    }
    if g.roots() != u.members() {
        return Ok(false);
    }
    let mut w_per_root = vec![0usize; g.n()];
    for v in 1..=g.n() {
        match g.root_of(v) {
            Some(r) => {
                if w.contains(v) {
                    w_per_root[r - 1] += 1;
                }
            }
            None => return Ok(false),
        }
    }
    Ok(u.iter().all(|r| w_per_root[r - 1] == 1))
}

/// All forests from U to W on n vertices, under the default size cap.
pub fn enumerate_forests(
    n: usize,
    u: &VertexSubset,
    w: &VertexSubset,
) -> Result<Vec<OrientedForest>> {
    enumerate_forests_with_cap(n, u, w, DEFAULT_ENUM_CAP)
}

/// All forests from U to W, in increasing lexicographic order of the parent
/// map. Exhaustive: every assignment of parents to the n-k non-root
/// vertices is generated and filtered through `is_valid_forest`.
pub fn enumerate_forests_with_cap(
    n: usize,
    u: &VertexSubset,
    w: &VertexSubset,
    cap: usize,
) -> Result<Vec<OrientedForest>> {
    if u.ambient() != n || w.ambient() != n {
        return Err(Error::Contract(format!(
            "subsets over {} and {} vertices used with n = {}",
            u.ambient(),
            w.ambient(),
            n
        )));
    }
    if u.len() != w.len() || u.is_empty() {
        return Err(Error::Contract(format!(
            "enumeration requires |U| = |W| >= 1, got {} and {}",
            u.len(),
            w.len()
        )));
    }
    if n > cap {
        return Err(Error::ResourceGuard(format!(
            "n = {n} exceeds the enumeration cap {cap}"
        )));
    }

    let free: Vec<Vertex> = u.complement();
    let mut out = Vec::new();
    let mut assignment: Vec<Vertex> = vec![1; free.len()];
    loop {
        let mut g = OrientedForest::new(n);
        for (t, &v) in free.iter().enumerate() {
            g.set_parent(v, Some(assignment[t]));
        }
        if is_valid_forest(&g, u, w)? {
            out.push(g);
        }
        // Odometer step, least-significant position last: yields increasing
        // lexicographic order on the parent map.
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if assignment[pos] < n {
                assignment[pos] += 1;
                for a in assignment[pos + 1..].iter_mut() {
                    *a = 1;
                }
                break;
            }
        }
    }
}

/// A bijection from U onto W, stored as (u, image) pairs with u ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UwBijection {
    pairs: Vec<(Vertex, Vertex)>,
}

impl UwBijection {
    pub fn new(pairs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        for window in pairs.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(Error::Contract(
                    "bijection domain must be strictly increasing".into(),
                ));
            }
        }
        let mut images: Vec<Vertex> = pairs.iter().map(|&(_, w)| w).collect();
        images.sort_unstable();
        if images.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::Contract("bijection images must be distinct".into()));
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> Vec<Vertex> {
        self.pairs.iter().map(|&(u, _)| u).collect()
    }

    /// Images listed in increasing order of their preimages.
    pub fn images(&self) -> Vec<Vertex> {
        self.pairs.iter().map(|&(_, w)| w).collect()
    }

    pub fn image_of(&self, u: Vertex) -> Option<Vertex> {
        self.pairs
            .binary_search_by_key(&u, |&(d, _)| d)
            .ok()
            .map(|k| self.pairs[k].1)
    }
}

/// The bijection sending each u in U to the unique W-vertex of u's tree.
pub fn induced_bijection(
    f: &OrientedForest,
    u: &VertexSubset,
    w: &VertexSubset,
) -> Result<UwBijection> {
    if !is_valid_forest(f, u, w)? {
        return Err(Error::Contract(format!(
            "graph with edges {:?} is not a forest from {} to {}",
            f.edges(),
            u,
            w
        )));
    }
    let mut image = vec![None; f.n()];
    for v in 1..=f.n() {
        if w.contains(v) {
            let r = f.root_of(v).expect("validity implies acyclic");
            image[r - 1] = Some(v);
        }
    }
    let pairs = u
        .iter()
        .map(|root| (root, image[root - 1].expect("validity implies one W-vertex per tree")))
        .collect();
    UwBijection::new(pairs)
}

/// A forest bundled with the subset pair it runs between and the bijection
/// it induces; construction re-derives and so guarantees the bijection.
#[derive(Debug, Clone)]
pub struct ForestCertificate {
    forest: OrientedForest,
    u: VertexSubset,
    w: VertexSubset,
    pi: UwBijection,
}

impl ForestCertificate {
    pub fn new(forest: OrientedForest, u: VertexSubset, w: VertexSubset) -> Result<Self> {
        let pi = induced_bijection(&forest, &u, &w)?;
        Ok(Self { forest, u, w, pi })
    }

    pub fn forest(&self) -> &OrientedForest {
        &self.forest
    }

    pub fn u(&self) -> &VertexSubset {
        &self.u
    }

    pub fn w(&self) -> &VertexSubset {
        &self.w
    }

    pub fn pi(&self) -> &UwBijection {
        &self.pi
    }
}
