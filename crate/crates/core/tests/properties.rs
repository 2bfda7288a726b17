//! Structural properties: ring laws for the polynomial type, determinant
//! invariances, enumeration completeness against brute force, the order
//! structure of oriented paths, gluing round trips, the sign-difference
//! formulas, and the numeric Taylor check of the symbolic derivative.

use std::collections::{HashSet, VecDeque};

use allminors::{
    det_cofactor, det_exact, enumerate_forests, epsilon, glue, is_valid_forest,
    partial_minor_det, random_semi_laplacian, subsets_of_size, var_count, var_index, var_pair,
    Direction, EdgePolynomial, Matrix, OrientedForest, Rational, RationalMatrix, Sign, Vertex,
    VertexSubset,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int(v: i64) -> Rational {
    Rational::from(BigInt::from(v))
}

fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn all_pairs(n: usize) -> Vec<(VertexSubset, VertexSubset)> {
    let mut out = Vec::new();
    for k in 1..=n {
        let us = subsets_of_size(n, k);
        let ws = subsets_of_size(n, k);
        for u in &us {
            for w in &ws {
                out.push((u.clone(), w.clone()));
            }
        }
    }
    out
}

fn subset_from_mask(n: usize, mask: u32) -> VertexSubset {
    let members: Vec<Vertex> = (1..=n).filter(|v| mask & (1 << (v - 1)) != 0).collect();
    VertexSubset::new(n, members).unwrap()
}

fn arb_poly(n: usize) -> impl Strategy<Value = EdgePolynomial> {
    let nv = var_count(n);
    prop::collection::vec((prop::collection::vec(0u32..3, nv), -5i64..=5), 0..5).prop_map(
        move |terms| {
            let mut acc = EdgePolynomial::constant_in(n, 0);
            for (exps, c) in terms {
                let mut term = EdgePolynomial::constant_in(n, c);
                for (idx, &e) in exps.iter().enumerate() {
                    let (i, j) = var_pair(n, idx).unwrap();
                    for _ in 0..e {
                        term = term * EdgePolynomial::variable(n, i, j).unwrap();
                    }
                }
                acc = acc + term;
            }
            acc
        },
    )
}

fn arb_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(prop::collection::vec((-9i64..=9, 1i64..=9), n), n).prop_map(|rows| {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|(p, q)| frac(p, q)).collect())
                .collect(),
        )
        .unwrap()
    })
}

fn arb_sized_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1..=4usize).prop_flat_map(arb_matrix)
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn poly_ring_laws((a, b, c) in (arb_poly(3), arb_poly(3), arb_poly(3))) {
        prop_assert_eq!(
            (a.clone() + b.clone()) + c.clone(),
            a.clone() + (b.clone() + c.clone())
        );
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(
            (a.clone() * b.clone()) * c.clone(),
            a.clone() * (b.clone() * c.clone())
        );
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        prop_assert_eq!(a.clone() + (-a.clone()), EdgePolynomial::zero());
        prop_assert_eq!(a.clone() * EdgePolynomial::one(), a.clone());
        prop_assert_eq!(a.clone() - b.clone(), a + (-b));
    }

    #[test]
    fn poly_derivative_laws((a, b) in (arb_poly(3), arb_poly(3)), var in 0..6usize) {
        prop_assert_eq!(
            (a.clone() + b.clone()).derivative(var),
            a.derivative(var) + b.derivative(var)
        );
        prop_assert_eq!(
            (a.clone() * b.clone()).derivative(var),
            a.derivative(var) * b.clone() + a * b.derivative(var)
        );
    }

    #[test]
    fn poly_evaluation_is_a_ring_map(
        (a, b) in (arb_poly(3), arb_poly(3)),
        raw in prop::collection::vec((-5i64..=5, 1i64..=5), 6),
    ) {
        let vals: Vec<Rational> = raw.into_iter().map(|(p, q)| frac(p, q)).collect();
        prop_assert_eq!(
            (a.clone() + b.clone()).evaluate(&vals).unwrap(),
            a.evaluate(&vals).unwrap() + b.evaluate(&vals).unwrap()
        );
        prop_assert_eq!(
            (a.clone() * b.clone()).evaluate(&vals).unwrap(),
            a.evaluate(&vals).unwrap() * b.evaluate(&vals).unwrap()
        );
    }

    #[test]
    fn det_backends_agree(m in arb_sized_matrix()) {
        prop_assert_eq!(det_exact(&m).unwrap(), det_cofactor(&m).unwrap());
    }

    #[test]
    fn det_invariant_under_transpose(m in arb_sized_matrix()) {
        let n = m.rows();
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for i in 1..=n {
            for j in 1..=n {
                rows[j - 1][i - 1] = m[(i, j)].clone();
            }
        }
        let t = Matrix::from_rows(rows).unwrap();
        prop_assert_eq!(det_exact(&t).unwrap(), det_exact(&m).unwrap());
    }

    #[test]
    fn det_invariant_under_simultaneous_permutation(
        m in arb_sized_matrix(),
        seed in any::<u64>(),
    ) {
        let n = m.rows();
        let mut perm: Vec<usize> = (1..=n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for idx in (1..n).rev() {
            let pick = rng.gen_range(0..=idx);
            perm.swap(idx, pick);
        }
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for i in 1..=n {
            for j in 1..=n {
                rows[perm[i - 1] - 1][perm[j - 1] - 1] = m[(i, j)].clone();
            }
        }
        let pm = Matrix::from_rows(rows).unwrap();
        prop_assert_eq!(det_exact(&pm).unwrap(), det_exact(&m).unwrap());
    }

    #[test]
    fn minor_picks_surviving_entries(m in arb_sized_matrix()) {
        let n = m.rows();
        for wm in 0..(1u32 << n) {
            for um in 0..(1u32 << n) {
                let w = subset_from_mask(n, wm);
                let u = subset_from_mask(n, um);
                let sub = m.minor(&w, &u).unwrap();
                let rows_kept = w.complement();
                let cols_kept = u.complement();
                prop_assert_eq!(sub.rows(), rows_kept.len());
                prop_assert_eq!(sub.cols(), cols_kept.len());
                for (a, &r) in rows_kept.iter().enumerate() {
                    for (b, &c) in cols_kept.iter().enumerate() {
                        prop_assert_eq!(&sub[(a + 1, b + 1)], &m[(r, c)]);
                    }
                }
            }
        }
    }
}

fn valid_directions(n: usize) -> Vec<(VertexSubset, VertexSubset, Direction)> {
    let mut out = Vec::new();
    for (u, w) in all_pairs(n) {
        for i in 1..=n {
            if w.contains(i) {
                continue;
            }
            for j in 1..=n {
                if i == j || u.contains(j) {
                    continue;
                }
                for &w0 in w.members() {
                    if w0 == j {
                        continue;
                    }
                    out.push((u.clone(), w.clone(), Direction { i, j, w0 }));
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        cases: 64,
        ..ProptestConfig::default()
    })]

    // det(minor(M + hV)) with V = E_ij - E_w0j is exactly linear in h, and
    // its slope is the value of the symbolic directional derivative at M.
    #[test]
    fn taylor_quotient_matches_symbolic_derivative(
        n in 2..=4usize,
        seed in any::<u64>(),
        pick in any::<usize>(),
    ) {
        let dirs = valid_directions(n);
        prop_assume!(!dirs.is_empty());
        let (u, w, dir) = &dirs[pick % dirs.len()];
        let m = random_semi_laplacian(n, 9, seed).unwrap();
        let g0 = det_exact(&m.minor(w, u).unwrap()).unwrap();
        let g = |h: &Rational| -> Rational {
            let mut shifted = m.clone();
            shifted[(dir.i, dir.j)] = &shifted[(dir.i, dir.j)] + h;
            shifted[(dir.w0, dir.j)] = &shifted[(dir.w0, dir.j)] - h;
            det_exact(&shifted.minor(w, u).unwrap()).unwrap()
        };
        let quotients: Vec<Rational> = [int(1), frac(1, 2), frac(1, 4)]
            .iter()
            .map(|h| (g(h) - &g0) / h)
            .collect();
        prop_assert_eq!(&quotients[0], &quotients[1]);
        prop_assert_eq!(&quotients[1], &quotients[2]);
        let d = partial_minor_det(*dir, u, w, n).unwrap();
        let mut vals = vec![Rational::zero(); var_count(n)];
        for a in 1..=n {
            for b in 1..=n {
                if a != b {
                    vals[var_index(n, a, b).unwrap()] = m[(a, b)].clone();
                }
            }
        }
        prop_assert_eq!(d.evaluate(&vals).unwrap(), quotients[0].clone());
    }
}

/// Every parent assignment {1..n} -> {none} ∪ {1..n}, as forests.
fn all_parent_maps(n: usize) -> Vec<OrientedForest> {
    let total = (n + 1).pow(n as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut c = code;
        let mut edges = Vec::new();
        for v in 1..=n {
            let choice = c % (n + 1);
            c /= n + 1;
            if choice > 0 {
                edges.push((choice, v));
            }
        }
        out.push(OrientedForest::from_edges(n, &edges).unwrap());
    }
    out
}

#[test]
fn enumeration_is_complete_and_canonically_ordered() {
    for n in 1..=4usize {
        let universe = all_parent_maps(n);
        for (u, w) in all_pairs(n) {
            let got = enumerate_forests(n, &u, &w).unwrap();
            assert!(
                got.windows(2).all(|p| p[0] < p[1]),
                "enumeration out of order at n={n} U={u} W={w}"
            );
            let mut expected: Vec<OrientedForest> = universe
                .iter()
                .filter(|f| is_valid_forest(f, &u, &w).unwrap())
                .cloned()
                .collect();
            expected.sort();
            assert_eq!(got, expected, "n={n} U={u} W={w}");
        }
    }
}

#[test]
fn single_tree_counts_match_the_labeled_tree_formula() {
    // |F({j},{i})| is the labeled-tree count n^(n-2) for every root j and
    // every marked vertex i: each tree rooted at j contains i exactly once.
    for n in 2..=5usize {
        let expected = (n as u64).pow(n as u32 - 2) as usize;
        for j in 1..=n {
            for i in 1..=n {
                let u = VertexSubset::new(n, vec![j]).unwrap();
                let w = VertexSubset::new(n, vec![i]).unwrap();
                let count = enumerate_forests(n, &u, &w).unwrap().len();
                assert_eq!(count, expected, "n={n} root={j} marked={i}");
            }
        }
    }
}

#[test]
fn rooted_trees_biject_with_undirected_trees() {
    for n in 2..=5usize {
        for r in 1..=n {
            let root = VertexSubset::new(n, vec![r]).unwrap();
            let trees = enumerate_forests(n, &root, &root).unwrap();
            let mut seen = HashSet::new();
            for t in &trees {
                let mut undirected: Vec<(Vertex, Vertex)> = t
                    .edges()
                    .into_iter()
                    .map(|(x, y)| (x.min(y), x.max(y)))
                    .collect();
                undirected.sort_unstable();
                assert!(
                    seen.insert(undirected.clone()),
                    "two orientations collapsed to one undirected tree"
                );
                // Re-orienting the undirected tree away from r restores t.
                let mut adj = vec![Vec::new(); n + 1];
                for &(x, y) in &undirected {
                    adj[x].push(y);
                    adj[y].push(x);
                }
                let mut visited = vec![false; n + 1];
                visited[r] = true;
                let mut queue = VecDeque::from([r]);
                let mut edges = Vec::new();
                while let Some(v) = queue.pop_front() {
                    for &nb in &adj[v] {
                        if !visited[nb] {
                            visited[nb] = true;
                            edges.push((v, nb));
                            queue.push_back(nb);
                        }
                    }
                }
                assert!(visited[1..=n].iter().all(|&x| x));
                let rebuilt = OrientedForest::from_edges(n, &edges).unwrap();
                assert_eq!(&rebuilt, t);
            }
        }
    }
}

#[test]
fn oriented_paths_form_a_partial_order() {
    for n in 2..=4usize {
        for (u, w) in all_pairs(n) {
            for f in &enumerate_forests(n, &u, &w).unwrap() {
                for a in 1..=n {
                    assert!(f.has_oriented_path(a, a).unwrap());
                    for b in 1..=n {
                        let ab = f.has_oriented_path(a, b).unwrap();
                        if ab && f.has_oriented_path(b, a).unwrap() {
                            assert_eq!(a, b, "cycle through {a} and {b}");
                        }
                        for c in 1..=n {
                            if ab && f.has_oriented_path(b, c).unwrap() {
                                assert!(f.has_oriented_path(a, c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
}

fn without_parent_edge(f: &OrientedForest, child: Vertex) -> OrientedForest {
    let edges: Vec<(Vertex, Vertex)> = f
        .edges()
        .into_iter()
        .filter(|&(_, v)| v != child)
        .collect();
    OrientedForest::from_edges(f.n(), &edges).unwrap()
}

#[test]
fn gluing_round_trip_and_sign_difference() {
    // Sweep every gluing situation, including i == j. Checks, per forest:
    // removing j's new edge recovers the original, and the sign ratio is
    // (-1)^(i+j+a+b) when edge (i,j) was added and (-1)^(i+j+a+b+1) when
    // (w0,j) was, where a and b count the smaller-set members below j, i.
    for n in 2..=5usize {
        for k_big in 2..=n {
            let us = subsets_of_size(n, k_big);
            let ws = subsets_of_size(n, k_big);
            for u_big in &us {
                for w_big in &ws {
                    let forests = enumerate_forests(n, u_big, w_big).unwrap();
                    for &j in u_big.members() {
                        for &i in w_big.members() {
                            let u = u_big.with_removed(j).unwrap();
                            let w = w_big.with_removed(i).unwrap();
                            let a = u.count_below(j);
                            let b = w.count_below(i);
                            for f in &forests {
                                let towards_i = f.has_oriented_path(j, i).unwrap();
                                for &w0 in w.members() {
                                    let glued = glue(f, &u, &w, i, j, w0).unwrap();
                                    let expected_parent =
                                        if towards_i { w0 } else { i };
                                    assert_eq!(
                                        glued.parent_of(j).unwrap(),
                                        Some(expected_parent)
                                    );
                                    assert_eq!(&without_parent_edge(&glued, j), f);
                                    let exponent = if towards_i {
                                        i + j + a + b + 1
                                    } else {
                                        i + j + a + b
                                    };
                                    let ratio = epsilon(u_big, w_big, f).unwrap()
                                        * epsilon(&u, &w, &glued).unwrap();
                                    assert_eq!(
                                        ratio,
                                        Sign::from_exponent(exponent),
                                        "n={n} U={u} W={w} i={i} j={j} w0={w0} F={:?}",
                                        f.edges()
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn edge_removal_then_gluing_recovers_the_forest() {
    // Converse round trip: take a forest from U to W whose j-edge is one of
    // the two gluable edges; when deleting that edge yields a forest on the
    // enlarged subsets, gluing maps it straight back.
    for n in 2..=5usize {
        for (u, w) in all_pairs(n) {
            let forests = enumerate_forests(n, &u, &w).unwrap();
            for j in u.complement() {
                let u_big = u.with_inserted(j).unwrap();
                for i in w.complement() {
                    let w_big = w.with_inserted(i).unwrap();
                    for &w0 in w.members() {
                        for h in &forests {
                            let parent = h.parent_of(j).unwrap();
                            if parent != Some(i) && parent != Some(w0) {
                                continue;
                            }
                            let cut = without_parent_edge(h, j);
                            if !is_valid_forest(&cut, &u_big, &w_big).unwrap() {
                                continue;
                            }
                            let reglued = glue(&cut, &u, &w, i, j, w0).unwrap();
                            assert_eq!(
                                &reglued,
                                h,
                                "n={n} U={u} W={w} i={i} j={j} w0={w0}"
                            );
                        }
                    }
                }
            }
        }
    }
}
