//! Graph generators and enumerators for the test universe.
//!
//! Random graphs are driven by SplitMix64 (`rand_xoshiro::SplitMix64`)
//! seeded with the caller's `u64`, so a `(generator, parameters, seed)`
//! triple always names the same graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("need at least one vertex")]
    NoVertices,
    #[error("a connected graph on {n} vertices has between {min} and {max} edges, not {m}")]
    EdgeCount { n: usize, m: usize, min: usize, max: usize },
}

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Decodes a Prüfer sequence over `0..n` (with `n = seq.len() + 2`).
pub fn prufer_decode(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // smallest current leaf, advanced lazily
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if x < ptr && degree[x] == 1 {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::from_edge_list(n, edges).expect("Prüfer decoding yields a tree")
}

/// Uniform random labelled tree on `n` vertices.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Graph, GenerateError> {
    random_tree_with(n, &mut rng(seed))
}

fn random_tree_with(n: usize, rng: &mut SplitMix64) -> Result<Graph, GenerateError> {
    match n {
        0 => Err(GenerateError::NoVertices),
        1 => Ok(Graph::empty(1)),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            Ok(prufer_decode(&seq))
        }
    }
}

/// Random spanning tree plus `m - (n - 1)` extra edges chosen uniformly.
pub fn gen_random_connected(n: usize, m: usize, seed: u64) -> Result<Graph, GenerateError> {
    random_connected_with(n, m, &mut rng(seed))
}

fn random_connected_with(n: usize, m: usize, rng: &mut SplitMix64) -> Result<Graph, GenerateError> {
    if n == 0 {
        return Err(GenerateError::NoVertices);
    }
    let (min, max) = (n - 1, n * (n - 1) / 2);
    if m < min || m > max {
        return Err(GenerateError::EdgeCount { n, m, min, max });
    }
    let tree = random_tree_with(n, rng)?;
    let mut free: Vec<Edge> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !tree.has_edge(u, v)).collect();
    free.shuffle(rng);
    let edges = tree.edges().iter().copied().chain(free.into_iter().take(m - min));
    Ok(Graph::from_edge_list(n, edges).expect("distinct pairs"))
}

/// Shape of one random connected graph drawn by [`gen_random_shape`].
pub fn gen_random_shape(n_max: usize, m_max: usize, seed: u64) -> Graph {
    let mut rng = rng(seed);
    random_shape_with(n_max, m_max, &mut rng)
}

/// Draws `n` in `2..=n_max`, then `m` between `n - 1` and `min(m_max, n(n-1)/2)`,
/// redrawing when the result is K5.
fn random_shape_with(n_max: usize, m_max: usize, rng: &mut SplitMix64) -> Graph {
    assert!(n_max >= 2 && m_max >= 1, "need room for at least one edge");
    loop {
        let n = rng.gen_range(2..=n_max);
        let hi = m_max.min(n * (n - 1) / 2);
        if hi < n - 1 {
            continue;
        }
        let m = rng.gen_range(n - 1..=hi);
        let g = random_connected_with(n, m, rng).expect("parameters in range");
        if !g.is_k5() {
            return g;
        }
    }
}

/// Disjoint union of `2..=parts_max` random connected graphs (none of them K5).
pub fn gen_random_union(parts_max: usize, n_max: usize, m_max: usize, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let parts = rng.gen_range(2..=parts_max.max(2));
    let graphs: Vec<Graph> = (0..parts).map(|_| random_shape_with(n_max, m_max, &mut rng)).collect();
    Graph::disjoint_union(&graphs.iter().collect::<Vec<_>>())
}

/// All `n^(n-2)` labelled trees on `n` vertices, in lexicographic Prüfer order.
pub fn enumerate_labelled_trees(n: usize) -> impl Iterator<Item = Graph> {
    let len = n.saturating_sub(2);
    let total: u64 = match n {
        0 => 0,
        1 | 2 => 1,
        _ => (n as u64).pow(len as u32),
    };
    (0..total).map(move |mut idx| {
        if n == 1 {
            return Graph::empty(1);
        }
        let mut seq = vec![0usize; len];
        for slot in seq.iter_mut().rev() {
            *slot = (idx % n as u64) as usize;
            idx /= n as u64;
        }
        prufer_decode(&seq)
    })
}

/// Every connected spanning subgraph of `K_n`, for `2 <= n <= n_max`, in
/// order of `n` and then of the edge-subset bitmask over the canonical
/// edge list of `K_n`. Yields `(n, mask, graph)`.
pub fn enumerate_connected(n_max: usize) -> impl Iterator<Item = (usize, u64, Graph)> {
    assert!(n_max <= 8, "edge-subset enumeration is only meant for tiny orders");
    (2..=n_max).flat_map(|n| {
        let all: Vec<Edge> = Graph::complete(n).edges().to_vec();
        let m = all.len();
        (1u64..(1 << m)).filter_map(move |mask| {
            if (mask.count_ones() as usize) < n - 1 {
                return None;
            }
            let edges = (0..m).filter(|&i| mask & (1 << i) != 0).map(|i| all[i]);
            let g = Graph::from_edge_list(n, edges).expect("subset of K_n");
            g.is_connected().then_some((n, mask, g))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prufer_examples() {
        // classic example: sequence [3, 3, 3, 4] gives the tree with edges
        // 0-3, 1-3, 2-3, 3-4, 4-5
        let t = prufer_decode(&[3, 3, 3, 4]);
        assert_eq!(t.edges(), &[(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(prufer_decode(&[]).edges(), &[(0, 1)]);
    }

    #[test]
    fn tree_counts() {
        assert_eq!(enumerate_labelled_trees(3).count(), 3);
        assert_eq!(enumerate_labelled_trees(5).count(), 125);
        let all: Vec<Graph> = enumerate_labelled_trees(5).collect();
        assert!(all.iter().all(Graph::is_tree));
        let mut distinct = all.clone();
        distinct.sort_by(|a, b| a.edges().cmp(b.edges()));
        distinct.dedup();
        assert_eq!(distinct.len(), 125);
    }

    #[test]
    fn connected_counts() {
        let mut per_n = [0usize; 6];
        let mut ten_edge = 0;
        for (n, _, g) in enumerate_connected(5) {
            per_n[n] += 1;
            if g.edge_count() == 10 {
                ten_edge += 1;
                assert!(g.is_k5());
            }
        }
        assert_eq!(&per_n[2..], &[1, 4, 38, 728]);
        assert_eq!(ten_edge, 1);
    }

    #[test]
    fn random_is_reproducible() {
        assert_eq!(gen_random_tree(20, 7).unwrap(), gen_random_tree(20, 7).unwrap());
        assert!(gen_random_tree(20, 7).unwrap().is_tree());
        let g = gen_random_connected(12, 20, 3).unwrap();
        assert_eq!(g, gen_random_connected(12, 20, 3).unwrap());
        assert!(g.is_connected());
        assert_eq!(g.edge_count(), 20);
        assert!(gen_random_connected(4, 7, 0).is_err());
        assert!(gen_random_connected(4, 2, 0).is_err());
        assert_eq!(gen_random_tree(0, 0), Err(GenerateError::NoVertices));
    }

    #[test]
    fn unions() {
        let g = gen_random_union(4, 12, 20, 11);
        let comps = g.connected_components();
        assert!((2..=4).contains(&comps.len()));
        assert_eq!(g, gen_random_union(4, 12, 20, 11));
    }
}
