//! Independent oracles. Nothing here calls the library's search, bounds or
//! labelling code; graphs are plain `(n, edge list)` pairs.

#![allow(dead_code)]

use std::collections::BTreeSet;

use tes_core::graph::Graph;

pub type Edges = Vec<(usize, usize)>;

pub fn raw(g: &Graph) -> (usize, Edges) {
    (g.vertex_count(), g.edges().to_vec())
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edge_list(n, edges.iter().copied()).expect("valid fixture")
}

fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut d = vec![0; n];
    for &(u, v) in edges {
        d[u] += 1;
        d[v] += 1;
    }
    d
}

/// `max(⌈(m+2)/3⌉, ⌈(Δ+1)/2⌉)`, plus the K5 exception.
pub fn formula(n: usize, edges: &[(usize, usize)]) -> usize {
    let m = edges.len();
    let d = degrees(n, edges);
    let delta = d.iter().copied().max().unwrap_or(0);
    let base = ((m + 4) / 3).max((delta + 2) / 2);
    let touched = d.iter().filter(|&&x| x > 0).count();
    if m == 10 && touched == 5 && d.iter().all(|&x| x == 0 || x == 4) {
        5
    } else {
        base
    }
}

pub fn max_degree(n: usize, edges: &[(usize, usize)]) -> usize {
    degrees(n, edges).into_iter().max().unwrap_or(0)
}

/// Number of connected components, by union-find.
pub fn component_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut count = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Checks a labelling given as raw label vectors.
pub fn irregular(edges: &[(usize, usize)], vl: &[u32], el: &[u32], k: u32) -> bool {
    if vl.iter().chain(el).any(|&x| x < 1 || x > k) {
        return false;
    }
    let mut seen = BTreeSet::new();
    edges.iter().zip(el).all(|(&(u, v), &x)| seen.insert(x + vl[u] + vl[v]))
}

/// Plain enumeration of every total `k`-labelling; no pruning at all.
pub fn brute_force_exists(n: usize, edges: &[(usize, usize)], k: u32) -> bool {
    if k == 0 {
        return edges.is_empty();
    }
    let total = n + edges.len();
    let mut labels = vec![1u32; total];
    loop {
        let (vl, el) = labels.split_at(n);
        if irregular(edges, vl, el, k) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == total {
                return false;
            }
            if labels[i] < k {
                labels[i] += 1;
                break;
            }
            labels[i] = 1;
            i += 1;
        }
    }
}

pub fn brute_force_tes(n: usize, edges: &[(usize, usize)]) -> u32 {
    (1..).find(|&k| brute_force_exists(n, edges, k)).unwrap()
}

fn canonical_form(n: usize, edges: &[(usize, usize)]) -> Edges {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Edges> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut e: Edges = edges.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
    });
    best.unwrap_or_default()
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

/// Isomorphism classes of connected graphs with exactly `m` edges, as `(n, edges)`.
pub fn connected_classes(m: usize) -> Vec<(usize, Edges)> {
    let mut out = BTreeSet::new();
    for n in 2..=m + 1 {
        let all: Edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        if all.len() < m {
            continue;
        }
        for_each_subset(&all, m, &mut |sub| {
            let d = degrees(n, sub);
            if d.iter().all(|&x| x > 0) && component_count(n, sub) == 1 {
                out.insert((n, canonical_form(n, sub)));
            }
        });
    }
    out.into_iter().collect()
}

fn for_each_subset(all: &[(usize, usize)], size: usize, f: &mut impl FnMut(&[(usize, usize)])) {
    fn go(all: &[(usize, usize)], start: usize, size: usize, cur: &mut Edges, f: &mut impl FnMut(&[(usize, usize)])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..all.len() {
            if all.len() - i < size - cur.len() {
                break;
            }
            cur.push(all[i]);
            go(all, i + 1, size, cur, f);
            cur.pop();
        }
    }
    go(all, 0, size, &mut Vec::new(), f);
}

/// Isomorphism classes of graphs without isolated vertices having
/// `1..=max_edges` edges, built as multisets of connected classes.
pub fn small_graph_classes(max_edges: usize) -> Vec<(usize, Edges)> {
    let mut comps: Vec<(usize, usize, Edges)> = Vec::new();
    for m in 1..=max_edges {
        for (n, e) in connected_classes(m) {
            comps.push((m, n, e));
        }
    }
    let mut out = Vec::new();
    fn go(
        comps: &[(usize, usize, Edges)],
        start: usize,
        budget: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<(usize, Edges)>,
    ) {
        if !chosen.is_empty() {
            let mut n = 0;
            let mut edges = Vec::new();
            for &c in chosen.iter() {
                let (_, cn, ce) = &comps[c];
                edges.extend(ce.iter().map(|&(u, v)| (u + n, v + n)));
                n += cn;
            }
            out.push((n, edges));
        }
        for i in start..comps.len() {
            if comps[i].0 <= budget {
                chosen.push(i);
                go(comps, i, budget - comps[i].0, chosen, out);
                chosen.pop();
            }
        }
    }
    go(&comps, 0, max_edges, &mut Vec::new(), &mut out);
    out
}
