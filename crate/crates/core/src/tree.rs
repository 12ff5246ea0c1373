//! Edge irregular total labellings of trees by vertex partition and weight
//! intervals.
//!
//! A tree rooted at a maximum-degree vertex is split into three classes:
//! A (labelled 1), C (labelled k) and B (labels searched). Edge classes then
//! get consecutive weight blocks: E(A,A) at the bottom starting from 3,
//! E(A,B) right above it, E(C,C) at the top ending at 3k, E(C,B) right below
//! that, and E(B,B) together with E(A,C) in the gap between. Edge labels follow
//! from the weights once the B labels are known.
//!
//! The block layout does not always admit a labelling (large stars are the
//! standard example, where the root's neighbours spill out of B). Realization
//! then retries with a single pool of weights and finally with every vertex
//! label free; see [`Strategy`].

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bounds::tree_lambda;
use crate::graph::{Edge, Graph, Vertex};
use crate::labelling::{Label, TotalLabelling};
use crate::search::{single_pool, LabelProblem, Pool, SearchFailure, ValueOrder};

pub(crate) const PLAN_BUDGET: u64 = 4_000;
pub(crate) const RELAXED_BUDGET: u64 = 40_000;
pub(crate) const FREE_BUDGET: u64 = 400_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree has fewer than 3 vertices")]
    TooSmall,
    #[error("{edges} edges cannot get distinct weights in [3, {max}]")]
    TooManyEdges { edges: usize, max: u32 },
    #[error("no labelling realizes the plan")]
    Infeasible { partial: Vec<Option<Label>> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    A,
    B,
    C,
}

/// The A/B/C split of a rooted tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    /// In the order the vertices were chosen.
    pub set_a: Vec<Vertex>,
    /// Root first, then BFS order.
    pub set_b: Vec<Vertex>,
    pub set_c: Vec<Vertex>,
    pub root: Vertex,
    class: Vec<Class>,
}

impl VertexPartition {
    pub fn class_of(&self, v: Vertex) -> Class {
        self.class[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.class.len()
    }
}

/// Splits a tree into A/B/C, rooted at its smallest-index maximum-degree vertex.
pub fn partition_tree(t: &Graph) -> Result<VertexPartition, TreeError> {
    let root = t.max_degree_vertex().map_err(|_| TreeError::TooSmall)?;
    partition_rooted(t, root)
}

/// Splits a tree into A/B/C with the given root.
///
/// `|A| = |C| = ⌊(n+1)/3⌋` and B holds the rest. B takes the root and then
/// vertices in BFS order, so the root's neighbours come first. Half of the
/// leaves outside B (deepest first) go to A together with their neighbours
/// while room remains, A is topped up in BFS order, and C takes what is left.
pub fn partition_rooted(t: &Graph, root: Vertex) -> Result<VertexPartition, TreeError> {
    if !t.is_tree() {
        return Err(TreeError::NotATree);
    }
    let n = t.vertex_count();
    if n < 3 {
        return Err(TreeError::TooSmall);
    }
    let side = (n + 1) / 3;
    let b_size = n - 2 * side;

    let order = t.bfs_order(root);
    let mut depth = vec![0usize; n];
    for &v in &order {
        for &w in t.neighbors(v) {
            if w != root && depth[w] == 0 {
                depth[w] = depth[v] + 1;
            }
        }
    }

    let mut class: Vec<Option<Class>> = vec![None; n];
    let set_b: Vec<Vertex> = order[..b_size].to_vec();
    for &v in &set_b {
        class[v] = Some(Class::B);
    }

    let mut outside: Vec<Vertex> = t.leaves().into_iter().filter(|&v| class[v].is_none()).collect();
    outside.sort_by_key(|&v| (std::cmp::Reverse(depth[v]), v));
    let chosen = &outside[..outside.len() / 2];

    let mut set_a = Vec::with_capacity(side);
    for &leaf in chosen {
        class[leaf] = Some(Class::A);
        set_a.push(leaf);
    }
    for &leaf in chosen {
        if set_a.len() == side {
            break;
        }
        let nb = t.neighbors(leaf)[0];
        if class[nb].is_none() {
            class[nb] = Some(Class::A);
            set_a.push(nb);
        }
    }
    for &v in &order {
        if set_a.len() == side {
            break;
        }
        if class[v].is_none() {
            class[v] = Some(Class::A);
            set_a.push(v);
        }
    }

    let set_c: Vec<Vertex> = order.iter().copied().filter(|&v| class[v].is_none()).collect();
    let class = class.into_iter().map(|c| c.unwrap_or(Class::C)).collect();
    Ok(VertexPartition { set_a, set_b, set_c, root, class })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockKind {
    /// E(A,A)
    Low,
    /// E(A,B)
    LowCross,
    /// E(B,B) and E(A,C)
    Middle,
    /// E(C,B)
    HighCross,
    /// E(C,C)
    High,
}

impl BlockKind {
    pub fn of(a: Class, b: Class) -> BlockKind {
        match (a.min(b), a.max(b)) {
            (Class::A, Class::A) => BlockKind::Low,
            (Class::A, Class::B) => BlockKind::LowCross,
            (Class::B, Class::B) | (Class::A, Class::C) => BlockKind::Middle,
            (Class::B, Class::C) => BlockKind::HighCross,
            (Class::C, Class::C) => BlockKind::High,
            _ => unreachable!("min/max ordering"),
        }
    }
}

/// A run of consecutive weights `lo..=hi` reserved for one edge class.
/// An empty block has `hi + 1 == lo`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub lo: u32,
    pub hi: u32,
    pub edges: Vec<Edge>,
}

impl Block {
    pub fn len(&self) -> usize {
        (self.hi + 1 - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPlan {
    pub k: Label,
    /// In increasing weight order; the blocks tile `[3, 3k]` except for the
    /// part of the middle block left over when there are fewer than `3k - 2` edges.
    pub blocks: Vec<Block>,
    /// Nominal target per edge. Within a block, targets follow canonical edge
    /// order; middle-block targets are spread evenly over the gap.
    pub targets: BTreeMap<Edge, u32>,
}

impl WeightPlan {
    pub fn block(&self, kind: BlockKind) -> &Block {
        self.blocks.iter().find(|b| b.kind == kind).expect("every kind has a block")
    }
}

/// Lays out the weight blocks for `g` (a tree or a tree with added edges)
/// under partition `p` and bound `k`.
pub fn build_weight_plan(g: &Graph, p: &VertexPartition, k: Label) -> Result<WeightPlan, TreeError> {
    let max = 3 * k;
    if g.edge_count() + 2 > max as usize {
        return Err(TreeError::TooManyEdges { edges: g.edge_count(), max });
    }
    let mut by_kind: BTreeMap<BlockKind, Vec<Edge>> = BTreeMap::new();
    for &(u, v) in g.edges() {
        by_kind.entry(BlockKind::of(p.class_of(u), p.class_of(v))).or_default().push((u, v));
    }
    let mut take = |kind| by_kind.remove(&kind).unwrap_or_default();
    let (low, low_cross, middle, high_cross, high) = (
        take(BlockKind::Low),
        take(BlockKind::LowCross),
        take(BlockKind::Middle),
        take(BlockKind::HighCross),
        take(BlockKind::High),
    );

    let count = |edges: &Vec<Edge>| edges.len() as u32;
    let low_hi = 2 + count(&low);
    let low_cross_hi = low_hi + count(&low_cross);
    let high_lo = max + 1 - count(&high);
    let high_cross_lo = high_lo - count(&high_cross);

    let blocks = vec![
        Block { kind: BlockKind::Low, lo: 3, hi: low_hi, edges: low },
        Block { kind: BlockKind::LowCross, lo: low_hi + 1, hi: low_cross_hi, edges: low_cross },
        Block { kind: BlockKind::Middle, lo: low_cross_hi + 1, hi: high_cross_lo - 1, edges: middle },
        Block { kind: BlockKind::HighCross, lo: high_cross_lo, hi: high_lo - 1, edges: high_cross },
        Block { kind: BlockKind::High, lo: high_lo, hi: max, edges: high },
    ];

    let mut targets = BTreeMap::new();
    for b in &blocks {
        if b.kind == BlockKind::Middle {
            let gap = b.len() as u32;
            let cnt = b.edges.len() as u32;
            for (i, &e) in b.edges.iter().enumerate() {
                targets.insert(e, b.lo + i as u32 * gap / cnt);
            }
        } else {
            for (i, &e) in b.edges.iter().enumerate() {
                targets.insert(e, b.lo + i as u32);
            }
        }
    }
    Ok(WeightPlan { k, blocks, targets })
}

fn class_domains(p: &VertexPartition, k: Label) -> Vec<(Label, Label)> {
    (0..p.vertex_count())
        .map(|v| match p.class_of(v) {
            Class::A => (1, 1),
            Class::B => (1, k),
            Class::C => (k, k),
        })
        .collect()
}

/// Realizes `plan`: A vertices get 1, C vertices get `k`, and B labels are
/// searched (root first, nondecreasing values tried first) so that every
/// edge class lands inside its block.
pub fn realize_plan(g: &Graph, p: &VertexPartition, plan: &WeightPlan) -> Result<TotalLabelling, TreeError> {
    realize_plan_with_budget(g, p, plan, PLAN_BUDGET)
}

fn realize_plan_with_budget(
    g: &Graph,
    p: &VertexPartition,
    plan: &WeightPlan,
    budget: u64,
) -> Result<TotalLabelling, TreeError> {
    let pools = plan
        .blocks
        .iter()
        .map(|b| Pool {
            points: (b.lo..=b.hi).collect(),
            edges: b.edges.iter().map(|&(u, v)| g.edge_index(u, v).expect("plan edge in graph")).collect(),
        })
        .collect();
    LabelProblem {
        graph: g,
        k: plan.k,
        domains: class_domains(p, plan.k),
        pools,
        order: p.set_b.clone(),
        value_order: ValueOrder::NondecreasingFirst,
        node_budget: budget,
    }
    .solve()
    .map_err(|f| TreeError::Infeasible { partial: f.partial().to_vec() })
}

/// Which realization succeeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    /// Fewer than three vertices; all labels 1.
    Direct,
    /// Weight blocks honoured.
    Plan,
    /// Class labels kept, blocks dropped: any weight in `[3, 3k]`.
    Relaxed,
    /// Every vertex label searched.
    Free,
}

/// Labels `g` with bound `k`, trying the block plan, then the relaxed pool,
/// then a free search. `g` may be any graph whose spanning tree produced `p`.
pub fn label_with_partition(g: &Graph, p: &VertexPartition, k: Label) -> Result<(TotalLabelling, Strategy), TreeError> {
    let plan = build_weight_plan(g, p, k)?;
    if let Ok(l) = realize_plan_with_budget(g, p, &plan, PLAN_BUDGET) {
        return Ok((l, Strategy::Plan));
    }

    let points: Vec<u32> = (3..=3 * k).collect();
    let relaxed = LabelProblem {
        graph: g,
        k,
        domains: class_domains(p, k),
        pools: single_pool(g, points.clone()),
        order: p.set_b.clone(),
        value_order: ValueOrder::NondecreasingFirst,
        node_budget: RELAXED_BUDGET,
    };
    if let Ok(l) = relaxed.solve() {
        return Ok((l, Strategy::Relaxed));
    }

    let free = LabelProblem {
        graph: g,
        k,
        domains: vec![(1, k); g.vertex_count()],
        pools: single_pool(g, points),
        order: g.bfs_order(p.root),
        value_order: ValueOrder::CentreOut,
        node_budget: FREE_BUDGET,
    };
    free.solve()
        .map(|l| (l, Strategy::Free))
        .map_err(|f: SearchFailure| TreeError::Infeasible { partial: f.partial().to_vec() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeLabelling {
    pub lambda: Label,
    pub partition: Option<VertexPartition>,
    pub labelling: TotalLabelling,
    pub strategy: Strategy,
}

/// Edge irregular total λ-labelling of a tree.
pub fn label_tree(t: &Graph) -> Result<TotalLabelling, TreeError> {
    label_tree_detailed(t).map(|r| r.labelling)
}

pub fn label_tree_detailed(t: &Graph) -> Result<TreeLabelling, TreeError> {
    if !t.is_tree() || t.edge_count() == 0 {
        return Err(TreeError::NotATree);
    }
    let lambda = tree_lambda(t).map_err(|_| TreeError::NotATree)? as Label;
    if t.vertex_count() < 3 {
        return Ok(TreeLabelling {
            lambda,
            partition: None,
            labelling: TotalLabelling::all_ones(t),
            strategy: Strategy::Direct,
        });
    }
    let p = partition_tree(t)?;
    let (labelling, strategy) = label_with_partition(t, &p, lambda)?;
    Ok(TreeLabelling { lambda, partition: Some(p), labelling, strategy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeClassSelector;
    use crate::labelling::{verify_irregular, weight_multiset};

    /// Ten vertices, Δ = 4 at vertex 0.
    fn t10() -> Graph {
        Graph::from_edge_list(10, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 6), (3, 7), (5, 8), (6, 9)]).unwrap()
    }

    #[test]
    fn partition_sizes() {
        let p = partition_tree(&t10()).unwrap();
        assert_eq!((p.set_a.len(), p.set_b.len(), p.set_c.len()), (3, 4, 3));
        assert_eq!(p.root, 0);
        assert_eq!(p.set_b[0], 0);

        let p = partition_tree(&Graph::path(4)).unwrap();
        assert_eq!((p.set_a.len(), p.set_b.len(), p.set_c.len()), (1, 2, 1));

        let p = partition_tree(&Graph::star(9)).unwrap();
        assert_eq!((p.set_a.len(), p.set_b.len(), p.set_c.len()), (3, 4, 3));
    }

    #[test]
    fn partition_rejects() {
        assert_eq!(partition_tree(&Graph::cycle(4)), Err(TreeError::NotATree));
        assert_eq!(partition_tree(&Graph::path(2)), Err(TreeError::TooSmall));
    }

    #[test]
    fn edge_classes_cover_the_tree() {
        let t = t10();
        let p = partition_tree(&t).unwrap();
        let sets = [&p.set_a, &p.set_b, &p.set_c];
        let mut total = 0;
        for i in 0..3 {
            for j in i..3 {
                let sel = EdgeClassSelector::new(sets[i].iter().copied(), sets[j].iter().copied());
                total += t.cross_edges(&sel).len();
            }
        }
        assert_eq!(total, 9);
    }

    #[test]
    fn plan_blocks() {
        let t = t10();
        let p = partition_tree(&t).unwrap();
        let plan = build_weight_plan(&t, &p, 4).unwrap();
        let mut targets: Vec<u32> = plan.targets.values().copied().collect();
        targets.sort_unstable();
        targets.dedup();
        assert_eq!(targets.len(), 9);
        assert!(targets.iter().all(|&w| (3..=12).contains(&w)));
        let low = plan.block(BlockKind::Low);
        if !low.edges.is_empty() {
            assert_eq!(plan.targets[&low.edges[0]], 3);
        }
        let high = plan.block(BlockKind::High);
        if let Some(last) = high.edges.last() {
            assert_eq!(plan.targets[last], 12);
        }
        assert!(matches!(build_weight_plan(&t, &p, 3), Err(TreeError::TooManyEdges { .. })));
    }

    #[test]
    fn three_vertex_path_blocks() {
        // P3 rooted at 1: A = {0}, B = {1}, C = {2}, k = 2. The A-B block is
        // {3}, forcing f(1) = 1, and the C-B block is {6}, which would then
        // need an edge label of 3.
        let t = Graph::path(3);
        let p = partition_tree(&t).unwrap();
        assert_eq!((p.root, p.set_a.clone(), p.set_c.clone()), (1, vec![0], vec![2]));
        let plan = build_weight_plan(&t, &p, 2).unwrap();
        assert_eq!((plan.block(BlockKind::LowCross).lo, plan.block(BlockKind::HighCross).lo), (3, 6));
        assert!(matches!(realize_plan(&t, &p, &plan), Err(TreeError::Infeasible { .. })));
        let (l, strategy) = label_with_partition(&t, &p, 2).unwrap();
        assert_eq!(strategy, Strategy::Relaxed);
        assert!(verify_irregular(&t, &l).ok());
        assert_eq!(l.vertex_labels[0], 1);
        assert_eq!(l.vertex_labels[2], 2);
    }

    #[test]
    fn plan_realized_exactly() {
        // P4 rooted at 1: the plan fills every weight in [3, 6].
        let t = Graph::path(4);
        let p = partition_tree(&t).unwrap();
        let plan = build_weight_plan(&t, &p, 2).unwrap();
        if let Ok(l) = realize_plan(&t, &p, &plan) {
            assert!(verify_irregular(&t, &l).ok());
            for b in &plan.blocks {
                for &(u, v) in &b.edges {
                    let w = crate::labelling::edge_weight(&t, &l, (u, v)).unwrap();
                    assert!(b.lo <= w && w <= b.hi);
                }
            }
        }
    }

    #[test]
    fn star_needs_relaxation() {
        let t = Graph::star(9);
        let p = partition_tree(&t).unwrap();
        let plan = build_weight_plan(&t, &p, 5).unwrap();
        assert!(matches!(realize_plan(&t, &p, &plan), Err(TreeError::Infeasible { .. })));
        let r = label_tree_detailed(&t).unwrap();
        assert_eq!(r.lambda, 5);
        assert!(r.strategy > Strategy::Plan);
        assert!(verify_irregular(&t, &r.labelling).ok());
    }

    #[test]
    fn small_trees() {
        let r = label_tree_detailed(&Graph::path(2)).unwrap();
        assert_eq!(r.strategy, Strategy::Direct);
        assert_eq!(weight_multiset(&Graph::path(2), &r.labelling).unwrap(), vec![3]);

        let l = label_tree(&Graph::path(4)).unwrap();
        assert_eq!(l.bound_k, 2);
        assert!(verify_irregular(&Graph::path(4), &l).ok());

        let l = label_tree(&t10()).unwrap();
        assert_eq!(l.bound_k, 4);
        assert!(verify_irregular(&t10(), &l).ok());
    }
}
