//! Labellings for trees with added edges, connected graphs and disjoint
//! unions.
//!
//! A connected graph is labelled by taking a BFS spanning tree rooted at a
//! maximum-degree vertex, labelling the tree, and then adding the remaining
//! edges one at a time. Each addition re-plans the weight blocks at the new
//! bound against the spanning tree's partition. Disconnected graphs are
//! labelled component by component out of one shared pool of weights.
//!
//! Whenever the block construction and its relaxations cannot be realized,
//! the exact solver is asked for a labelling at the same bound and the result
//! is flagged with `fallback_used`. A failure of the exact solver there is
//! reported as a conjecture violation.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bounds::{declared_tes, degree_lower, edge_lower, BoundsError};
use crate::exact::{exists_labelling, exists_labelling_within, Constraints, SearchConfig, SearchOutcome};
use crate::graph::{Edge, Graph, GraphError, Vertex};
use crate::labelling::{edge_weight, verify_irregular, Label, TotalLabelling};
use crate::search::{single_pool, LabelProblem, ValueOrder};
use crate::tree::{self, label_with_partition, partition_rooted, Class, Strategy, TreeError, VertexPartition};

/// Node budget for exact-search fallbacks inside the constructions.
pub const FALLBACK_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("K5 is labelled by k5_labelling")]
    IsK5,
    #[error("edge ({0}, {1}) is already present")]
    DuplicateEdge(Vertex, Vertex),
    #[error("no edge irregular total {k}-labelling exists for edges {edges:?}")]
    ConjectureViolation { k: Label, edges: Vec<Edge> },
    #[error("exact fallback ran out of budget at k = {k}")]
    FallbackExhausted { k: Label },
    #[error("constructed labelling failed verification")]
    Unverified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    TreeConstruction,
    IncrementalAugmentation,
    Composition,
    ExactSearch,
    FormulaOnly,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::TreeConstruction => "tree-construction",
            Method::IncrementalAugmentation => "incremental-augmentation",
            Method::Composition => "composition",
            Method::ExactSearch => "exact-search-fallback",
            Method::FormulaOnly => "formula-only",
        }
    }
}

/// A total edge irregularity strength value and how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TesResult {
    pub value: usize,
    pub certificate: Option<TotalLabelling>,
    pub method: Method,
    pub fallback_used: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    AaOrCc,
    AbOrCb,
    BbOrAc,
}

impl EdgeClass {
    pub fn of(a: Class, b: Class) -> EdgeClass {
        match (a.min(b), a.max(b)) {
            (Class::A, Class::A) | (Class::C, Class::C) => EdgeClass::AaOrCc,
            (Class::A, Class::B) | (Class::B, Class::C) => EdgeClass::AbOrCb,
            _ => EdgeClass::BbOrAc,
        }
    }
}

/// Where an added edge falls and how many spare weights there were.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AugmentationCase {
    pub edge_class: EdgeClass,
    /// `(3k - 2) - |E|` before the insertion, `k` being the current bound.
    pub slack: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmented {
    pub graph: Graph,
    pub labelling: TotalLabelling,
    pub case: AugmentationCase,
    /// `None` when the exact fallback produced the labelling.
    pub strategy: Option<Strategy>,
    pub fallback_used: bool,
}

fn exact_fallback(g: &Graph, k: Label) -> Result<TotalLabelling, ConstructError> {
    let cfg = SearchConfig { node_budget: Some(FALLBACK_BUDGET), ..SearchConfig::default() };
    match exists_labelling(g, k, &cfg) {
        SearchOutcome::Found(l) => Ok(l),
        SearchOutcome::NoneExists => Err(ConstructError::ConjectureViolation { k, edges: g.edges().to_vec() }),
        SearchOutcome::BudgetExhausted => Err(ConstructError::FallbackExhausted { k }),
    }
}

/// Adds `e` to a labelled graph and labels the result at its declared value.
///
/// `p` is the partition of the spanning tree the graph was built from; it is
/// kept, while the weight plan is rebuilt at the new bound.
pub fn augment_once(
    g: &Graph,
    p: &VertexPartition,
    current: &TotalLabelling,
    e: Edge,
) -> Result<Augmented, ConstructError> {
    let (u, v) = crate::graph::canonical(e.0, e.1);
    if g.has_edge(u, v) {
        return Err(ConstructError::DuplicateEdge(u, v));
    }
    let graph = g.with_edge(u, v)?;
    let case = AugmentationCase {
        edge_class: EdgeClass::of(p.class_of(u), p.class_of(v)),
        slack: (3 * current.bound_k as i64 - 2) - g.edge_count() as i64,
    };
    let k = declared_tes(&graph)? as Label;
    match label_with_partition(&graph, p, k) {
        Ok((labelling, strategy)) => {
            Ok(Augmented { graph, labelling, case, strategy: Some(strategy), fallback_used: false })
        }
        Err(_) => {
            let labelling = exact_fallback(&graph, k)?;
            Ok(Augmented { graph, labelling, case, strategy: None, fallback_used: true })
        }
    }
}

/// One augmentation step of [`label_connected_detailed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationStep {
    pub edge: Edge,
    pub case: AugmentationCase,
    pub k_before: Label,
    pub k_after: Label,
    pub strategy: Option<Strategy>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedLabelling {
    pub result: TesResult,
    pub partition: Option<VertexPartition>,
    pub tree_strategy: Option<Strategy>,
    pub steps: Vec<AugmentationStep>,
}

/// Labels a connected graph other than K5 at its declared value.
pub fn label_connected(g: &Graph) -> Result<TesResult, ConstructError> {
    label_connected_detailed(g).map(|c| c.result)
}

pub fn label_connected_detailed(g: &Graph) -> Result<ConnectedLabelling, ConstructError> {
    if g.edge_count() == 0 {
        return Err(BoundsError::Edgeless.into());
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    if g.is_k5() {
        return Err(ConstructError::IsK5);
    }
    if g.vertex_count() == 2 {
        let l = TotalLabelling::all_ones(g);
        return Ok(ConnectedLabelling {
            result: TesResult {
                value: 1,
                certificate: Some(l),
                method: Method::TreeConstruction,
                fallback_used: false,
            },
            partition: None,
            tree_strategy: Some(Strategy::Direct),
            steps: Vec::new(),
        });
    }

    let d = g.spanning_decomposition()?;
    let tree_graph = g.edge_subgraph(&d.tree_edges);
    let p = partition_rooted(&tree_graph, d.root)?;
    let lambda = crate::bounds::tree_lambda(&tree_graph)? as Label;
    let mut fallback_used = false;
    let (mut labelling, tree_strategy) = match label_with_partition(&tree_graph, &p, lambda) {
        Ok((l, s)) => (l, Some(s)),
        Err(_) => {
            fallback_used = true;
            (exact_fallback(&tree_graph, lambda)?, None)
        }
    };

    let mut current = tree_graph;
    let mut steps = Vec::with_capacity(d.extra_edges.len());
    for &e in &d.extra_edges {
        let k_before = labelling.bound_k;
        let aug = augment_once(&current, &p, &labelling, e)?;
        fallback_used |= aug.fallback_used;
        steps.push(AugmentationStep {
            edge: e,
            case: aug.case,
            k_before,
            k_after: aug.labelling.bound_k,
            strategy: aug.strategy,
        });
        current = aug.graph;
        labelling = aug.labelling;
    }
    debug_assert_eq!(&current, g);

    if !verify_irregular(g, &labelling).ok() {
        return Err(ConstructError::Unverified);
    }
    let method = if steps.is_empty() { Method::TreeConstruction } else { Method::IncrementalAugmentation };
    Ok(ConnectedLabelling {
        result: TesResult { value: labelling.bound_k as usize, certificate: Some(labelling), method, fallback_used },
        partition: Some(p),
        tree_strategy,
        steps,
    })
}

/// A fixed edge irregular total 5-labelling of K5 (vertices 0..5).
///
/// Found by the exact solver; `k5_constant_is_reproducible` regenerates it.
pub fn k5_labelling() -> TotalLabelling {
    const VERTEX: [Label; 5] = [1, 1, 1, 2, 5];
    const EDGE: [(Edge, Label); 10] = [
        ((0, 1), 1),
        ((0, 2), 2),
        ((0, 3), 2),
        ((0, 4), 3),
        ((1, 2), 4),
        ((1, 3), 4),
        ((1, 4), 4),
        ((2, 3), 5),
        ((2, 4), 5),
        ((3, 4), 5),
    ];
    TotalLabelling::new(VERTEX.to_vec(), EDGE.iter().copied().collect(), 5)
}

/// Node budget for the per-component exact search of [`label_disconnected`].
const COMPONENT_BUDGET: u64 = 2_000_000;

/// Vertex domains, search order, value order and node budget.
type Attempt = (Vec<(Label, Label)>, Vec<Vertex>, ValueOrder, u64);

/// Labels one component (local indices) with bound `k` using only unused
/// weights. Vertex labels are tried inside `[window_lo, k]` first. `None`
/// means this component cannot be fitted next to the ones already placed.
fn label_component(
    sub: &Graph,
    k: Label,
    window_lo: Label,
    used: &[bool],
) -> Result<Option<(TotalLabelling, bool)>, ConstructError> {
    let points: Vec<u32> = (3..=3 * k).filter(|&w| !used[w as usize]).collect();
    let root = sub.max_degree_vertex()?;
    let order = sub.bfs_order(root);

    let mut attempts: Vec<Attempt> = Vec::new();
    if sub.vertex_count() >= 3 {
        let d = sub.spanning_decomposition()?;
        let p = partition_rooted(&sub.edge_subgraph(&d.tree_edges), root)?;
        let domains = (0..sub.vertex_count())
            .map(|v| match p.class_of(v) {
                Class::A => (window_lo, window_lo),
                Class::B => (window_lo, k),
                Class::C => (k, k),
            })
            .collect();
        attempts.push((domains, p.set_b.clone(), ValueOrder::NondecreasingFirst, tree::RELAXED_BUDGET));
    }
    attempts.push((
        vec![(window_lo, k); sub.vertex_count()],
        order.clone(),
        ValueOrder::Ascending,
        tree::RELAXED_BUDGET,
    ));
    if window_lo > 1 {
        attempts.push((vec![(1, k); sub.vertex_count()], order.clone(), ValueOrder::Ascending, tree::FREE_BUDGET));
    }

    for (domains, order, value_order, node_budget) in attempts {
        let problem = LabelProblem {
            graph: sub,
            k,
            domains,
            pools: single_pool(sub, points.clone()),
            order,
            value_order,
            node_budget,
        };
        if let Ok(l) = problem.solve() {
            return Ok(Some((l, false)));
        }
    }

    let cfg = SearchConfig { node_budget: Some(COMPONENT_BUDGET), ..SearchConfig::default() };
    let c = Constraints { vertex_domains: vec![(1, k); sub.vertex_count()], allowed_weights: points };
    Ok(exists_labelling_within(sub, k, &cfg, c).found().map(|l| (l, true)))
}

/// Order in which the edged components are labelled: K5 components first,
/// then (when the degree bound dominates) the component holding the first
/// maximum-degree vertex, then by decreasing edge count and smallest vertex.
pub fn component_order(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut comps: Vec<Vec<Vertex>> = g.connected_components().into_iter().filter(|c| c.len() > 1).collect();
    let delta = g.max_degree().unwrap_or(0);
    let degree_dominates = degree_lower(delta) > edge_lower(g.edge_count());
    let hub = g.max_degree_vertex().ok();
    let edges_in = |c: &Vec<Vertex>| c.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
    comps.sort_by_key(|c| {
        let is_k5 = c.len() == 5 && edges_in(c) == 10;
        let has_hub = degree_dominates && hub.is_some_and(|h| c.contains(&h));
        (!is_k5, !has_hub, std::cmp::Reverse(edges_in(c)), c[0])
    });
    comps
}

enum Composed {
    Done(TotalLabelling, bool),
    /// Component at this position could not be placed.
    Stuck(usize),
}

fn compose(g: &Graph, k: Label, comps: &[Vec<Vertex>]) -> Result<Composed, ConstructError> {
    let mut used = vec![false; 3 * k as usize + 1];
    let mut vertex_labels = vec![1; g.vertex_count()];
    let mut edge_labels = BTreeMap::new();
    let mut prev_max: Label = 0;
    let mut fallback_used = false;

    for (pos, comp) in comps.iter().enumerate() {
        let sub = g.induced_subgraph(comp);
        let placed = if sub.is_k5() && pos == 0 && k >= 5 {
            Some((k5_labelling(), false))
        } else {
            label_component(&sub, k, (prev_max + 1).min(k), &used)?
        };
        let Some((local, fell_back)) = placed else {
            return Ok(Composed::Stuck(pos));
        };
        fallback_used |= fell_back;
        for (i, &v) in comp.iter().enumerate() {
            vertex_labels[v] = local.vertex_labels[i];
        }
        for &(a, b) in sub.edges() {
            let w = edge_weight(&sub, &local, (a, b)).expect("component labelling covers its edges");
            used[w as usize] = true;
            edge_labels.insert((comp[a], comp[b]), local.edge_label(a, b).expect("labelled"));
        }
        prev_max = comp.iter().map(|&v| vertex_labels[v]).max().unwrap_or(prev_max);
    }
    Ok(Composed::Done(TotalLabelling::new(vertex_labels, edge_labels, k), fallback_used))
}

/// Labels a graph with any number of components (isolated vertices allowed)
/// at its declared value.
///
/// Components take weights from one shared pool, lowest first, in
/// [`component_order`]. A component that no longer fits is moved to the
/// front and the composition restarts; if every order tried gets stuck the
/// exact solver labels the whole graph.
pub fn label_disconnected(g: &Graph) -> Result<TesResult, ConstructError> {
    let k = declared_tes(g)? as Label;
    let mut comps = component_order(g);
    let mut tried = std::collections::BTreeSet::new();

    let (labelling, fallback_used) = loop {
        if !tried.insert(comps.clone()) {
            break (exact_fallback(g, k)?, true);
        }
        match compose(g, k, &comps)? {
            Composed::Done(l, fell_back) => break (l, fell_back),
            Composed::Stuck(0) => break (exact_fallback(g, k)?, true),
            Composed::Stuck(pos) => {
                let c = comps.remove(pos);
                comps.insert(0, c);
            }
        }
    };

    if !verify_irregular(g, &labelling).ok() {
        return Err(ConstructError::Unverified);
    }
    Ok(TesResult { value: k as usize, certificate: Some(labelling), method: Method::Composition, fallback_used })
}

/// Labels any graph with at least one edge: connected graphs other than K5
/// go through [`label_connected`], everything else through [`label_disconnected`].
pub fn label_graph(g: &Graph) -> Result<TesResult, ConstructError> {
    if g.edge_count() == 0 {
        return Err(BoundsError::Edgeless.into());
    }
    if g.is_connected() && !g.is_k5() {
        label_connected(g)
    } else {
        label_disconnected(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_tes;
    use crate::labelling::weight_multiset;

    fn check(g: &Graph, r: &TesResult) {
        assert_eq!(r.value, declared_tes(g).unwrap());
        let l = r.certificate.as_ref().unwrap();
        assert_eq!(l.bound_k as usize, r.value);
        assert!(verify_irregular(g, l).ok());
    }

    #[test]
    fn k5_constant_is_reproducible() {
        let k5 = Graph::complete(5);
        let l = k5_labelling();
        assert!(verify_irregular(&k5, &l).ok());
        let w = weight_multiset(&k5, &l).unwrap();
        assert_eq!(w.len(), 10);
        assert!(w.iter().all(|&x| (3..=15).contains(&x)));
        let regenerated = exists_labelling(&k5, 5, &SearchConfig::default()).found().unwrap();
        assert_eq!(regenerated, l);
        assert_eq!(exists_labelling(&k5, 4, &SearchConfig::default()), SearchOutcome::NoneExists);
    }

    #[test]
    fn connected_examples() {
        let t = Graph::path(5);
        let r = label_connected(&t).unwrap();
        assert_eq!(r.method, Method::TreeConstruction);
        check(&t, &r);

        let k4 = Graph::complete(4);
        let r = label_connected(&k4).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.method, Method::IncrementalAugmentation);
        check(&k4, &r);
        assert_eq!(exact_tes(&k4, &SearchConfig::default()).unwrap().value, 3);

        assert_eq!(label_connected(&Graph::complete(5)), Err(ConstructError::IsK5));
        let two = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(label_connected(&two), Err(ConstructError::Graph(GraphError::Disconnected)));
    }

    #[test]
    fn closing_a_path() {
        let p4 = Graph::path(4);
        let tree = label_tree_with_root(&p4);
        let aug = augment_once(&p4, &tree.0, &tree.1, (0, 3)).unwrap();
        assert_eq!(aug.labelling.bound_k, 2);
        assert!(verify_irregular(&Graph::cycle(4), &aug.labelling).ok());
        assert_eq!(aug.graph, Graph::cycle(4));
        assert!(matches!(augment_once(&p4, &tree.0, &tree.1, (0, 1)), Err(ConstructError::DuplicateEdge(0, 1))));
    }

    fn label_tree_with_root(t: &Graph) -> (VertexPartition, TotalLabelling) {
        let p = tree::partition_tree(t).unwrap();
        let lambda = crate::bounds::tree_lambda(t).unwrap() as Label;
        let (l, _) = label_with_partition(t, &p, lambda).unwrap();
        (p, l)
    }

    #[test]
    fn augmentation_steps_are_monotone() {
        let g = crate::harness::generate::gen_random_connected(9, 16, 5).unwrap();
        let c = label_connected_detailed(&g).unwrap();
        for s in &c.steps {
            assert!(s.k_after >= s.k_before && s.k_after <= s.k_before + 1);
        }
        check(&g, &c.result);
    }

    #[test]
    fn disconnected_examples() {
        let s4 = Graph::star(4);
        let c4 = Graph::cycle(4);
        let p4 = Graph::path(4);
        let k5 = Graph::complete(5);

        let g = Graph::disjoint_union(&[&s4, &c4, &p4]);
        let r = label_disconnected(&g).unwrap();
        assert_eq!(r.value, 5);
        check(&g, &r);

        let g = Graph::disjoint_union(&[&k5, &k5]);
        let r = label_graph(&g).unwrap();
        assert_eq!(r.value, 8);
        check(&g, &r);

        let g = Graph::disjoint_union(&[&k5, &Graph::empty(3)]);
        let r = label_graph(&g).unwrap();
        assert_eq!(r.value, 5);
        check(&g, &r);

        assert_eq!(label_graph(&k5).unwrap().value, 5);
        assert!(matches!(label_graph(&Graph::empty(2)), Err(ConstructError::Bounds(BoundsError::Edgeless))));
    }

    #[test]
    fn component_ordering() {
        let star = Graph::star(10);
        let path = Graph::path(3);
        let g = Graph::disjoint_union(&[&path, &star, &Graph::empty(1)]);
        let order = component_order(&g);
        assert_eq!(order.len(), 2);
        assert_eq!(order[0][0], 3);
        let k5 = Graph::complete(5);
        let g = Graph::disjoint_union(&[&Graph::path(12), &k5]);
        assert_eq!(component_order(&g)[0], vec![12, 13, 14, 15, 16]);
    }
}
