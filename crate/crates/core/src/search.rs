//! Backtracking over vertex labels with weight pools.
//!
//! The constructive labellers fix some vertex labels (the A and C classes),
//! leave the rest inside a range, and give every edge a pool of weights it
//! may take. Once every vertex label is fixed the edge labels follow from a
//! matching of edges to pool weights; before that, each edge's reachable
//! weights form an interval and the same matching test prunes the search.

use std::collections::BTreeMap;

use crate::graph::{Graph, Vertex};
use crate::labelling::{Label, TotalLabelling};
use crate::matching::IntervalMatcher;

/// Weights reserved for a group of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pool {
    /// Sorted, distinct weights.
    pub points: Vec<u32>,
    /// Indices into `graph.edges()`.
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueOrder {
    /// Start at the previously assigned label and go up, then down.
    NondecreasingFirst,
    Ascending,
    /// Start from the middle of the range and move outwards.
    CentreOut,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchFailure {
    /// The search space was exhausted. Carries the deepest partial vertex assignment seen.
    Infeasible {
        partial: Vec<Option<Label>>,
    },
    BudgetExhausted {
        partial: Vec<Option<Label>>,
    },
}

impl SearchFailure {
    pub fn partial(&self) -> &[Option<Label>] {
        match self {
            SearchFailure::Infeasible { partial } | SearchFailure::BudgetExhausted { partial } => partial,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LabelProblem<'g> {
    pub graph: &'g Graph,
    pub k: Label,
    /// Inclusive label range per vertex; a fixed label has `lo == hi`.
    pub domains: Vec<(Label, Label)>,
    /// Every edge must belong to exactly one pool.
    pub pools: Vec<Pool>,
    /// Branching order. Free vertices missing from it are appended.
    pub order: Vec<Vertex>,
    pub value_order: ValueOrder,
    pub node_budget: u64,
}

struct State<'p, 'g> {
    problem: &'p LabelProblem<'g>,
    domains: Vec<(Label, Label)>,
    order: Vec<Vertex>,
    pools_of_vertex: Vec<Vec<usize>>,
    matcher: IntervalMatcher,
    scratch: Vec<(u32, u32)>,
    nodes: u64,
    deepest: usize,
    deepest_partial: Vec<Option<Label>>,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl<'g> LabelProblem<'g> {
    pub fn solve(&self) -> Result<TotalLabelling, SearchFailure> {
        let g = self.graph;
        debug_assert_eq!(self.domains.len(), g.vertex_count());
        debug_assert_eq!(self.pools.iter().map(|p| p.edges.len()).sum::<usize>(), g.edge_count());

        let mut order = self.order.clone();
        for v in 0..g.vertex_count() {
            let (lo, hi) = self.domains[v];
            if lo < hi && !order.contains(&v) {
                order.push(v);
            }
        }
        let mut pools_of_vertex = vec![Vec::new(); g.vertex_count()];
        for (pi, pool) in self.pools.iter().enumerate() {
            for &ei in &pool.edges {
                let (u, v) = g.edges()[ei];
                for w in [u, v] {
                    if pools_of_vertex[w].last() != Some(&pi) {
                        pools_of_vertex[w].push(pi);
                    }
                }
            }
        }
        let mut st = State {
            problem: self,
            domains: self.domains.clone(),
            order,
            pools_of_vertex,
            matcher: IntervalMatcher::new(),
            scratch: Vec::new(),
            nodes: 0,
            deepest: 0,
            deepest_partial: Vec::new(),
        };
        st.record_partial(0);

        let all_pools: Vec<usize> = (0..self.pools.len()).collect();
        if self.domains.iter().any(|&(lo, hi)| lo > hi) || !st.pools_feasible(&all_pools) {
            return Err(SearchFailure::Infeasible { partial: st.deepest_partial });
        }
        match st.descend(0) {
            Step::Found => Ok(st.certificate()),
            Step::Exhausted => Err(SearchFailure::Infeasible { partial: st.deepest_partial }),
            Step::OutOfBudget => Err(SearchFailure::BudgetExhausted { partial: st.deepest_partial }),
        }
    }
}

impl State<'_, '_> {
    fn record_partial(&mut self, depth: usize) {
        if depth >= self.deepest || self.deepest_partial.is_empty() {
            self.deepest = depth;
            self.deepest_partial = self.domains.iter().map(|&(lo, hi)| (lo == hi).then_some(lo)).collect();
        }
    }

    fn intervals_into(&mut self, pool: usize) {
        let p = self.problem;
        let k = p.k;
        self.scratch.clear();
        for &ei in &p.pools[pool].edges {
            let (u, v) = p.graph.edges()[ei];
            let (lu, hu) = self.domains[u];
            let (lv, hv) = self.domains[v];
            self.scratch.push((lu + lv + 1, hu + hv + k));
        }
    }

    fn pools_feasible(&mut self, pools: &[usize]) -> bool {
        for &pi in pools {
            self.intervals_into(pi);
            let points = &self.problem.pools[pi].points;
            if !self.matcher.assign(&self.scratch, points, None) {
                return false;
            }
        }
        true
    }

    fn candidate_values(&self, depth: usize, v: Vertex) -> Vec<Label> {
        let (lo, hi) = self.domains[v];
        match self.problem.value_order {
            ValueOrder::Ascending => (lo..=hi).collect(),
            ValueOrder::NondecreasingFirst => {
                let prev = if depth == 0 { lo } else { self.domains[self.order[depth - 1]].0 };
                let start = prev.clamp(lo, hi);
                (start..=hi).chain((lo..start).rev()).collect()
            }
            ValueOrder::CentreOut => {
                let mid = lo + (hi - lo) / 2;
                let mut out = Vec::with_capacity((hi - lo + 1) as usize);
                out.push(mid);
                for d in 1..=(hi - lo) {
                    if mid + d <= hi {
                        out.push(mid + d);
                    }
                    if mid >= lo + d {
                        out.push(mid - d);
                    }
                }
                out
            }
        }
    }

    fn descend(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            return Step::Found;
        }
        let v = self.order[depth];
        let saved = self.domains[v];
        let touched = self.pools_of_vertex[v].clone();
        for value in self.candidate_values(depth, v) {
            self.nodes += 1;
            if self.nodes > self.problem.node_budget {
                self.domains[v] = saved;
                return Step::OutOfBudget;
            }
            self.domains[v] = (value, value);
            if self.pools_feasible(&touched) {
                self.record_partial(depth + 1);
                match self.descend(depth + 1) {
                    Step::Exhausted => {}
                    done => return done,
                }
            }
        }
        self.domains[v] = saved;
        Step::Exhausted
    }

    fn certificate(&mut self) -> TotalLabelling {
        let p = self.problem;
        let g = p.graph;
        let vertex_labels: Vec<Label> = self.domains.iter().map(|&(lo, _)| lo).collect();
        let mut edge_labels = BTreeMap::new();
        let mut weights = Vec::new();
        for pi in 0..p.pools.len() {
            self.intervals_into(pi);
            let ok = self.matcher.assign(&self.scratch, &p.pools[pi].points, Some(&mut weights));
            assert!(ok, "leaf assignment passed the feasibility check");
            for (&ei, &w) in p.pools[pi].edges.iter().zip(&weights) {
                let (u, v) = g.edges()[ei];
                edge_labels.insert((u, v), w - vertex_labels[u] - vertex_labels[v]);
            }
        }
        TotalLabelling::new(vertex_labels, edge_labels, p.k)
    }
}

/// One pool holding every edge and the given weights.
pub fn single_pool(g: &Graph, points: Vec<u32>) -> Vec<Pool> {
    vec![Pool { points, edges: (0..g.edge_count()).collect() }]
}
