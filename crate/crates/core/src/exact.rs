//! Exact branch-and-prune search for edge irregular total labellings.
//!
//! Edges are processed in a fixed order (higher minimum endpoint degree
//! first). Vertex labels are chosen lazily when the first incident edge is
//! reached, then the edge label is chosen so its weight is unused. After
//! each step the remaining edges are checked against the unused weights:
//! every edge must still reach one, there must be enough of them, and the
//! interval matching between the two must exist.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{bounds_report, BoundsError};
use crate::construct::{Method, TesResult};
use crate::graph::{Edge, Graph};
use crate::labelling::{Label, TotalLabelling};
use crate::matching::IntervalMatcher;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Limit on explored nodes; `None` makes the search complete.
    pub node_budget: Option<u64>,
    pub parallel: bool,
    /// Fix `f(u) <= f(v)` on the first edge of complete graphs and cycles.
    pub symmetry_reduction: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_budget: None, parallel: false, symmetry_reduction: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(TotalLabelling),
    NoneExists,
    BudgetExhausted,
}

impl SearchOutcome {
    pub fn found(self) -> Option<TotalLabelling> {
        match self {
            SearchOutcome::Found(l) => Some(l),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("node budget exhausted at k = {k}")]
    BudgetExhausted { k: Label },
    #[error("no labelling found up to k = {k}")]
    NotFound { k: Label },
}

/// Extra restrictions for searches inside a larger labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraints {
    /// Inclusive label range per vertex.
    pub vertex_domains: Vec<(Label, Label)>,
    /// Sorted weights the edges may use.
    pub allowed_weights: Vec<u32>,
}

impl Constraints {
    pub fn unrestricted(g: &Graph, k: Label) -> Self {
        Constraints { vertex_domains: vec![(1, k); g.vertex_count()], allowed_weights: (3..=3 * k).collect() }
    }
}

/// Decides whether `g` has an edge irregular total `k`-labelling.
pub fn exists_labelling(g: &Graph, k: Label, cfg: &SearchConfig) -> SearchOutcome {
    let sym = cfg.symmetry_reduction && symmetric_first_edge(g);
    Search::new(g, k, Constraints::unrestricted(g, k), sym).run(cfg)
}

/// [`exists_labelling`] with vertex label ranges and a restricted weight set.
pub fn exists_labelling_within(g: &Graph, k: Label, cfg: &SearchConfig, c: Constraints) -> SearchOutcome {
    Search::new(g, k, c, false).run(cfg)
}

/// Smallest `k` admitting a labelling, searched upwards from the lower bounds.
pub fn exact_tes(g: &Graph, cfg: &SearchConfig) -> Result<TesResult, ExactError> {
    let b = bounds_report(g)?;
    let start = b.edge_lower.max(b.degree_lower) as Label;
    let cap = (b.trivial_upper as Label).max(start);
    for k in start..=cap {
        match exists_labelling(g, k, cfg) {
            SearchOutcome::Found(l) => {
                return Ok(TesResult {
                    value: k as usize,
                    certificate: Some(l),
                    method: Method::ExactSearch,
                    fallback_used: false,
                })
            }
            SearchOutcome::NoneExists => continue,
            SearchOutcome::BudgetExhausted => return Err(ExactError::BudgetExhausted { k }),
        }
    }
    Err(ExactError::NotFound { k: cap })
}

/// Complete graphs and cycles have an automorphism swapping the endpoints of any edge.
fn symmetric_first_edge(g: &Graph) -> bool {
    let n = g.vertex_count();
    let complete = g.edge_count() == n * n.saturating_sub(1) / 2;
    let cycle = n >= 3 && g.is_connected() && (0..n).all(|v| g.degree(v) == 2);
    g.edge_count() > 0 && (complete || cycle)
}

const UNSET: Label = 0;

#[derive(Clone)]
struct Search<'g> {
    g: &'g Graph,
    k: Label,
    order: Vec<Edge>,
    domains: Vec<(Label, Label)>,
    allowed: Vec<bool>,
    symmetric: bool,
}

#[derive(Clone)]
struct Branch {
    vertex: Vec<Label>,
    edge: Vec<Label>,
    used: Vec<bool>,
    matcher: IntervalMatcher,
    intervals: Vec<(u32, u32)>,
    points: Vec<u32>,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Budget<'a> {
    limit: Option<u64>,
    spent: &'a AtomicU64,
    /// Branch index of the best solution found so far, for early exit of later branches.
    best: &'a AtomicUsize,
    branch: usize,
}

impl Budget<'_> {
    fn tick(&self) -> bool {
        let n = self.spent.fetch_add(1, Ordering::Relaxed) + 1;
        self.limit.is_none_or(|l| n <= l)
    }

    fn superseded(&self) -> bool {
        self.best.load(Ordering::Relaxed) < self.branch
    }
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, k: Label, c: Constraints, symmetric: bool) -> Self {
        let mut order = g.edges().to_vec();
        order.sort_by_key(|&(u, v)| (std::cmp::Reverse(g.degree(u).min(g.degree(v))), (u, v)));
        let mut allowed = vec![false; 3 * k as usize + 1];
        for &w in &c.allowed_weights {
            if (w as usize) < allowed.len() && w >= 3 {
                allowed[w as usize] = true;
            }
        }
        Search { g, k, order, domains: c.vertex_domains, allowed, symmetric }
    }

    fn empty_branch(&self) -> Branch {
        Branch {
            vertex: vec![UNSET; self.g.vertex_count()],
            edge: vec![UNSET; self.order.len()],
            used: vec![false; self.allowed.len()],
            matcher: IntervalMatcher::new(),
            intervals: Vec::new(),
            points: Vec::new(),
        }
    }

    /// Label choices `(f(u), f(v), f(e))` for edge `i` given the branch state.
    fn choices(&self, b: &Branch, i: usize) -> Vec<(Label, Label, Label)> {
        let (u, v) = self.order[i];
        let range = |x: usize| {
            if b.vertex[x] != UNSET {
                (b.vertex[x], b.vertex[x])
            } else {
                self.domains[x]
            }
        };
        let (lu, hu) = range(u);
        let (lv, hv) = range(v);
        let mut out = Vec::new();
        for fu in lu..=hu {
            let lv = if i == 0 && self.symmetric { lv.max(fu) } else { lv };
            for fv in lv..=hv {
                for fe in 1..=self.k {
                    let w = (fu + fv + fe) as usize;
                    if w < self.allowed.len() && self.allowed[w] && !b.used[w] {
                        out.push((fu, fv, fe));
                    }
                }
            }
        }
        out
    }

    fn apply(&self, b: &mut Branch, i: usize, (fu, fv, fe): (Label, Label, Label)) -> (bool, bool) {
        let (u, v) = self.order[i];
        let set_u = b.vertex[u] == UNSET;
        let set_v = b.vertex[v] == UNSET;
        b.vertex[u] = fu;
        b.vertex[v] = fv;
        b.edge[i] = fe;
        b.used[(fu + fv + fe) as usize] = true;
        (set_u, set_v)
    }

    fn undo(&self, b: &mut Branch, i: usize, (fu, fv, fe): (Label, Label, Label), (set_u, set_v): (bool, bool)) {
        let (u, v) = self.order[i];
        b.used[(fu + fv + fe) as usize] = false;
        b.edge[i] = UNSET;
        if set_u {
            b.vertex[u] = UNSET;
        }
        if set_v {
            b.vertex[v] = UNSET;
        }
    }

    /// Can edges `from..` still get distinct unused weights?
    fn viable(&self, b: &mut Branch, from: usize) -> bool {
        let remaining = self.order.len() - from;
        if remaining == 0 {
            return true;
        }
        b.points.clear();
        b.points.extend((3..self.allowed.len()).filter(|&w| self.allowed[w] && !b.used[w]).map(|w| w as u32));
        // counting
        if b.points.len() < remaining {
            return false;
        }
        b.intervals.clear();
        for &(u, v) in &self.order[from..] {
            let (lu, hu) = if b.vertex[u] != UNSET { (b.vertex[u], b.vertex[u]) } else { self.domains[u] };
            let (lv, hv) = if b.vertex[v] != UNSET { (b.vertex[v], b.vertex[v]) } else { self.domains[v] };
            let (lo, hi) = (lu + lv + 1, hu + hv + self.k);
            // each edge must reach some unused weight
            let first = b.points.partition_point(|&p| p < lo);
            if first == b.points.len() || b.points[first] > hi {
                return false;
            }
            b.intervals.push((lo, hi));
        }
        b.matcher.assign(&b.intervals, &b.points, None)
    }

    fn descend(&self, b: &mut Branch, i: usize, budget: &Budget) -> Step {
        if i == self.order.len() {
            return Step::Found;
        }
        if budget.superseded() {
            return Step::Exhausted;
        }
        for choice in self.choices(b, i) {
            if !budget.tick() {
                return Step::OutOfBudget;
            }
            let undo = self.apply(b, i, choice);
            if self.viable(b, i + 1) {
                match self.descend(b, i + 1, budget) {
                    Step::Exhausted => {}
                    done => return done,
                }
            }
            self.undo(b, i, choice, undo);
        }
        Step::Exhausted
    }

    fn certificate(&self, b: &Branch) -> TotalLabelling {
        let vertex_labels =
            b.vertex.iter().enumerate().map(|(v, &x)| if x == UNSET { self.domains[v].0 } else { x }).collect();
        let edge_labels = self.order.iter().copied().zip(b.edge.iter().copied()).collect();
        TotalLabelling::new(vertex_labels, edge_labels, self.k)
    }

    /// Runs the subtree under one first-edge choice.
    fn run_branch(&self, idx: usize, choice: (Label, Label, Label), budget: &Budget) -> (Step, Option<TotalLabelling>) {
        let mut b = self.empty_branch();
        self.apply(&mut b, 0, choice);
        if !self.viable(&mut b, 1) {
            return (Step::Exhausted, None);
        }
        match self.descend(&mut b, 1, budget) {
            Step::Found => {
                budget.best.fetch_min(idx, Ordering::Relaxed);
                (Step::Found, Some(self.certificate(&b)))
            }
            other => (other, None),
        }
    }

    fn run(&self, cfg: &SearchConfig) -> SearchOutcome {
        if self.order.is_empty() {
            let b = self.empty_branch();
            return SearchOutcome::Found(self.certificate(&b));
        }
        let mut root = self.empty_branch();
        if self.domains.iter().any(|&(lo, hi)| lo > hi || hi > self.k || lo < 1) || !self.viable(&mut root, 0) {
            return SearchOutcome::NoneExists;
        }
        let first = self.choices(&root, 0);
        let spent = AtomicU64::new(0);
        let best = AtomicUsize::new(usize::MAX);
        let budget_for = |branch| Budget { limit: cfg.node_budget, spent: &spent, best: &best, branch };

        let results: Vec<(Step, Option<TotalLabelling>)> = if cfg.parallel {
            first.par_iter().enumerate().map(|(idx, &c)| self.run_branch(idx, c, &budget_for(idx))).collect()
        } else {
            let mut out = Vec::new();
            for (idx, &c) in first.iter().enumerate() {
                let r = self.run_branch(idx, c, &budget_for(idx));
                let stop = !matches!(r.0, Step::Exhausted);
                out.push(r);
                if stop {
                    break;
                }
            }
            out
        };

        // lowest branch index decides, as a sequential search would
        for (step, cert) in results {
            match step {
                Step::Found => return SearchOutcome::Found(cert.expect("found branches carry a certificate")),
                Step::OutOfBudget => return SearchOutcome::BudgetExhausted,
                Step::Exhausted => {}
            }
        }
        SearchOutcome::NoneExists
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelling::verify_irregular;

    #[test]
    fn single_edge() {
        let g = Graph::path(2);
        let l = exists_labelling(&g, 1, &SearchConfig::default()).found().unwrap();
        assert_eq!(l.vertex_labels, vec![1, 1]);
        assert_eq!(l.edge_label(0, 1), Some(1));
    }

    #[test]
    fn k5() {
        let g = Graph::complete(5);
        assert_eq!(exists_labelling(&g, 4, &SearchConfig::default()), SearchOutcome::NoneExists);
        let l = exists_labelling(&g, 5, &SearchConfig::default()).found().unwrap();
        assert!(verify_irregular(&g, &l).ok());
        assert_eq!(exact_tes(&g, &SearchConfig::default()).unwrap().value, 5);
    }

    #[test]
    fn small_values() {
        let cfg = SearchConfig::default();
        assert_eq!(exact_tes(&Graph::path(4), &cfg).unwrap().value, 2);
        assert_eq!(exact_tes(&Graph::cycle(5), &cfg).unwrap().value, 3);
        assert_eq!(exact_tes(&Graph::cycle(4), &cfg).unwrap().value, 2);
        assert_eq!(exact_tes(&Graph::complete(4), &cfg).unwrap().value, 3);
        assert_eq!(exact_tes(&Graph::empty(3), &cfg), Err(ExactError::Bounds(BoundsError::Edgeless)));
    }

    #[test]
    fn budget_is_reported() {
        let cfg = SearchConfig { node_budget: Some(5), ..SearchConfig::default() };
        assert_eq!(exists_labelling(&Graph::complete(5), 4, &cfg), SearchOutcome::BudgetExhausted);
        assert_eq!(exact_tes(&Graph::complete(5), &cfg), Err(ExactError::BudgetExhausted { k: 4 }));
    }

    #[test]
    fn parallel_matches_serial() {
        for g in [Graph::complete(5), Graph::cycle(7), Graph::star(6), Graph::complete(4)] {
            for sym in [false, true] {
                let serial = SearchConfig { symmetry_reduction: sym, ..SearchConfig::default() };
                let par = SearchConfig { parallel: true, ..serial };
                let a = exact_tes(&g, &serial).unwrap();
                let b = exact_tes(&g, &par).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn constrained_search() {
        // single edge with both ends forced to 2 and only weight 7 allowed
        let g = Graph::path(2);
        let c = Constraints { vertex_domains: vec![(2, 2), (2, 2)], allowed_weights: vec![7] };
        let l = exists_labelling_within(&g, 3, &SearchConfig::default(), c).found().unwrap();
        assert_eq!(l.edge_label(0, 1), Some(3));
        let c = Constraints { vertex_domains: vec![(2, 2), (2, 2)], allowed_weights: vec![4] };
        assert_eq!(exists_labelling_within(&g, 3, &SearchConfig::default(), c), SearchOutcome::NoneExists);
    }
}
