//! Matching of intervals to points.
//!
//! Each edge of a partially labelled graph can still reach a contiguous range
//! of weights, so Hall's condition for "every edge gets its own weight"
//! reduces to an interval/point matching, which an earliest-deadline greedy
//! decides exactly.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Reusable scratch space for [`IntervalMatcher::assign`].
#[derive(Debug, Default, Clone)]
pub struct IntervalMatcher {
    order: Vec<usize>,
    heap: BinaryHeap<Reverse<(u32, usize)>>,
}

impl IntervalMatcher {
    pub fn new() -> Self {
        Self::default()
    }

    /// Gives every interval `[lo, hi]` its own point from `points`
    /// (sorted ascending, distinct). Points are consumed lowest first.
    ///
    /// Returns `false` if no such assignment exists. When `out` is given it
    /// receives the chosen point per interval.
    pub fn assign(&mut self, intervals: &[(u32, u32)], points: &[u32], mut out: Option<&mut Vec<u32>>) -> bool {
        if intervals.len() > points.len() {
            return false;
        }
        self.order.clear();
        self.order.extend(0..intervals.len());
        self.order.sort_unstable_by_key(|&i| intervals[i].0);
        self.heap.clear();
        if let Some(out) = out.as_deref_mut() {
            out.clear();
            out.resize(intervals.len(), 0);
        }

        let mut next = 0;
        let mut matched = 0;
        for &p in points {
            if matched == intervals.len() {
                break;
            }
            while next < self.order.len() && intervals[self.order[next]].0 <= p {
                let i = self.order[next];
                self.heap.push(Reverse((intervals[i].1, i)));
                next += 1;
            }
            if let Some(&Reverse((hi, i))) = self.heap.peek() {
                if hi < p {
                    return false;
                }
                self.heap.pop();
                if let Some(out) = out.as_deref_mut() {
                    out[i] = p;
                }
                matched += 1;
            }
        }
        matched == intervals.len()
    }
}

/// One-shot convenience wrapper around [`IntervalMatcher::assign`].
pub fn match_intervals(intervals: &[(u32, u32)], points: &[u32]) -> Option<Vec<u32>> {
    let mut out = Vec::new();
    IntervalMatcher::new().assign(intervals, points, Some(&mut out)).then_some(out)
}
