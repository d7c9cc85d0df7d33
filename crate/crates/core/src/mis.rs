//! Exact maximum independent set by branch and bound.
//!
//! Searches for a maximum clique in the complement, bounding each branch by
//! a greedy coloring of the candidate set.

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_MIS_LIMIT: usize = 64;

pub fn independence_number(g: &Graph) -> Result<usize> {
    independence_number_with_limit(g, DEFAULT_MIS_LIMIT)
}

pub fn independence_number_with_limit(g: &Graph, limit: usize) -> Result<usize> {
    Ok(maximum_independent_set(g, limit)?.len())
}

/// A maximum independent set (sorted).
pub fn maximum_independent_set(g: &Graph, limit: usize) -> Result<Vec<usize>> {
    if g.n() > limit {
        return Err(Error::LimitExceeded {
            what: format!("independence number on {} vertices", g.n()),
            limit,
        });
    }
    let comp = g.complement();
    let mut search = CliqueSearch {
        adj: (0..g.n()).map(|v| comp.neighbors(v).clone()).collect(),
        current: Vec::new(),
        best: Vec::new(),
    };
    search.expand(Bitset::full(g.n()));
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

struct CliqueSearch {
    adj: Vec<Bitset>,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl CliqueSearch {
    fn expand(&mut self, mut cand: Bitset) {
        let (order, colors) = self.color(&cand);
        for idx in (0..order.len()).rev() {
            if self.current.len() + colors[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            self.current.push(v);
            let mut next = cand.clone();
            next.intersect_with(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand.remove(v);
        }
    }

    /// Greedy sequential coloring; returns vertices sorted by color with the
    /// (1-based) color of each.
    fn color(&self, cand: &Bitset) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.count());
        let mut colors = Vec::with_capacity(order.capacity());
        let mut uncolored = cand.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.difference_with(&self.adj[v]);
                uncolored.remove(v);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }
}
