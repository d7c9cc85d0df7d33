use super::hypergraph::require_shortest;
use crate::constructions::binomial;
use crate::engine::ReconfigSequence;
use crate::error::Result;
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBoundVerdict {
    /// Steps of the sequence map to distinct (k-1)-sets.
    pub injective: bool,
    pub steps: usize,
    /// `C(n, k-1)`.
    pub bound: usize,
    /// Two steps sharing their intersection, when not injective.
    pub collision: Option<(usize, usize)>,
}

impl UpperBoundVerdict {
    pub fn pass(&self) -> bool {
        self.injective && self.steps <= self.bound
    }
}

/// Maps step `i` to the `k - 1` vertices shared by sets `i` and `i + 1`.
/// Shortest sequences never reuse an intersection, so their length is at
/// most `C(n, k-1)`.
pub fn verify_upper_bound_mapping(g: &Graph, seq: &ReconfigSequence, cap: usize) -> Result<UpperBoundVerdict> {
    require_shortest(g, seq, cap)?;
    let k = seq.k().unwrap();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::with_capacity(seq.steps());
    let mut collision = None;
    for (i, w) in seq.sets().windows(2).enumerate() {
        if let Some(&j) = seen.get(&w[0].intersection(&w[1])) {
            collision = Some((j, i));
            break;
        }
        seen.insert(w[0].intersection(&w[1]), i);
    }
    Ok(UpperBoundVerdict {
        injective: collision.is_none(),
        steps: seq.steps(),
        bound: binomial(g.n(), k - 1),
        collision,
    })
}
