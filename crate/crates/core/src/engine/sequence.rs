use super::ReconfigRule;
use crate::error::{Error, Result};
use crate::graph::{Graph, IndependentSet};
use serde::Serialize;

/// Consecutive independent sets, each one reconfiguration step from the last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ReconfigSequence(Vec<IndependentSet>);

impl ReconfigSequence {
    /// Checks every invariant against `g` and `rule`.
    pub fn new(g: &Graph, rule: ReconfigRule, sets: Vec<IndependentSet>) -> Result<Self> {
        let seq = ReconfigSequence(sets);
        seq.validate(g, rule)?;
        Ok(seq)
    }

    pub(crate) fn from_sets_unchecked(sets: Vec<IndependentSet>) -> Self {
        ReconfigSequence(sets)
    }

    pub fn sets(&self) -> &[IndependentSet] {
        &self.0
    }

    /// Number of steps (one less than the number of sets).
    pub fn steps(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn first(&self) -> Option<&IndependentSet> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&IndependentSet> {
        self.0.last()
    }

    pub fn k(&self) -> Option<usize> {
        self.0.first().map(IndependentSet::k)
    }

    pub fn validate(&self, g: &Graph, rule: ReconfigRule) -> Result<()> {
        let Some(first) = self.0.first() else {
            return Err(Error::invalid("empty reconfiguration sequence"));
        };
        let k = first.k();
        for (i, s) in self.0.iter().enumerate() {
            if s.k() != k {
                return Err(Error::invalid(format!("set {i} has size {} instead of {k}", s.k())));
            }
            if s.vertices().windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::invalid(format!("set {i} is not strictly sorted")));
            }
            if !g.is_independent(s.vertices())? {
                return Err(Error::invalid(format!("set {i} = {s} is not independent")));
            }
        }
        for (i, w) in self.0.windows(2).enumerate() {
            if w[0].overlap(&w[1]) + 1 != k {
                return Err(Error::invalid(format!("step {i}: {} -> {} is not a single move", w[0], w[1])));
            }
            if rule == ReconfigRule::TokenSliding {
                let out = w[0].vertices().iter().find(|&&v| !w[1].contains(v)).copied();
                let inn = w[1].vertices().iter().find(|&&v| !w[0].contains(v)).copied();
                if let (Some(u), Some(v)) = (out, inn) {
                    if !g.has_edge(u, v) {
                        return Err(Error::invalid(format!("step {i}: slide {u} -> {v} is not along an edge")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Vertex removed and vertex added at step `i`.
    pub fn step(&self, i: usize) -> (usize, usize) {
        let (a, b) = (&self.0[i], &self.0[i + 1]);
        let out = a.vertices().iter().copied().find(|&v| !b.contains(v)).expect("sets differ");
        let inn = b.vertices().iter().copied().find(|&v| !a.contains(v)).expect("sets differ");
        (out, inn)
    }
}
