use crate::engine::{Engine, ReconfigRule, ReconfigSequence};
use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::str::FromStr;

/// 3-uniform hypergraph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph3 {
    n: usize,
    edges: Vec<[usize; 3]>,
}

impl Hypergraph3 {
    /// Sorts each triple and the edge list; rejects repeats, degenerate
    /// triples and out-of-range vertices.
    pub fn new(n: usize, edges: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        let mut out = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            if e[0] == e[1] || e[1] == e[2] {
                return Err(Error::invalid(format!("hyperedge {e:?} has a repeated vertex")));
            }
            if e[2] >= n {
                return Err(Error::invalid(format!("hyperedge {e:?} out of range for {n} vertices")));
            }
            if !out.insert(e) {
                return Err(Error::invalid(format!("hyperedge {e:?} repeated")));
            }
        }
        Ok(Self { n, edges: out.into_iter().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// A set of at most 6 vertices containing 3 hyperedges, if any.
    pub fn find_63_violation(&self) -> Option<Vec<usize>> {
        let e = &self.edges;
        let mut union = Vec::with_capacity(9);
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                union.clear();
                union.extend_from_slice(&e[i]);
                union.extend_from_slice(&e[j]);
                union.sort_unstable();
                union.dedup();
                let base = union.len();
                for el in &e[j + 1..] {
                    let extra = el.iter().filter(|v| !union.contains(v)).count();
                    if base + extra <= 6 {
                        let mut w = union.clone();
                        w.extend(el.iter().filter(|v| !union.contains(v)));
                        w.sort_unstable();
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    /// No 6 vertices contain 3 or more hyperedges.
    pub fn is_63_free(&self) -> bool {
        self.find_63_violation().is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::invalid(format!("parity must be even or odd, got {s:?}"))),
        }
    }
}

/// Errors unless `seq` is a shortest TJ sequence between its ends in `g`.
pub(crate) fn require_shortest(g: &Graph, seq: &ReconfigSequence, cap: usize) -> Result<()> {
    seq.validate(g, ReconfigRule::TokenJumping)?;
    let (first, last) = (seq.first().unwrap(), seq.last().unwrap());
    let d = Engine::new(g, first.k(), ReconfigRule::TokenJumping)?
        .with_cap(cap)
        .distance(first, last)?;
    if d != Some(seq.steps()) {
        return Err(Error::precondition(format!(
            "sequence has {} steps but the distance is {d:?}",
            seq.steps()
        )));
    }
    Ok(())
}

/// Independent sets at even (or odd) positions of a shortest R_3 sequence.
pub fn extract_63(g: &Graph, seq: &ReconfigSequence, parity: Parity, cap: usize) -> Result<Hypergraph3> {
    if seq.k() != Some(3) {
        return Err(Error::precondition(format!("extraction needs k = 3, got {:?}", seq.k())));
    }
    require_shortest(g, seq, cap)?;
    let skip = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let edges = seq.sets().iter().skip(skip).step_by(2).map(|s| {
        let v = s.vertices();
        [v[0], v[1], v[2]]
    });
    Hypergraph3::new(g.n(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_edges_on_five_vertices() {
        let h = Hypergraph3::new(6, [[1, 2, 3], [1, 2, 4], [1, 2, 5]]).unwrap();
        assert_eq!(h.find_63_violation(), Some(vec![1, 2, 3, 4, 5]));
        assert!(Hypergraph3::new(3, [[0, 1, 2]]).unwrap().is_63_free());
        assert!(Hypergraph3::new(9, [[0, 1, 2], [3, 4, 5], [6, 7, 8]]).unwrap().is_63_free());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Hypergraph3::new(3, [[0, 0, 1]]).is_err());
        assert!(Hypergraph3::new(3, [[0, 1, 3]]).is_err());
        assert!(Hypergraph3::new(3, [[0, 1, 2], [2, 1, 0]]).is_err());
    }
}
