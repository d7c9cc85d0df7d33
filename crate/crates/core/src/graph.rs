//! Dense undirected simple graphs and independent sets.

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;

/// Undirected simple graph with bitset adjacency rows.
///
/// Vertices are `0..n`. An optional integer label per vertex survives
/// relabeling and deletion, which is how the modular constructions keep
/// their residues checkable.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Bitset>,
    labels: Option<Vec<i64>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![Bitset::new(n); n],
            labels: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| {
                let mut row = Bitset::full(n);
                row.remove(v);
                row
            })
            .collect();
        Self {
            n,
            adj,
            labels: None,
        }
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bitset::count).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at vertex {u}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Pairs `(u, v)`, `u < v`, that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| ((u + 1)..self.n).filter(move |&v| !self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let adj = (0..self.n)
            .map(|v| {
                let mut row = self.adj[v].clone();
                row.complement();
                row.remove(v);
                row
            })
            .collect();
        Graph {
            n: self.n,
            adj,
            labels: self.labels.clone(),
        }
    }

    /// Subgraph induced by `keep` (in the given order); labels follow their vertices.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g.labels = self
            .labels
            .as_ref()
            .map(|l| keep.iter().map(|&v| l[v]).collect());
        g
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<i64> {
        self.labels.as_ref().map(|l| l[v])
    }

    pub fn set_labels(&mut self, labels: Vec<i64>) -> Result<()> {
        if labels.len() != self.n {
            return Err(Error::invalid(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        let mut seen = HashSet::with_capacity(labels.len());
        if let Some(dup) = labels.iter().find(|l| !seen.insert(**l)) {
            return Err(Error::invalid(format!("label {dup} used twice")));
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn clear_labels(&mut self) {
        self.labels = None;
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`. Labels are dropped.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    fn check_range(&self, s: &[usize]) -> Result<()> {
        match s.iter().find(|&&v| v >= self.n) {
            Some(v) => Err(Error::invalid(format!(
                "vertex {v} out of range for {} vertices",
                self.n
            ))),
            None => Ok(()),
        }
    }

    /// True iff no two vertices of `s` are adjacent.
    pub fn is_independent(&self, s: &[usize]) -> Result<bool> {
        self.check_range(s)?;
        Ok(s
            .iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v))))
    }

    /// True iff every two distinct vertices of `s` are adjacent.
    pub fn is_clique(&self, s: &[usize]) -> Result<bool> {
        self.check_range(s)?;
        Ok(s
            .iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v))))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// A strictly increasing list of pairwise non-adjacent vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndependentSet(Vec<usize>);

impl IndependentSet {
    /// Sorts `vertices` and checks independence in `g`.
    pub fn new(g: &Graph, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("repeated vertex in {vertices:?}")));
        }
        if !g.is_independent(&vertices)? {
            return Err(Error::invalid(format!("{vertices:?} is not independent")));
        }
        Ok(Self(vertices))
    }

    /// Caller guarantees the vertices are strictly increasing and independent.
    pub(crate) fn from_sorted_unchecked(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self(vertices)
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Number of shared vertices with `other`.
    pub fn overlap(&self, other: &IndependentSet) -> usize {
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    pub fn intersection(&self, other: &IndependentSet) -> Vec<usize> {
        self.0.iter().copied().filter(|&v| other.contains(v)).collect()
    }

    /// Union with vertices that are already known to be independent with the set.
    pub fn union_unchecked(&self, extra: &[usize]) -> IndependentSet {
        let mut v = self.0.clone();
        v.extend_from_slice(extra);
        v.sort_unstable();
        v.dedup();
        IndependentSet(v)
    }
}

impl fmt::Display for IndependentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
