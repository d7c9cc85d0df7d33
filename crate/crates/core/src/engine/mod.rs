//! Implicit exploration of the k-configuration graph R_k(G).
//!
//! Nodes are k-independent sets, packed into an [`IsKey`]. Two nodes are
//! adjacent when they differ by exactly one vertex (token jumping), and for
//! token sliding the two swapped vertices must also be adjacent in G.

mod component;
mod report;
mod sequence;

pub use component::{ConfigComponent, Exploration, Partition};
pub use report::DiameterReport;
pub use sequence::ReconfigSequence;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::{Graph, IndependentSet};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_NODE_CAP: usize = 5_000_000;

/// Largest token count a key can hold: 8 slots of 16 bits.
pub const MAX_K: usize = 8;
const SLOT_BITS: u32 = 16;
pub const MAX_VERTICES: usize = 1 << SLOT_BITS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReconfigRule {
    #[serde(rename = "tj")]
    TokenJumping,
    #[serde(rename = "ts")]
    TokenSliding,
}

impl ReconfigRule {
    pub fn as_str(self) -> &'static str {
        match self {
            ReconfigRule::TokenJumping => "tj",
            ReconfigRule::TokenSliding => "ts",
        }
    }
}

impl fmt::Display for ReconfigRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReconfigRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tj" | "jump" | "token-jumping" => Ok(ReconfigRule::TokenJumping),
            "ts" | "slide" | "token-sliding" => Ok(ReconfigRule::TokenSliding),
            other => Err(Error::invalid(format!("unknown rule `{other}` (expected tj or ts)"))),
        }
    }
}

/// Sorted vertex list packed into one integer, first vertex in the most
/// significant slot, so that key order is lexicographic order for a fixed k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsKey(u128);

impl IsKey {
    #[inline]
    pub fn encode(vertices: &[usize]) -> Self {
        debug_assert!(vertices.len() <= MAX_K);
        IsKey(vertices.iter().fold(0u128, |acc, &v| (acc << SLOT_BITS) | v as u128))
    }

    #[inline]
    pub fn decode_into(self, k: usize, out: &mut Vec<usize>) {
        out.clear();
        let mask = (1u128 << SLOT_BITS) - 1;
        for j in (0..k).rev() {
            out.push(((self.0 >> (SLOT_BITS * j as u32)) & mask) as usize);
        }
    }

    pub fn decode(self, k: usize) -> Vec<usize> {
        let mut v = Vec::with_capacity(k);
        self.decode_into(k, &mut v);
        v
    }

    pub fn raw(self) -> u128 {
        self.0
    }
}

/// Exploration of R_k(G) for one graph, token count and rule.
#[derive(Clone, Debug)]
pub struct Engine<'g> {
    g: &'g Graph,
    k: usize,
    rule: ReconfigRule,
    cap: usize,
}

impl<'g> Engine<'g> {
    pub fn new(g: &'g Graph, k: usize, rule: ReconfigRule) -> Result<Self> {
        if k > MAX_K {
            return Err(Error::invalid(format!("k = {k} exceeds the supported maximum {MAX_K}")));
        }
        if g.n() > MAX_VERTICES {
            return Err(Error::invalid(format!(
                "{} vertices exceed the supported maximum {MAX_VERTICES}",
                g.n()
            )));
        }
        Ok(Self {
            g,
            k,
            rule,
            cap: DEFAULT_NODE_CAP,
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rule(&self) -> ReconfigRule {
        self.rule
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, s: &IndependentSet) -> Result<()> {
        if s.k() != self.k {
            return Err(Error::invalid(format!("{s} has size {}, expected {}", s.k(), self.k)));
        }
        if !self.g.is_independent(s.vertices())? {
            return Err(Error::invalid(format!("{s} is not independent")));
        }
        Ok(())
    }

    pub fn key_of(&self, s: &IndependentSet) -> IsKey {
        IsKey::encode(s.vertices())
    }

    pub fn set_of(&self, key: IsKey) -> IndependentSet {
        IndependentSet::from_sorted_unchecked(key.decode(self.k))
    }

    /// Neighbors of `s` in R_k(G), sorted lexicographically.
    pub fn neighbors(&self, s: &IndependentSet) -> Result<Vec<IndependentSet>> {
        self.check(s)?;
        let mut scratch = Scratch::new(self.g.n());
        let mut keys = Vec::new();
        self.neighbor_keys(s.vertices(), &mut scratch, &mut keys);
        Ok(keys.into_iter().map(|k| self.set_of(k)).collect())
    }

    /// Appends the sorted neighbor keys of the independent set `verts`.
    pub(crate) fn neighbor_keys(&self, verts: &[usize], scratch: &mut Scratch, out: &mut Vec<IsKey>) {
        out.clear();
        let k = verts.len();
        if k == 0 {
            return;
        }
        let n = self.g.n();
        // prefix[i] = union of N[v_0..v_i), suffix likewise from the end
        let words = scratch.prefix[0].words().len();
        for w in 0..words {
            scratch.prefix[0].words_mut()[w] = 0;
        }
        for i in 0..k {
            let (head, tail) = scratch.prefix.split_at_mut(i + 1);
            let next = &mut tail[0];
            next.words_mut().copy_from_slice(head[i].words());
            next.union_with(self.g.neighbors(verts[i]));
            next.insert(verts[i]);
        }
        scratch.suffix[k].clear();
        for i in (0..k).rev() {
            let (head, tail) = scratch.suffix.split_at_mut(i + 1);
            let cur = &mut head[i];
            cur.words_mut().copy_from_slice(tail[0].words());
            cur.union_with(self.g.neighbors(verts[i]));
            cur.insert(verts[i]);
        }
        scratch.buf.clear();
        for (i, &removed) in verts.iter().enumerate() {
            let cand = &mut scratch.cand;
            cand.words_mut().copy_from_slice(scratch.prefix[i].words());
            cand.union_with(&scratch.suffix[i + 1]);
            for &v in verts {
                cand.insert(v);
            }
            cand.complement();
            if self.rule == ReconfigRule::TokenSliding {
                cand.intersect_with(self.g.neighbors(removed));
            }
            for w in cand.iter() {
                debug_assert!(w < n);
                scratch.buf.clear();
                let mut placed = false;
                for (j, &v) in verts.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    if !placed && w < v {
                        scratch.buf.push(w);
                        placed = true;
                    }
                    scratch.buf.push(v);
                }
                if !placed {
                    scratch.buf.push(w);
                }
                out.push(IsKey::encode(&scratch.buf));
            }
        }
        out.sort_unstable();
    }

    /// All k-independent sets in lexicographic order, or `Capped` if there
    /// are more than the node cap.
    pub fn independent_sets(&self) -> Result<Vec<IsKey>> {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(self.k);
        let all = Bitset::full(self.g.n());
        self.collect_sets(&all, &mut stack, &mut out)?;
        Ok(out)
    }

    fn collect_sets(&self, cand: &Bitset, stack: &mut Vec<usize>, out: &mut Vec<IsKey>) -> Result<()> {
        if stack.len() == self.k {
            if out.len() >= self.cap {
                return Err(Error::Capped {
                    cap: self.cap,
                    visited: out.len(),
                });
            }
            out.push(IsKey::encode(stack));
            return Ok(());
        }
        let need = self.k - stack.len();
        if cand.count() < need {
            return Ok(());
        }
        for v in cand.iter() {
            let mut next = cand.clone();
            next.difference_with(self.g.neighbors(v));
            // only later vertices, to enumerate each set once in sorted order
            for w in next.words_mut().iter_mut().take(v / 64) {
                *w = 0;
            }
            let lo = v % 64;
            next.words_mut()[v / 64] &= if lo == 63 { 0 } else { !0u64 << (lo + 1) };
            stack.push(v);
            self.collect_sets(&next, stack, out)?;
            stack.pop();
        }
        Ok(())
    }

    /// Breadth-first search from `source` until `target` is discovered.
    /// Returns the distance map (distances from `source`), or `None` if
    /// `target` is unreachable.
    fn search(&self, source: IsKey, target: IsKey) -> Result<Option<HashMap<IsKey, u32>>> {
        let mut dist = HashMap::new();
        dist.insert(source, 0u32);
        if source == target {
            return Ok(Some(dist));
        }
        let mut queue = VecDeque::from([source]);
        let mut scratch = Scratch::new(self.g.n());
        let mut verts = Vec::with_capacity(self.k);
        let mut nbrs = Vec::new();
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            u.decode_into(self.k, &mut verts);
            self.neighbor_keys(&verts, &mut scratch, &mut nbrs);
            for &w in &nbrs {
                if dist.contains_key(&w) {
                    continue;
                }
                dist.insert(w, du + 1);
                if w == target {
                    return Ok(Some(dist));
                }
                if dist.len() > self.cap {
                    return Err(Error::Capped {
                        cap: self.cap,
                        visited: dist.len(),
                    });
                }
                queue.push_back(w);
            }
        }
        Ok(None)
    }

    /// Exact length of a shortest reconfiguration sequence, `None` if the
    /// two sets lie in different components.
    pub fn distance(&self, from: &IndependentSet, to: &IndependentSet) -> Result<Option<usize>> {
        self.check(from)?;
        self.check(to)?;
        let (a, b) = (self.key_of(from), self.key_of(to));
        Ok(self.search(a, b)?.map(|d| d[&b] as usize))
    }

    /// A shortest sequence from `from` to `to`; among all shortest ones, the
    /// lexicographically smallest (each step takes the smallest successor key).
    pub fn shortest_sequence(&self, from: &IndependentSet, to: &IndependentSet) -> Result<Option<ReconfigSequence>> {
        self.check(from)?;
        self.check(to)?;
        let (a, b) = (self.key_of(from), self.key_of(to));
        // distances to the target, searched backwards (the relation is symmetric)
        let Some(dist) = self.search(b, a)? else {
            return Ok(None);
        };
        let mut scratch = Scratch::new(self.g.n());
        let mut verts = Vec::with_capacity(self.k);
        let mut nbrs = Vec::new();
        let mut cur = a;
        let mut seq = vec![from.clone()];
        while cur != b {
            let d = dist[&cur];
            cur.decode_into(self.k, &mut verts);
            self.neighbor_keys(&verts, &mut scratch, &mut nbrs);
            cur = *nbrs
                .iter()
                .find(|w| dist.get(w) == Some(&(d - 1)))
                .expect("a node at distance d has a neighbor at distance d-1");
            seq.push(self.set_of(cur));
        }
        Ok(Some(ReconfigSequence::from_sets_unchecked(seq)))
    }

    /// Explores the whole component containing `start`.
    pub fn bfs_component(&self, start: &IndependentSet) -> Result<Exploration> {
        self.check(start)?;
        Ok(ConfigComponent::explore(self, self.key_of(start)))
    }

    /// Partitions all k-independent sets into components.
    pub fn enumerate_components(&self) -> Result<Partition> {
        Partition::build(self)
    }

    /// Largest component diameter over all of R_k(G), with a witness pair.
    pub fn max_component_diameter(&self) -> Result<DiameterReport> {
        DiameterReport::compute(self)
    }
}

/// Reusable buffers for neighbor generation.
pub(crate) struct Scratch {
    prefix: Vec<Bitset>,
    suffix: Vec<Bitset>,
    cand: Bitset,
    buf: Vec<usize>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            prefix: vec![Bitset::new(n); MAX_K + 1],
            suffix: vec![Bitset::new(n); MAX_K + 1],
            cand: Bitset::new(n),
            buf: Vec::with_capacity(MAX_K),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is(g: &Graph, v: &[usize]) -> IndependentSet {
        IndependentSet::new(g, v.to_vec()).unwrap()
    }

    #[test]
    fn key_round_trip_preserves_order() {
        let a = IsKey::encode(&[0, 5, 9]);
        let b = IsKey::encode(&[1, 2, 3]);
        assert!(a < b);
        assert_eq!(a.decode(3), vec![0, 5, 9]);
        assert_eq!(IsKey::encode(&[]).decode(0), Vec::<usize>::new());
    }

    #[test]
    fn empty_graph_neighbors() {
        let g = Graph::empty(4);
        let e = Engine::new(&g, 3, ReconfigRule::TokenJumping).unwrap();
        let nb = e.neighbors(&is(&g, &[0, 1, 2])).unwrap();
        let got: Vec<Vec<usize>> = nb.into_iter().map(|s| s.into_vec()).collect();
        assert_eq!(got, vec![vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn complete_graph_single_token() {
        let g = Graph::complete(4);
        for rule in [ReconfigRule::TokenJumping, ReconfigRule::TokenSliding] {
            let e = Engine::new(&g, 1, rule).unwrap();
            let got: Vec<Vec<usize>> = e.neighbors(&is(&g, &[0])).unwrap().into_iter().map(|s| s.into_vec()).collect();
            assert_eq!(got, vec![vec![1], vec![2], vec![3]]);
        }
    }

    #[test]
    fn sliding_requires_an_edge() {
        // empty graph: every jump is legal, no slide is
        let g = Graph::empty(4);
        let e = Engine::new(&g, 2, ReconfigRule::TokenSliding).unwrap();
        assert!(e.neighbors(&is(&g, &[0, 1])).unwrap().is_empty());
    }

    #[test]
    fn rejects_dependent_sets() {
        let g = Graph::complete(3);
        let e = Engine::new(&g, 2, ReconfigRule::TokenJumping).unwrap();
        let bad = IndependentSet::from_sorted_unchecked(vec![0, 1]);
        assert!(matches!(e.neighbors(&bad), Err(Error::InvalidInput(_))));
        assert!(Engine::new(&g, 9, ReconfigRule::TokenJumping).is_err());
    }

    #[test]
    fn zero_tokens() {
        let g = Graph::complete(3);
        let e = Engine::new(&g, 0, ReconfigRule::TokenJumping).unwrap();
        assert_eq!(e.independent_sets().unwrap().len(), 1);
        let empty = IndependentSet::from_sorted_unchecked(vec![]);
        assert_eq!(e.distance(&empty, &empty).unwrap(), Some(0));
    }

    #[test]
    fn distances_on_complement_of_path() {
        let g = Graph::path(6).complement();
        let e = Engine::new(&g, 2, ReconfigRule::TokenJumping).unwrap();
        assert_eq!(e.distance(&is(&g, &[0, 1]), &is(&g, &[4, 5])).unwrap(), Some(4));
        assert_eq!(e.distance(&is(&g, &[2, 3]), &is(&g, &[2, 3])).unwrap(), Some(0));
    }

    #[test]
    fn shortest_sequence_on_complement_of_p5() {
        let g = Graph::path(5).complement();
        let e = Engine::new(&g, 2, ReconfigRule::TokenJumping).unwrap();
        let seq = e.shortest_sequence(&is(&g, &[0, 1]), &is(&g, &[3, 4])).unwrap().unwrap();
        let got: Vec<Vec<usize>> = seq.sets().iter().map(|s| s.vertices().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]]);
        seq.validate(&g, ReconfigRule::TokenJumping).unwrap();
    }

    #[test]
    fn capped_search_is_reported() {
        let g = Graph::empty(12);
        let e = Engine::new(&g, 3, ReconfigRule::TokenJumping).unwrap().with_cap(10);
        assert!(matches!(e.independent_sets(), Err(Error::Capped { .. })));
        let r = e.distance(&is(&g, &[0, 1, 2]), &is(&g, &[9, 10, 11]));
        assert!(matches!(r, Err(Error::Capped { .. })));
    }
}
