use super::{Engine, IsKey, ReconfigRule, Scratch};
use crate::error::{Error, Result};
use crate::graph::IndependentSet;
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

/// Outcome of exploring one component: either all of it, or the number of
/// nodes visited before the cap was hit.
#[derive(Debug)]
pub enum Exploration {
    Complete(ConfigComponent),
    Capped { cap: usize, visited: usize },
}

impl Exploration {
    pub fn complete(self) -> Result<ConfigComponent> {
        match self {
            Exploration::Complete(c) => Ok(c),
            Exploration::Capped { cap, visited } => Err(Error::Capped { cap, visited }),
        }
    }
}

/// One connected component of R_k(G), materialized as a CSR adjacency over
/// its nodes sorted by key.
#[derive(Debug)]
pub struct ConfigComponent {
    k: usize,
    rule: ReconfigRule,
    nodes: Vec<IsKey>,
    index: HashMap<IsKey, u32>,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    start: u32,
    dist_from_start: Vec<u32>,
    diameter: OnceLock<(usize, u32, u32)>,
}

impl ConfigComponent {
    pub(super) fn explore(engine: &Engine<'_>, start: IsKey) -> Exploration {
        let k = engine.k();
        let mut ids: HashMap<IsKey, u32> = HashMap::new();
        let mut keys = vec![start];
        let mut dist = vec![0u32];
        let mut offsets = vec![0u32];
        let mut targets: Vec<u32> = Vec::new();
        ids.insert(start, 0);
        let mut scratch = Scratch::new(engine.graph().n());
        let mut verts = Vec::with_capacity(k);
        let mut nbrs = Vec::new();
        // ids are handed out in discovery order, so that order is the queue
        let mut head = 0usize;
        while head < keys.len() {
            keys[head].decode_into(k, &mut verts);
            engine.neighbor_keys(&verts, &mut scratch, &mut nbrs);
            for &w in &nbrs {
                let id = match ids.get(&w) {
                    Some(&id) => id,
                    None => {
                        let id = keys.len() as u32;
                        if keys.len() >= engine.cap() {
                            return Exploration::Capped {
                                cap: engine.cap(),
                                visited: keys.len(),
                            };
                        }
                        ids.insert(w, id);
                        keys.push(w);
                        dist.push(dist[head] + 1);
                        id
                    }
                };
                targets.push(id);
            }
            offsets.push(targets.len() as u32);
            head += 1;
        }

        // renumber into key order; neighbor lists were generated in key order
        // and stay sorted under the renumbering
        let mut order: Vec<u32> = (0..keys.len() as u32).collect();
        order.sort_unstable_by_key(|&i| keys[i as usize]);
        let mut rank = vec![0u32; keys.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old as usize] = new as u32;
        }
        let mut new_offsets = Vec::with_capacity(offsets.len());
        let mut new_targets = Vec::with_capacity(targets.len());
        new_offsets.push(0u32);
        for &old in &order {
            let (lo, hi) = (offsets[old as usize] as usize, offsets[old as usize + 1] as usize);
            new_targets.extend(targets[lo..hi].iter().map(|&t| rank[t as usize]));
            new_offsets.push(new_targets.len() as u32);
        }
        let nodes: Vec<IsKey> = order.iter().map(|&i| keys[i as usize]).collect();
        let dist_from_start = order.iter().map(|&i| dist[i as usize]).collect();
        let index = nodes.iter().enumerate().map(|(i, &key)| (key, i as u32)).collect();
        Exploration::Complete(ConfigComponent {
            k,
            rule: engine.rule(),
            start: rank[0],
            nodes,
            index,
            offsets: new_offsets,
            targets: new_targets,
            dist_from_start,
            diameter: OnceLock::new(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rule(&self) -> ReconfigRule {
        self.rule
    }

    /// Number of nodes (independent sets).
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn keys(&self) -> &[IsKey] {
        &self.nodes
    }

    pub fn contains(&self, s: &IndependentSet) -> bool {
        self.index.contains_key(&IsKey::encode(s.vertices()))
    }

    pub fn set(&self, i: usize) -> IndependentSet {
        IndependentSet::from_sorted_unchecked(self.nodes[i].decode(self.k))
    }

    pub fn sets(&self) -> impl Iterator<Item = IndependentSet> + '_ {
        (0..self.size()).map(|i| self.set(i))
    }

    pub fn index_of(&self, s: &IndependentSet) -> Option<usize> {
        self.index.get(&IsKey::encode(s.vertices())).map(|&i| i as usize)
    }

    /// Node indices adjacent to node `i`, ascending.
    pub fn neighbor_indices(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    pub fn degree(&self, i: usize) -> usize {
        (self.offsets[i + 1] - self.offsets[i]) as usize
    }

    pub fn start(&self) -> IndependentSet {
        self.set(self.start as usize)
    }

    /// BFS distance from the start node to node `i`.
    pub fn distance_from_start(&self, i: usize) -> usize {
        self.dist_from_start[i] as usize
    }

    /// Distances from node `source` to every node.
    pub fn bfs_from(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.size()];
        let mut queue = Vec::with_capacity(self.size());
        self.bfs_into(source, &mut dist, &mut queue);
        dist
    }

    fn bfs_into(&self, source: usize, dist: &mut [u32], queue: &mut Vec<u32>) {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        queue.clear();
        dist[source] = 0;
        queue.push(source as u32);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            let du = dist[u];
            for &w in self.neighbor_indices(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = du + 1;
                    queue.push(w);
                }
            }
        }
    }

    /// Exact diameter with the lexicographically first witness pair.
    pub fn diameter(&self) -> (usize, IndependentSet, IndependentSet) {
        let &(d, a, b) = self.diameter.get_or_init(|| self.compute_diameter());
        (d, self.set(a as usize), self.set(b as usize))
    }

    fn compute_diameter(&self) -> (usize, u32, u32) {
        let n = self.size();
        let best = (0..n)
            .into_par_iter()
            .map_init(
                || (vec![u32::MAX; n], Vec::with_capacity(n)),
                |(dist, queue), s| {
                    self.bfs_into(s, dist, queue);
                    let ecc = *dist.iter().max().unwrap_or(&0);
                    let far = dist.iter().position(|&d| d == ecc).unwrap_or(s);
                    (ecc, s as u32, far as u32)
                },
            )
            .reduce(
                || (0, u32::MAX, u32::MAX),
                |a, b| {
                    // larger eccentricity wins, then smaller source index
                    if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
                        a
                    } else {
                        b
                    }
                },
            );
        if best.1 == u32::MAX {
            (0, 0, 0)
        } else {
            (best.0 as usize, best.1, best.2)
        }
    }

    /// True iff the component is a path (a single node counts).
    pub fn is_path(&self) -> bool {
        let n = self.size();
        if n == 1 {
            return true;
        }
        let ends = (0..n).filter(|&i| self.degree(i) == 1).count();
        let inner = (0..n).filter(|&i| self.degree(i) == 2).count();
        ends == 2 && inner == n - 2 && self.edge_count() == n - 1
    }

    /// The two degree-1 nodes of a path component, ordered by key.
    pub fn path_ends(&self) -> Option<(IndependentSet, IndependentSet)> {
        if !self.is_path() || self.size() < 2 {
            return None;
        }
        let mut ends = (0..self.size()).filter(|&i| self.degree(i) == 1);
        let a = ends.next()?;
        let b = ends.next()?;
        Some((self.set(a), self.set(b)))
    }
}

/// All components of R_k(G), ordered by their smallest key.
#[derive(Debug)]
pub struct Partition {
    pub components: Vec<ConfigComponent>,
    /// True if exploration stopped at the node cap; `components` is then partial.
    pub capped: bool,
    pub visited: usize,
}

impl Partition {
    pub(super) fn build(engine: &Engine<'_>) -> Result<Partition> {
        let all = match engine.independent_sets() {
            Ok(all) => all,
            Err(Error::Capped { visited, .. }) => {
                return Ok(Partition {
                    components: Vec::new(),
                    capped: true,
                    visited,
                })
            }
            Err(e) => return Err(e),
        };
        let mut seen: HashSet<IsKey> = HashSet::with_capacity(all.len());
        let mut components = Vec::new();
        let mut visited = 0usize;
        for key in all {
            if seen.contains(&key) {
                continue;
            }
            let budget = engine.cap().saturating_sub(visited);
            let sub = engine.clone().with_cap(budget);
            match ConfigComponent::explore(&sub, key) {
                Exploration::Complete(c) => {
                    visited += c.size();
                    seen.extend(c.keys().iter().copied());
                    components.push(c);
                }
                Exploration::Capped { visited: v, .. } => {
                    return Ok(Partition {
                        components,
                        capped: true,
                        visited: visited + v,
                    });
                }
            }
        }
        Ok(Partition {
            components,
            capped: false,
            visited,
        })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Component containing `s`, if explored.
    pub fn component_of(&self, s: &IndependentSet) -> Option<&ConfigComponent> {
        self.components.iter().find(|c| c.contains(s))
    }
}
