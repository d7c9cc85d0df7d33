//! Searching small graphs for the largest configuration-graph diameter.

use crate::engine::{Engine, ReconfigRule};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{decode_graph6, encode_graph6, to_edge_list_string};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::PathBuf;

/// Largest n for exhaustive search.
pub const MAX_EXHAUSTIVE_N: usize = 7;
pub const CACHE_ENV: &str = "RECONFIG_CACHE_DIR";
const DENSITIES: [f64; 4] = [0.3, 0.5, 0.7, 0.9];
const BATCH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub rule: ReconfigRule,
    pub best: Option<usize>,
    /// Edge-list text of a graph realizing `best`.
    pub witness: Option<String>,
    /// True iff every graph on n vertices was examined up to isomorphism.
    pub exhaustive: bool,
    pub graphs_examined: usize,
    /// graph6 of every examined graph realizing `best`, in canonical form.
    pub optimal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Graphs whose exploration hit the node cap and were skipped.
    pub capped: usize,
}

/// Color refinement starting from degrees; returns final colors.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = g.neighbors(v).iter().map(|u| color[u]).collect();
                nc.sort_unstable();
                (color[v], nc)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let rank: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| rank.binary_search(&s).unwrap()).collect();
        let before = color.iter().collect::<BTreeSet<_>>().len();
        if rank.len() == before {
            return next;
        }
        color = next;
    }
}

fn code(g: &Graph, order: &[usize]) -> u64 {
    let mut c = 0u64;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            c = c << 1 | g.has_edge(order[i], order[j]) as u64;
        }
    }
    c
}

/// Lexicographically next permutation in place; false when wrapped.
fn next_perm(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Canonical code: the smallest adjacency code over orderings that list the
/// refined color classes in order. Equal codes iff isomorphic. `n <= 11`.
pub fn canonical_code(g: &Graph) -> u64 {
    assert!(g.n() <= 11, "canonical_code supports at most 11 vertices");
    let color = refine(g);
    let ncolors = color.iter().max().map_or(0, |&c| c + 1);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); ncolors];
    for (v, &c) in color.iter().enumerate() {
        cells[c].push(v);
    }
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(g.n());
    fn rec(g: &Graph, cells: &mut [Vec<usize>], i: usize, order: &mut Vec<usize>, best: &mut u64) {
        if i == cells.len() {
            *best = (*best).min(code(g, order));
            return;
        }
        cells[i].sort_unstable();
        loop {
            let len = order.len();
            order.extend_from_slice(&cells[i]);
            rec(g, cells, i + 1, order, best);
            order.truncate(len);
            if !next_perm(&mut cells[i]) {
                break;
            }
        }
    }
    rec(g, &mut cells, 0, &mut order, &mut best);
    best
}

/// The graph whose adjacency code is `c`.
pub fn graph_from_code(n: usize, c: u64) -> Graph {
    let mut g = Graph::empty(n);
    let total = n * n.saturating_sub(1) / 2;
    let mut bit = total;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if c >> bit & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn canonical_form(g: &Graph) -> Graph {
    graph_from_code(g.n(), canonical_code(g))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_code(a) == canonical_code(b)
}

fn cache_path(n: usize) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(|d| PathBuf::from(d).join(format!("graphs_n{n}.g6")))
}

fn load_cache(n: usize) -> Option<Vec<Graph>> {
    let text = std::fs::read_to_string(cache_path(n)?).ok()?;
    let graphs: Result<Vec<Graph>> = text.lines().filter(|l| !l.is_empty()).map(decode_graph6).collect();
    match graphs {
        Ok(gs) if gs.iter().all(|g| g.n() == n) => Some(gs),
        _ => {
            log::warn!("ignoring unreadable graph cache for n = {n}");
            None
        }
    }
}

fn store_cache(n: usize, graphs: &[Graph]) {
    let Some(path) = cache_path(n) else { return };
    let body: String = graphs.iter().map(|g| encode_graph6(g) + "\n").collect();
    let res = path.parent().map_or(Ok(()), std::fs::create_dir_all).and_then(|_| std::fs::write(&path, body));
    if let Err(e) = res {
        log::warn!("could not write graph cache {}: {e}", path.display());
    }
}

/// One representative of every graph on `n` vertices up to isomorphism, in
/// canonical form, sorted by canonical code.
pub fn nonisomorphic_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::precondition(format!(
            "exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE_N}, got {n}; use random search"
        )));
    }
    if let Some(gs) = load_cache(n) {
        return Ok(gs);
    }
    let mut codes = BTreeSet::from([0u64]);
    for m in 1..=n {
        let prev: Vec<u64> = codes.into_iter().collect();
        codes = prev
            .par_iter()
            .flat_map_iter(|&c| {
                let base = graph_from_code(m - 1, c);
                (0u64..1 << (m - 1)).map(move |mask| {
                    let mut g = Graph::empty(m);
                    for (u, v) in base.edges() {
                        g.add_edge(u, v);
                    }
                    for u in 0..m - 1 {
                        if mask >> u & 1 == 1 {
                            g.add_edge(u, m - 1);
                        }
                    }
                    canonical_code(&g)
                })
            })
            .collect::<BTreeSet<u64>>();
    }
    let graphs: Vec<Graph> = codes.into_iter().map(|c| graph_from_code(n, c)).collect();
    store_cache(n, &graphs);
    Ok(graphs)
}

fn diameter_of(g: &Graph, k: usize, rule: ReconfigRule, cap: usize) -> Result<(Option<usize>, bool)> {
    let rep = Engine::new(g, k, rule)?.with_cap(cap).max_component_diameter()?;
    Ok((rep.diameter, rep.capped))
}

#[derive(Default)]
struct Tally {
    best: Option<usize>,
    optimal: BTreeSet<u64>,
    witness: Option<Graph>,
    examined: usize,
    capped: usize,
}

impl Tally {
    fn offer(&mut self, g: &Graph, d: Option<usize>, capped: bool) {
        self.examined += 1;
        if capped {
            self.capped += 1;
            return;
        }
        let Some(d) = d else { return };
        let code = canonical_code(g);
        if self.best.is_none_or(|b| d > b) {
            self.best = Some(d);
            self.optimal.clear();
            self.witness = None;
        }
        if Some(d) == self.best {
            self.optimal.insert(code);
            if self.witness.is_none() || code == *self.optimal.first().unwrap() {
                self.witness = Some(graph_from_code(g.n(), code));
            }
        }
    }

    fn finish(self, n: usize, k: usize, rule: ReconfigRule, exhaustive: bool, seed: Option<u64>, cap: usize) -> Result<SearchResult> {
        if let (Some(w), Some(b)) = (&self.witness, self.best) {
            let (d, _) = diameter_of(w, k, rule, cap)?;
            if d != Some(b) {
                return Err(Error::invalid(format!("witness re-check gave {d:?}, expected {b}")));
            }
        }
        Ok(SearchResult {
            n,
            k,
            rule,
            best: self.best,
            witness: self.witness.as_ref().map(to_edge_list_string),
            exhaustive: exhaustive && self.capped == 0,
            graphs_examined: self.examined,
            optimal: self.optimal.iter().map(|&c| encode_graph6(&graph_from_code(n, c))).collect(),
            seed,
            capped: self.capped,
        })
    }
}

/// Largest R_k component diameter over all graphs on `n <= 7` vertices.
pub fn search_exhaustive(n: usize, k: usize, rule: ReconfigRule, cap: usize) -> Result<SearchResult> {
    let graphs = nonisomorphic_graphs(n)?;
    let results: Vec<(Option<usize>, bool)> = graphs
        .par_iter()
        .map(|g| diameter_of(g, k, rule, cap))
        .collect::<Result<_>>()?;
    let mut tally = Tally::default();
    for (g, (d, capped)) in graphs.iter().zip(results) {
        tally.offer(g, d, capped);
    }
    tally.finish(n, k, rule, true, None, cap)
}

fn random_graph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn perturb(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut h = g.clone();
    let n = h.n();
    if n < 2 {
        return h;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let u = rng.gen_range(0..n);
        let v = (u + rng.gen_range(1..n)) % n;
        if h.has_edge(u, v) {
            h.remove_edge(u, v);
        } else {
            h.add_edge(u, v);
        }
    }
    h
}

/// `trials` graphs: Erdős–Rényi at densities 0.3, 0.5, 0.7, 0.9 in turn,
/// with every fourth candidate a small perturbation of the best so far
/// (seeded with the complement of a path). Deterministic for a given seed,
/// whatever the thread count.
pub fn search_random(n: usize, k: usize, rule: ReconfigRule, trials: usize, seed: u64, cap: usize) -> Result<SearchResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    let mut pool = if n >= 3 { Graph::path(n).complement() } else { Graph::empty(n) };
    let (d, capped) = diameter_of(&pool, k, rule, cap)?;
    tally.offer(&pool, d, capped);
    let mut done = 0;
    let mut round = 0;
    while done < trials {
        let size = BATCH.min(trials - done);
        let batch: Vec<Graph> = (0..size)
            .map(|i| {
                let t = done + i;
                if t % 4 == 3 {
                    perturb(&pool, &mut rng)
                } else {
                    random_graph(n, DENSITIES[(t + round) % DENSITIES.len()], &mut rng)
                }
            })
            .collect();
        let results: Vec<(Option<usize>, bool)> =
            batch.par_iter().map(|g| diameter_of(g, k, rule, cap)).collect::<Result<_>>()?;
        for (g, (d, capped)) in batch.iter().zip(results) {
            tally.offer(g, d, capped);
        }
        if let Some(w) = &tally.witness {
            pool = w.clone();
        }
        done += size;
        round += 1;
    }
    tally.finish(n, k, rule, false, Some(seed), cap)
}
