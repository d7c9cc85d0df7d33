use super::{BuildReport, Claim};
use crate::engine::{Engine, ReconfigRule, ReconfigSequence};
use crate::error::{Error, Result};
use crate::graph::{Graph, IndependentSet};
use serde::{Deserialize, Serialize};

/// Two independent sets joined by a shortest path in R_k(G).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentLink {
    pub start: IndependentSet,
    pub end: IndependentSet,
}

/// Fresh vertices inserted between the end `B_i` of one link and the start
/// `A_{i+1}` of the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JunctionSpec {
    pub index: usize,
    /// `b_1..b_k`; `b_1` is the last vertex to enter `B_i`.
    pub b: Vec<usize>,
    /// `x_1..x_{3k-2}`.
    pub x: Vec<usize>,
    /// `a_1..a_k`; `a_k` is the first vertex to leave `A_{i+1}`.
    pub a: Vec<usize>,
}

impl JunctionSpec {
    pub fn k(&self) -> usize {
        self.b.len()
    }

    /// `b_1..b_k, x_1..x_{3k-2}, a_1..a_k`.
    pub fn sequence(&self) -> Vec<usize> {
        self.b.iter().chain(&self.x).chain(&self.a).copied().collect()
    }

    /// The `k` consecutive vertices starting at position `t`, sorted.
    pub fn window(&self, t: usize) -> IndependentSet {
        let mut w = self.sequence()[t..t + self.k()].to_vec();
        w.sort_unstable();
        IndependentSet::from_sorted_unchecked(w)
    }

    /// All `4k - 1` windows, from `B_i` to `A_{i+1}`.
    pub fn windows(&self) -> Vec<IndependentSet> {
        (0..=4 * self.k() - 2).map(|t| self.window(t)).collect()
    }
}

fn first_out_last_in(seq: &ReconfigSequence, start: &IndependentSet) -> (usize, usize) {
    if seq.steps() == 0 {
        let v = start.vertices();
        return (*v.last().unwrap(), v[0]);
    }
    (seq.step(0).0, seq.step(seq.steps() - 1).1)
}

/// Chains the links into one component of R_k of a larger graph.
///
/// Each junction adds `3k - 2` vertices. A junction vertex is non-adjacent
/// exactly to the vertices within `k - 1` positions of it in
/// `b_1..b_k, x_1..x_{3k-2}, a_1..a_k` and adjacent to everything else.
pub fn glue(g: &Graph, k: usize, links: &[ComponentLink], cap: usize) -> Result<(Graph, BuildReport)> {
    if k < 3 {
        return Err(Error::precondition(format!("gluing needs k >= 3, got {k}")));
    }
    if links.is_empty() {
        return Err(Error::precondition("no components to glue"));
    }
    let engine = Engine::new(g, k, ReconfigRule::TokenJumping)?.with_cap(cap);
    let mut dists = Vec::with_capacity(links.len());
    let mut ends = Vec::with_capacity(links.len());
    for (i, l) in links.iter().enumerate() {
        if l.start.k() != k || l.end.k() != k {
            return Err(Error::precondition(format!("link {i} endpoints must have size {k}")));
        }
        let seq = engine.shortest_sequence(&l.start, &l.end)?.ok_or_else(|| {
            Error::precondition(format!("link {i}: {} and {} are not connected in R_{k}", l.start, l.end))
        })?;
        dists.push(seq.steps());
        ends.push(first_out_last_in(&seq, &l.start));
    }

    let r = links.len();
    let xs = 3 * k - 2;
    let n = g.n() + xs * (r - 1);
    let mut h = Graph::empty(n);
    for (u, v) in g.edges() {
        h.add_edge(u, v);
    }
    let mut junctions = Vec::with_capacity(r - 1);
    for i in 0..r - 1 {
        let (bset, aset) = (&links[i].end, &links[i + 1].start);
        let shared = bset.intersection(aset);
        if !shared.is_empty() {
            return Err(Error::precondition(format!(
                "junction {i}: vertices {shared:?} appear in both {bset} and {aset}"
            )));
        }
        let b1 = ends[i].1;
        let ak = ends[i + 1].0;
        let mut b = vec![b1];
        b.extend(bset.vertices().iter().copied().filter(|&v| v != b1));
        let mut a: Vec<usize> = aset.vertices().iter().copied().filter(|&v| v != ak).collect();
        a.push(ak);
        let x = (0..xs).map(|j| g.n() + i * xs + j).collect();
        junctions.push(JunctionSpec { index: i, b, x, a });
    }

    // every junction vertex starts complete to the rest, then loses its window
    for u in g.n()..n {
        for v in 0..u {
            h.add_edge(u, v);
        }
    }
    for j in &junctions {
        let seq = j.sequence();
        for (pu, &u) in seq.iter().enumerate().skip(k).take(xs) {
            for (pv, &v) in seq.iter().enumerate() {
                if pv != pu && pu.abs_diff(pv) < k {
                    h.remove_edge(u, v);
                }
            }
        }
    }

    let total: usize = dists.iter().sum();
    let bound = (4 * k - 4) * (r - 1) + total;
    let mut report = BuildReport::new(
        "glue",
        serde_json::json!({ "k": k, "components": r }),
        &h,
        k,
        Claim::lower("(4k - 4)(r - 1) + sum d_i", bound),
        links[0].start.clone(),
        links[r - 1].end.clone(),
    );
    for (i, d) in dists.iter().enumerate() {
        report.measured.insert(format!("d[{i}]"), *d);
    }
    report.notes.push(format!(
        "glued route has length (4k - 2)(r - 1) + sum d_i = {}",
        (4 * k - 2) * (r - 1) + total
    ));
    for j in &junctions {
        report.roles.insert(format!("x[{}]", j.index), j.x.clone());
        report.roles.insert(format!("b[{}]", j.index), j.b.clone());
        report.roles.insert(format!("a[{}]", j.index), j.a.clone());
    }
    report.junctions = junctions;
    report.check_endpoints(&h)?;
    Ok((h, report))
}

/// Outcome of checking how independent sets meet the junction vertices.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ClaimInterReport {
    pub sets_checked: usize,
    /// Sets that contain at least one junction vertex.
    pub junction_sets: usize,
    pub violations: Vec<String>,
}

impl ClaimInterReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every k-set touching a junction must be one of its windows, the windows
/// must form a walk from `B_i` to `A_{i+1}`, and a window containing one of
/// `x_2..x_{3k-3}` must have exactly two neighbors in R_k.
pub fn check_claim_inter(h: &Graph, k: usize, junctions: &[JunctionSpec], cap: usize) -> Result<ClaimInterReport> {
    let engine = Engine::new(h, k, ReconfigRule::TokenJumping)?.with_cap(cap);
    let mut report = ClaimInterReport::default();
    let mut owner = vec![None; h.n()];
    for (ji, j) in junctions.iter().enumerate() {
        if j.k() != k || j.a.len() != k || j.x.len() != 3 * k - 2 {
            return Err(Error::invalid(format!("junction {} does not match k = {k}", j.index)));
        }
        for (p, &x) in j.x.iter().enumerate() {
            owner[x] = Some((ji, p));
        }
        let walk = j.windows();
        if let Err(e) = ReconfigSequence::new(h, ReconfigRule::TokenJumping, walk) {
            report.violations.push(format!("junction {}: windows are not a walk: {e}", j.index));
        }
    }
    for key in engine.independent_sets()? {
        report.sets_checked += 1;
        let s = engine.set_of(key);
        let hits: Vec<(usize, usize)> = s.vertices().iter().filter_map(|&v| owner[v]).collect();
        let Some(&(ji, _)) = hits.first() else {
            continue;
        };
        report.junction_sets += 1;
        let j = &junctions[ji];
        if hits.iter().any(|&(o, _)| o != ji) {
            report.violations.push(format!("{s} meets two junctions"));
            continue;
        }
        if !j.windows().contains(&s) {
            report.violations.push(format!("{s} meets junction {} but is not a window", j.index));
            continue;
        }
        let inner = hits.iter().any(|&(_, p)| p >= 1 && p <= 3 * k - 4);
        if inner {
            let deg = engine.neighbors(&s)?.len();
            if deg != 2 {
                report.violations.push(format!("{s} has {deg} neighbors, expected 2"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::circulant_ap_graph;
    use crate::engine::DEFAULT_NODE_CAP;

    #[test]
    fn window_rule_on_two_p17_paths() {
        let (g, r) = circulant_ap_graph(17, &[1]).unwrap();
        // two copies, complete to each other
        let mut gg = g.disjoint_union(&g);
        for u in 0..16 {
            for v in 16..32 {
                gg.add_edge(u, v);
            }
        }
        let shift = |s: &IndependentSet| IndependentSet::from_sorted_unchecked(s.vertices().iter().map(|v| v + 16).collect());
        let links = vec![
            ComponentLink { start: r.start.clone(), end: r.target.clone() },
            ComponentLink { start: shift(&r.start), end: shift(&r.target) },
        ];
        let (h, rep) = glue(&gg, 3, &links, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(h.n(), 32 + 7);
        assert_eq!(rep.claim.value, 8 + 13 + 13);
        let j = &rep.junctions[0];
        // x_1 misses b_2, b_3 and x_2, x_3 only
        let x1 = j.x[0];
        let missing: Vec<usize> = (0..h.n()).filter(|&v| v != x1 && !h.has_edge(x1, v)).collect();
        let mut want = vec![j.b[1], j.b[2], j.x[1], j.x[2]];
        want.sort_unstable();
        assert_eq!(missing, want);
        let check = check_claim_inter(&h, 3, &rep.junctions, DEFAULT_NODE_CAP).unwrap();
        assert!(check.ok(), "{:?}", check.violations);
        assert_eq!(check.junction_sets, 3 * 3 - 2 + 3 - 1);
        assert!(rep.measure_distance(&h, DEFAULT_NODE_CAP).unwrap().unwrap() >= rep.claim.value);
    }

    #[test]
    fn rejects_small_k_and_disconnected() {
        let g = Graph::empty(4);
        let s = IndependentSet::new(&g, vec![0, 1]).unwrap();
        let l = ComponentLink { start: s.clone(), end: s };
        assert!(glue(&g, 2, &[l], 100).is_err());
    }
}
