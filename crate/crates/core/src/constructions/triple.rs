use super::toll::check_pair;
use super::{circulant_ap_graph, circulant_component_ends, glue, BuildReport, Claim, ComponentLink};
use crate::apfree::{best_available, APSet};
use crate::engine::{ConfigComponent, Engine, ReconfigRule};
use crate::error::{Error, Result};
use crate::graph::{Graph, IndependentSet};
use serde::{Deserialize, Serialize};

const EXACT_LIMIT: u64 = 40;

/// Label-residue properties of R_3 of a labeled graph, checked exhaustively.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct HProperties {
    pub triples: usize,
    pub components: usize,
    /// Independent triples whose labels are not three consecutive residues mod 8.
    pub not_consecutive: Vec<Vec<i64>>,
    /// Adjacent triples whose symmetric difference is not `±3 mod 8` apart.
    pub bad_moves: Vec<(Vec<i64>, Vec<i64>)>,
    /// `(component, label)`: a label `0 mod 8` missing from a component.
    pub uncovered_zero: Vec<(usize, i64)>,
    /// `(component, label)`: any label missing from a component.
    pub uncovered: Vec<(usize, i64)>,
}

impl HProperties {
    /// Consecutive residues, `±3` moves, and every `0 mod 8` label in every
    /// component. Full coverage of all labels is reported separately.
    pub fn ok(&self) -> bool {
        self.not_consecutive.is_empty() && self.bad_moves.is_empty() && self.uncovered_zero.is_empty()
    }
}

fn residue(label: i64) -> i64 {
    label.rem_euclid(8)
}

fn consecutive(labels: &[i64]) -> bool {
    let mut r: Vec<i64> = labels.iter().map(|&l| residue(l)).collect();
    r.sort_unstable();
    (0..8).any(|s| {
        let mut w = [s, (s + 1) % 8, (s + 2) % 8];
        w.sort_unstable();
        w[..] == r[..]
    })
}

fn labels_of(h: &Graph, s: &IndependentSet) -> Vec<i64> {
    s.vertices().iter().map(|&v| h.label(v).unwrap()).collect()
}

pub fn check_h_properties(h: &Graph, cap: usize) -> Result<HProperties> {
    if h.labels().is_none() {
        return Err(Error::invalid("graph has no labels"));
    }
    let engine = Engine::new(h, 3, ReconfigRule::TokenJumping)?.with_cap(cap);
    let parts = engine.enumerate_components()?;
    if parts.capped {
        return Err(Error::Capped { cap, visited: parts.visited });
    }
    let mut props = HProperties { components: parts.len(), ..Default::default() };
    let all: Vec<i64> = h.labels().unwrap().to_vec();
    for (ci, c) in parts.components.iter().enumerate() {
        let mut seen = vec![false; h.n()];
        for i in 0..c.size() {
            props.triples += 1;
            let s = c.set(i);
            let ls = labels_of(h, &s);
            if !consecutive(&ls) {
                props.not_consecutive.push(ls.clone());
            }
            for &v in s.vertices() {
                seen[v] = true;
            }
            for &j in c.neighbor_indices(i) {
                let t = c.set(j as usize);
                if t <= s {
                    continue;
                }
                let out: i64 = s.vertices().iter().find(|&&v| !t.contains(v)).map(|&v| h.label(v).unwrap()).unwrap();
                let inn: i64 = t.vertices().iter().find(|&&v| !s.contains(v)).map(|&v| h.label(v).unwrap()).unwrap();
                if !matches!(residue(out - inn), 3 | 5) {
                    props.bad_moves.push((ls.clone(), labels_of(h, &t)));
                }
            }
        }
        for (v, &l) in all.iter().enumerate() {
            if !seen[v] {
                props.uncovered.push((ci, l));
                if residue(l) == 0 {
                    props.uncovered_zero.push((ci, l));
                }
            }
        }
    }
    Ok(props)
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Nodes of a path component, walking from `from`.
fn path_order(c: &ConfigComponent, from: usize) -> Vec<usize> {
    let mut order = vec![from];
    let mut prev = usize::MAX;
    let mut cur = from;
    loop {
        let next = c.neighbor_indices(cur).iter().map(|&j| j as usize).find(|&j| j != prev);
        match next {
            Some(j) if order.len() < c.size() => {
                order.push(j);
                prev = cur;
                cur = j;
            }
            _ => return order,
        }
    }
}

/// Independent triples `X_1 .. X_r` of one component along the path with
/// residues `{1,2,3}` at both ends.
fn residue_walk(h: &Graph, c: &ConfigComponent, start: &IndependentSet) -> Result<Vec<IndependentSet>> {
    if !c.is_path() {
        return Err(Error::precondition("R_3(H) component is not a path"));
    }
    let from = c.index_of(start).expect("start lies in its own component");
    let sets: Vec<IndependentSet> = path_order(c, from).into_iter().map(|i| c.set(i)).collect();
    let is123 = |s: &IndependentSet| {
        let mut r: Vec<i64> = labels_of(h, s).into_iter().map(residue).collect();
        r.sort_unstable();
        r == [1, 2, 3]
    };
    let first = sets.iter().position(is123);
    let last = sets.iter().rposition(is123);
    match (first, last) {
        (Some(f), Some(l)) if f < l => Ok(sets[f..=l].to_vec()),
        _ => Err(Error::precondition("no two triples with residues {1,2,3} in a component")),
    }
}

/// Adds the circulant graph H for `p` and `S = 8S' + 1`, joining `V(G) - A`
/// to labels `0 mod 8` and `V(G) - B` to labels `4 mod 8`. Every pass
/// between two `0 mod 8` triples of H forces a trip from `A` to `B` and back
/// in G, so the `(k+3)`-distance is at least `2d(floor(p/8) - 1)`.
///
/// `S'` defaults to the best available 3-AP-free set in
/// `[1, (floor(p/8) - 1) / 8]`. With several elements the components are
/// glued.
pub fn triple_extend(
    g: &Graph,
    k: usize,
    a: &IndependentSet,
    b: &IndependentSet,
    p: u64,
    base: Option<&APSet>,
    cap: usize,
) -> Result<(Graph, BuildReport)> {
    let q = p / 8;
    let m = q.saturating_sub(1) / 8;
    if m == 0 {
        return Err(Error::precondition(format!("p = {p} is too small: need floor((floor(p/8) - 1)/8) >= 1")));
    }
    let s_prime = match base {
        Some(s) => {
            if s.max().is_some_and(|x| x > m) {
                return Err(Error::precondition(format!("S' exceeds [1, {m}]")));
            }
            s.clone()
        }
        None => best_available(m, EXACT_LIMIT).0,
    };
    let s: Vec<u64> = s_prime.elements().iter().map(|&x| 8 * x + 1).collect();
    let d = check_pair(g, k, a, b, cap)?;
    let (mut h, _) = circulant_ap_graph(p, &s)?;
    if s.len() == 1 {
        // vertex j*s gets label j, so each path reads 1,2,3 / 2,3,4 / ...
        let inv = modpow(s[0], p - 2, p);
        let labels = (1..p).map(|v| (v * inv % p) as i64).collect();
        h.set_labels(labels)?;
    }
    let props = check_h_properties(&h, cap)?;

    let base_n = g.n();
    let mut gp = g.disjoint_union(&h);
    let mut zero = Vec::new();
    let mut four = Vec::new();
    for hv in 0..h.n() {
        let l = h.label(hv).unwrap();
        let v = base_n + hv;
        match residue(l) {
            0 => {
                zero.push(v);
                for u in (0..base_n).filter(|&u| !a.contains(u)) {
                    gp.add_edge(u, v);
                }
            }
            4 => {
                four.push(v);
                for u in (0..base_n).filter(|&u| !b.contains(u)) {
                    gp.add_edge(u, v);
                }
            }
            _ => {}
        }
    }

    let engine = Engine::new(&h, 3, ReconfigRule::TokenJumping)?.with_cap(cap);
    let shift = |x: &IndependentSet| x.vertices().iter().map(|&v| v + base_n).collect::<Vec<_>>();
    let mut links = Vec::new();
    let mut spot_failures = Vec::new();
    for &x in &s {
        let (start, _) = circulant_component_ends(p, x);
        let c = engine.bfs_component(&start)?.complete()?;
        let walk = residue_walk(&h, &c, &start)?;
        for (i, xi) in walk.iter().enumerate() {
            let touches = labels_of(&h, xi).iter().any(|&l| matches!(residue(l), 0 | 4));
            if i % 4 == 0 && touches {
                spot_failures.push(labels_of(&h, xi));
            }
        }
        let x1 = a.union_unchecked(&shift(&walk[0]));
        let xr = a.union_unchecked(&shift(walk.last().unwrap()));
        links.push(ComponentLink { start: x1, end: xr });
    }

    let per = 2 * d * (q as usize - 1);
    let kk = k + 3;
    let params = serde_json::json!({ "k": k, "p": p, "S_prime": s_prime.elements(), "S": s });
    let (out, mut report) = if links.len() == 1 {
        let l = links.pop().unwrap();
        let r = BuildReport::new("triple", params, &gp, kk, Claim::lower("2d(floor(p/8) - 1)", per), l.start, l.end);
        (gp, r)
    } else {
        let r_count = links.len();
        let (glued, mut r) = glue(&gp, kk, &links, cap)?;
        let measured = std::mem::replace(
            &mut r.claim,
            Claim::lower("(4k' - 4)(|S| - 1) + |S| 2d(floor(p/8) - 1)", (4 * kk - 4) * (r_count - 1) + r_count * per),
        );
        r.other_claims.push(measured);
        r.construction = "triple".into();
        r.params = params;
        (glued, r)
    };
    report.measured.insert("d".into(), d);
    report.roles.insert("A".into(), a.vertices().to_vec());
    report.roles.insert("B".into(), b.vertices().to_vec());
    report.roles.insert("H".into(), (base_n..base_n + h.n()).collect());
    report.roles.insert("H0mod8".into(), zero);
    report.roles.insert("H4mod8".into(), four);
    if !props.ok() {
        report.notes.push(format!(
            "label properties fail: {} non-consecutive triples, {} bad moves, {} uncovered 0 mod 8 labels",
            props.not_consecutive.len(),
            props.bad_moves.len(),
            props.uncovered_zero.len()
        ));
    }
    if !props.uncovered.is_empty() {
        report.notes.push(format!("{} (component, label) pairs uncovered", props.uncovered.len()));
    }
    if !spot_failures.is_empty() {
        report.notes.push(format!("X_i with i = 1 mod 4 touching G: {spot_failures:?}"));
    }
    report.check_endpoints(&out)?;
    Ok((out, report))
}
