use super::{complement_path, BuildReport, Claim};
use crate::engine::{Engine, ReconfigRule, DEFAULT_NODE_CAP};
use crate::error::{Error, Result};
use crate::graph::{Graph, IndependentSet};
use crate::mis::independence_number_with_limit;

const ALPHA_LIMIT: usize = 512;

pub(super) fn check_pair(g: &Graph, k: usize, a: &IndependentSet, b: &IndependentSet, cap: usize) -> Result<usize> {
    let alpha = independence_number_with_limit(g, ALPHA_LIMIT)?;
    if alpha != k {
        return Err(Error::precondition(format!("alpha(G) = {alpha}, expected k = {k}")));
    }
    for (name, s) in [("A", a), ("B", b)] {
        if s.k() != k || !g.is_independent(s.vertices())? {
            return Err(Error::precondition(format!("{name} = {s} is not an independent {k}-set")));
        }
    }
    Engine::new(g, k, ReconfigRule::TokenJumping)?
        .with_cap(cap)
        .distance(a, b)?
        .ok_or_else(|| Error::precondition(format!("{a} and {b} are not connected in R_{k}(G)")))
}

/// Adds `6n + 2` vertices inducing the complement of a path
/// `x_1 - ... - x_{6n+2}`; `x_{6l-3}` is joined to `V(G) - B` and `x_{6l}` to
/// `V(G) - A`. Tokens on `A ∪ {x_1, x_2}` must pass `n` booths, each forcing
/// a round trip between `A` and `B`, to reach `A ∪ {x_{6n+1}, x_{6n+2}}`.
pub fn toll_booth_extend(
    g: &Graph,
    k: usize,
    a: &IndependentSet,
    b: &IndependentSet,
    booths: usize,
    cap: usize,
) -> Result<(Graph, BuildReport)> {
    if booths == 0 {
        return Err(Error::precondition("need at least one booth"));
    }
    let d = check_pair(g, k, a, b, cap)?;
    let base = g.n();
    let len = 6 * booths + 2;
    let x = |j: usize| base + j - 1;
    let mut h = Graph::empty(base + len);
    for (u, v) in g.edges() {
        h.add_edge(u, v);
    }
    for i in 1..=len {
        for j in i + 2..=len {
            h.add_edge(x(i), x(j));
        }
    }
    for l in 1..=booths {
        for v in 0..base {
            if !b.contains(v) {
                h.add_edge(x(6 * l - 3), v);
            }
            if !a.contains(v) {
                h.add_edge(x(6 * l), v);
            }
        }
    }
    let start = a.union_unchecked(&[x(1), x(2)]);
    let target = a.union_unchecked(&[x(len - 1), x(len)]);
    let mut report = BuildReport::new(
        "toll",
        serde_json::json!({ "k": k, "booths": booths, "base_vertices": base }),
        &h,
        k + 2,
        Claim::lower("2n(d + 3)", 2 * booths * (d + 3)),
        start,
        target,
    );
    report.other_claims.push(Claim::lower("2dn", 2 * d * booths));
    report.measured.insert("d".into(), d);
    report.roles.insert("A".into(), a.vertices().to_vec());
    report.roles.insert("B".into(), b.vertices().to_vec());
    report.roles.insert("X".into(), (1..=len).map(x).collect());
    report.check_endpoints(&h)?;
    Ok((h, report))
}

/// Starts from the complement of a path on `base` vertices (k = 2) and
/// applies `steps` toll-booth extensions with `booths` booths each. The
/// claim chains the per-step bound: `d' = 2n(d + 3)`.
pub fn iterate_toll(base: usize, steps: usize, booths: usize) -> Result<(Graph, BuildReport)> {
    let (mut g, first) = complement_path(base)?;
    let (mut a, mut b) = (first.start.clone(), first.target.clone());
    let mut k = 2;
    let mut chained = base - 2;
    let mut last = first;
    let mut per_step = Vec::new();
    for _ in 0..steps {
        let (h, r) = toll_booth_extend(&g, k, &a, &b, booths, DEFAULT_NODE_CAP)?;
        chained = 2 * booths * (chained + 3);
        per_step.push(r.measured["d"]);
        a = r.start.clone();
        b = r.target.clone();
        k += 2;
        g = h;
        last = r;
    }
    let mut report = BuildReport::new(
        "toll-iterated",
        serde_json::json!({ "base": base, "steps": steps, "booths": booths }),
        &g,
        k,
        Claim::lower("d_{t+1} = 2n(d_t + 3), d_0 = base - 2", chained),
        a,
        b,
    );
    if steps > 0 {
        report.other_claims.push(last.claim.clone());
        report.roles = last.roles;
    }
    for (i, d) in per_step.iter().enumerate() {
        report.measured.insert(format!("d[{i}]"), *d);
    }
    report.check_endpoints(&g)?;
    Ok((g, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_booth_on_complement_p4() {
        let (g, r0) = complement_path(4).unwrap();
        let (h, r) = toll_booth_extend(&g, 2, &r0.start, &r0.target, 1, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(h.n(), 12);
        assert_eq!(r.k, 4);
        assert_eq!(r.claim.value, 10);
        let d = r.measure_distance(&h, DEFAULT_NODE_CAP).unwrap().unwrap();
        assert!(d >= 10, "d = {d}");
    }

    #[test]
    fn rejects_wrong_alpha() {
        let g = Graph::empty(4);
        let a = IndependentSet::new(&g, vec![0, 1]).unwrap();
        let b = IndependentSet::new(&g, vec![2, 3]).unwrap();
        let err = toll_booth_extend(&g, 2, &a, &b, 1, 100).unwrap_err();
        assert!(err.to_string().contains("alpha"));
    }
}
