use super::{circulant_ap_graph, circulant_component_ends, complement_path, glue, is_prime, triple_extend};
use super::{BuildReport, Claim, ComponentLink};
use crate::apfree::{best_available, odd_3ap_free};
use crate::error::{Error, Result};
use crate::graph::{Graph, IndependentSet};

const EXACT_LIMIT: u64 = 40;

/// `(p, S)` for the largest prime p whose glued circulant graph fits in
/// `budget` vertices: `p - 1 + 7(|S| - 1) <= budget`.
fn k3_params(budget: usize) -> Option<(u64, Vec<u64>)> {
    (2..=budget as u64 + 1).rev().filter(|&p| is_prime(p)).find_map(|p| {
        let s = odd_3ap_free(p / 8, 4).ok()?;
        let s = s.elements().to_vec();
        if s.is_empty() || 8 * s.last()? > p {
            return None;
        }
        let cost = (p - 1) as usize + 7 * (s.len() - 1);
        (cost <= budget).then_some((p, s))
    })
}

/// Circulant graph for the largest feasible prime with its R_3 path
/// components glued end to end, in the order of `S`.
pub fn build_k3_extremal(budget: usize, cap: usize) -> Result<(Graph, BuildReport)> {
    let (p, s) = k3_params(budget)
        .ok_or_else(|| Error::precondition(format!("budget {budget} admits no prime with a valid S")))?;
    let (g, base) = circulant_ap_graph(p, &s)?;
    let r = s.len();
    let literal = 8 * (r - 1) + r * (p as usize - 3);
    let claim = Claim::lower("8(|S| - 1) + |S|(p - 4)", 8 * (r - 1) + r * (p as usize - 4));
    let params = serde_json::json!({ "budget": budget, "p": p, "S": s });
    if r == 1 {
        let mut report = base;
        report.construction = "k3".into();
        report.params = params;
        report.other_claims.push(Claim::lower("8(|S| - 1) + |S|(p - 3)", literal));
        return Ok((g, report));
    }
    let links: Vec<ComponentLink> = s
        .iter()
        .map(|&x| {
            let (start, end) = circulant_component_ends(p, x);
            ComponentLink { start, end }
        })
        .collect();
    let (h, mut report) = glue(&g, 3, &links, cap)?;
    report.construction = "k3".into();
    report.params = params;
    report.claim = claim;
    report.other_claims.push(Claim::lower("8(|S| - 1) + |S|(p - 3)", literal));
    for (name, v) in base.roles {
        report.roles.insert(name, v);
    }
    report.notes.extend(base.notes);
    Ok((h, report))
}

/// Junction vertices needed to glue the components of a triple step.
fn triple_cost(p: u64, k_next: usize) -> Option<usize> {
    let m = (p / 8).checked_sub(1)? / 8;
    if m == 0 {
        return None;
    }
    let sz = best_available(m, EXACT_LIMIT).0.len();
    Some(p as usize - 1 + (3 * k_next - 2) * (sz - 1))
}

/// Reaches `k_target` tokens by triple steps from a base chosen by
/// `k_target mod 3`: the k = 3 circulant graph (0), `K_2` (1), or the
/// complement of `P_4` (2). The remaining budget is split evenly across steps.
pub fn build_general(k_target: usize, budget: usize, cap: usize) -> Result<(Graph, BuildReport)> {
    if k_target < 3 {
        return Err(Error::precondition(format!("k must be at least 3, got {k_target}")));
    }
    if k_target == 3 {
        return build_k3_extremal(budget, cap);
    }
    let (mut g, mut a, mut b, mut k, mut chained) = match k_target % 3 {
        0 => {
            let (g, r) = build_k3_extremal(17, cap)?;
            (g, r.start, r.target, 3, r.claim.value)
        }
        1 => {
            let g = Graph::complete(2);
            let a = IndependentSet::new(&g, vec![0])?;
            let b = IndependentSet::new(&g, vec![1])?;
            (g, a, b, 1, 1)
        }
        _ => {
            let (g, r) = complement_path(4)?;
            (g, r.start, r.target, 2, r.claim.value)
        }
    };
    let steps = (k_target - k) / 3;
    let mut last = None;
    let mut primes = Vec::new();
    for step in 0..steps {
        let remaining = budget.saturating_sub(g.n());
        let share = remaining / (steps - step);
        let p = (73..=share as u64 + 1)
            .rev()
            .filter(|&p| is_prime(p))
            .find(|&p| triple_cost(p, k + 3).is_some_and(|c| c <= share))
            .ok_or_else(|| {
                Error::precondition(format!(
                    "budget {budget} leaves {share} vertices for step {}; a triple step needs at least 72",
                    step + 1
                ))
            })?;
        let (h, r) = triple_extend(&g, k, &a, &b, p, None, cap)?;
        let s_len = r.params["S"].as_array().map_or(1, Vec::len);
        let q = (p / 8) as usize;
        chained = (4 * (k + 3) - 4) * (s_len - 1) + s_len * 2 * chained * (q - 1);
        primes.push(p);
        a = r.start.clone();
        b = r.target.clone();
        k += 3;
        g = h;
        last = Some(r);
    }
    let last = last.expect("at least one step");
    let mut report = BuildReport::new(
        "general",
        serde_json::json!({ "k": k_target, "budget": budget, "primes": primes }),
        &g,
        k,
        last.claim.clone(),
        a,
        b,
    );
    report.other_claims.push(Claim::lower("chained step bounds from the base distance", chained));
    report.roles = last.roles;
    report.measured = last.measured;
    report.notes = last.notes;
    report.check_endpoints(&g)?;
    Ok((g, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_parameters() {
        assert_eq!(k3_params(47), Some((41, vec![1, 5])));
        assert_eq!(k3_params(17), Some((17, vec![1])));
        assert_eq!(k3_params(5), None);
    }

    #[test]
    fn k3_budget_47() {
        let (g, r) = build_k3_extremal(47, 1_000_000).unwrap();
        assert_eq!(g.n(), 47);
        assert_eq!(r.claim.value, 82);
        assert_eq!(r.junctions.len(), 1);
    }

    #[test]
    fn general_rejects_tiny_budget() {
        assert!(build_general(5, 40, 1000).is_err());
        assert!(build_general(2, 40, 1000).is_err());
    }
}
