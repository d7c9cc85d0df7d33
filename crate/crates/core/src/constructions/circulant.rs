use super::{is_prime, BuildReport, Claim};
use crate::apfree::is_3ap_free;
use crate::error::{Error, Result};
use crate::graph::{Graph, IndependentSet};

fn check_params(p: u64, s: &[u64]) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::precondition(format!("p = {p} is not prime")));
    }
    if s.is_empty() {
        return Err(Error::precondition("S is empty"));
    }
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::precondition(format!("S = {s:?} is not strictly increasing")));
    }
    if let Some(x) = s.iter().find(|&&x| x % 4 != 1) {
        return Err(Error::precondition(format!("element {x} of S is not 1 mod 4")));
    }
    let max = *s.last().unwrap();
    if 8 * max > p {
        return Err(Error::precondition(format!("max(S) = {max} exceeds p/8 = {}", p as f64 / 8.0)));
    }
    if !is_3ap_free(s) {
        return Err(Error::precondition(format!("S = {s:?} contains a 3-term progression")));
    }
    Ok(())
}

/// Vertices `1..p` (vertex id = label - 1); `u ~ v` unless `u - v` is one
/// of `±s, ±2s (mod p)` for some `s` in `S`.
///
/// R_3 of this graph has one component per element of `S`, each a path
/// through the triples `{js, (j+1)s, (j+2)s}`.
pub fn circulant_ap_graph(p: u64, s: &[u64]) -> Result<(Graph, BuildReport)> {
    check_params(p, s)?;
    let n = (p - 1) as usize;
    let mut missing = vec![false; p as usize];
    for &x in s {
        for d in [x, 2 * x, p - x, p - 2 * x] {
            missing[(d % p) as usize] = true;
        }
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if !missing[v - u] {
                g.add_edge(u, v);
            }
        }
    }
    g.set_labels((1..p as i64).collect())?;

    let (start, target) = circulant_component_ends(p, s[0]);
    let mut report = BuildReport::new(
        "circulant",
        serde_json::json!({ "p": p, "S": s }),
        &g,
        3,
        Claim::exact("p - 4", (p - 4) as usize),
        start,
        target,
    );
    for &x in s {
        let (a, b) = circulant_component_ends(p, x);
        report.roles.insert(format!("A[s={x}]"), a.into_vec());
        report.roles.insert(format!("B[s={x}]"), b.into_vec());
    }
    report.notes.push(format!(
        "R_3 has {} path components, each with p - 3 = {} nodes",
        s.len(),
        p - 3
    ));
    report.check_endpoints(&g)?;
    Ok((g, report))
}

/// Label triples `{js, (j+1)s, (j+2)s} mod p` for `j = 1..=p-3`, in path order.
pub fn predicted_triples(p: u64, s: u64) -> Vec<[u64; 3]> {
    (1..=p - 3)
        .map(|j| {
            let mut t = [j * s % p, (j + 1) * s % p, (j + 2) * s % p];
            t.sort_unstable();
            t
        })
        .collect()
}

/// Ends of the component for `s` as vertex ids: the triple with the smaller
/// sorted labels first.
pub fn circulant_component_ends(p: u64, s: u64) -> (IndependentSet, IndependentSet) {
    let triples = predicted_triples(p, s);
    let to_set = |t: &[u64; 3]| {
        IndependentSet::from_sorted_unchecked(t.iter().map(|&l| (l - 1) as usize).collect())
    };
    let (a, b) = (to_set(&triples[0]), to_set(triples.last().unwrap()));
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
