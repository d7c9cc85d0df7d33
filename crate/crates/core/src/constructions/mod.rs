//! Graphs whose configuration graphs have long shortest reconfiguration
//! sequences, each returned with a [`BuildReport`] naming its special
//! vertices, the endpoints realizing the claim, and the claimed bound.

mod assembly;
mod circulant;
mod glue;
mod toll;
mod triple;

pub use assembly::{build_general, build_k3_extremal};
pub use circulant::{circulant_ap_graph, circulant_component_ends, predicted_triples};
pub use glue::{check_claim_inter, glue, ClaimInterReport, ComponentLink, JunctionSpec};
pub use toll::{iterate_toll, toll_booth_extend};
pub use triple::{check_h_properties, triple_extend, HProperties};

use crate::engine::{Engine, ReconfigRule};
use crate::error::{Error, Result};
use crate::graph::{Graph, IndependentSet};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A bound the construction promises on the distance between its endpoints
/// (or on the largest component diameter).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub formula: String,
    pub value: usize,
    /// `true` when the value is exact rather than a lower bound.
    pub exact: bool,
}

impl Claim {
    pub fn lower(formula: impl Into<String>, value: usize) -> Self {
        Self {
            formula: formula.into(),
            value,
            exact: false,
        }
    }

    pub fn exact(formula: impl Into<String>, value: usize) -> Self {
        Self {
            formula: formula.into(),
            value,
            exact: true,
        }
    }

    /// Whether a measured value honors the claim.
    pub fn holds_for(&self, measured: usize) -> bool {
        if self.exact {
            measured == self.value
        } else {
            measured >= self.value
        }
    }
}

/// Audit trail of one construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BuildReport {
    pub construction: String,
    pub params: serde_json::Value,
    pub vertices: usize,
    pub k: usize,
    /// Named special vertices, by role.
    pub roles: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub junctions: Vec<JunctionSpec>,
    pub claim: Claim,
    /// Further bounds stated for the same endpoints, recorded but not the
    /// primary target.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub other_claims: Vec<Claim>,
    pub start: IndependentSet,
    pub target: IndependentSet,
    /// Exact distances measured while building (inputs to the claim).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub measured: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BuildReport {
    pub(crate) fn new(
        construction: &str,
        params: serde_json::Value,
        g: &Graph,
        k: usize,
        claim: Claim,
        start: IndependentSet,
        target: IndependentSet,
    ) -> Self {
        Self {
            construction: construction.to_string(),
            params,
            vertices: g.n(),
            k,
            roles: BTreeMap::new(),
            junctions: Vec::new(),
            claim,
            other_claims: Vec::new(),
            start,
            target,
            measured: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// Endpoints are independent sets of size `k` in `g`.
    pub fn check_endpoints(&self, g: &Graph) -> Result<()> {
        for (name, s) in [("start", &self.start), ("target", &self.target)] {
            if s.k() != self.k {
                return Err(Error::precondition(format!(
                    "{}: {name} endpoint {s} has size {}, expected {}",
                    self.construction,
                    s.k(),
                    self.k
                )));
            }
            if !g.is_independent(s.vertices())? {
                return Err(Error::precondition(format!(
                    "{}: {name} endpoint {s} is not independent",
                    self.construction
                )));
            }
        }
        if self.vertices != g.n() {
            return Err(Error::precondition(format!(
                "{}: report says {} vertices, graph has {}",
                self.construction,
                self.vertices,
                g.n()
            )));
        }
        Ok(())
    }

    /// Exact distance between the endpoints under token jumping.
    pub fn measure_distance(&self, g: &Graph, cap: usize) -> Result<Option<usize>> {
        Engine::new(g, self.k, ReconfigRule::TokenJumping)?
            .with_cap(cap)
            .distance(&self.start, &self.target)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn largest_prime_at_most(x: u64) -> Option<u64> {
    (2..=x).rev().find(|&p| is_prime(p))
}

/// `n choose r`, saturating.
pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Complement of the path `0 - 1 - ... - (n-1)`: R_2 is a path with n-1
/// nodes, from `{0,1}` to `{n-2,n-1}`.
pub fn complement_path(n: usize) -> Result<(Graph, BuildReport)> {
    if n < 3 {
        return Err(Error::precondition(format!("complement of a path needs n >= 3, got {n}")));
    }
    let g = Graph::path(n).complement();
    let start = IndependentSet::new(&g, vec![0, 1])?;
    let target = IndependentSet::new(&g, vec![n - 2, n - 1])?;
    let mut report = BuildReport::new(
        "comp-path",
        serde_json::json!({ "n": n }),
        &g,
        2,
        Claim::exact("n - 2", n - 2),
        start,
        target,
    );
    report.roles.insert("path".into(), (0..n).collect());
    report.check_endpoints(&g)?;
    Ok((g, report))
}
