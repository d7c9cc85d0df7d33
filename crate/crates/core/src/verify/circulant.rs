use crate::constructions::{circulant_ap_graph, predicted_triples};
use crate::engine::{Engine, ReconfigRule};
use crate::error::{Error, Result};
use crate::graph::IndependentSet;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Exhaustive comparison of R_3 of a circulant graph with the predicted
/// triple families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirculantStructure {
    pub p: u64,
    pub s: Vec<u64>,
    pub triples: usize,
    pub components: usize,
    pub component_sizes: Vec<usize>,
    pub all_paths: bool,
    /// R_3 edges joining triples of different predicted families.
    pub cross_edges: usize,
    /// Independent triples outside every predicted family.
    pub unexpected: Vec<Vec<u64>>,
    /// Each family forms exactly one component.
    pub families_match: bool,
}

impl CirculantStructure {
    pub fn pass(&self) -> bool {
        let expect = (self.p - 3) as usize;
        self.components == self.s.len()
            && self.all_paths
            && self.cross_edges == 0
            && self.unexpected.is_empty()
            && self.families_match
            && self.component_sizes.iter().all(|&c| c == expect)
    }
}

pub fn check_circulant_structure(p: u64, s: &[u64], cap: usize) -> Result<CirculantStructure> {
    let (g, _) = circulant_ap_graph(p, s)?;
    let engine = Engine::new(&g, 3, ReconfigRule::TokenJumping)?.with_cap(cap);
    let parts = engine.enumerate_components()?;
    if parts.capped {
        return Err(Error::Capped { cap, visited: parts.visited });
    }
    let mut family: HashMap<IndependentSet, usize> = HashMap::new();
    for (fi, &x) in s.iter().enumerate() {
        for t in predicted_triples(p, x) {
            let set = IndependentSet::new(&g, t.iter().map(|&l| (l - 1) as usize).collect())?;
            family.insert(set, fi);
        }
    }
    let mut out = CirculantStructure {
        p,
        s: s.to_vec(),
        triples: 0,
        components: parts.len(),
        component_sizes: parts.components.iter().map(|c| c.size()).collect(),
        all_paths: parts.components.iter().all(|c| c.is_path()),
        cross_edges: 0,
        unexpected: Vec::new(),
        families_match: true,
    };
    let mut owner = vec![None; s.len()];
    for (ci, c) in parts.components.iter().enumerate() {
        for i in 0..c.size() {
            out.triples += 1;
            let t = c.set(i);
            let Some(&fi) = family.get(&t) else {
                out.unexpected.push(t.vertices().iter().map(|&v| v as u64 + 1).collect());
                continue;
            };
            match owner[fi] {
                None => owner[fi] = Some(ci),
                Some(o) if o != ci => out.families_match = false,
                _ => {}
            }
            for &j in c.neighbor_indices(i) {
                if family.get(&c.set(j as usize)).is_some_and(|&fj| fj != fi) {
                    out.cross_edges += 1;
                }
            }
        }
    }
    out.cross_edges /= 2;
    let owners: Vec<_> = owner.iter().flatten().collect();
    if owners.len() != s.len() || owners.iter().collect::<std::collections::HashSet<_>>().len() != s.len() {
        out.families_match = false;
    }
    Ok(out)
}
