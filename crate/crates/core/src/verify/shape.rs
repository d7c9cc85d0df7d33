use crate::engine::{Engine, ReconfigRule};
use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathVerdict {
    pub is_path: bool,
    pub nodes: usize,
    pub components: usize,
    pub diameter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Whether R_k(G) as a whole is a single path. An empty R_k is not.
pub fn is_config_path(g: &Graph, k: usize, cap: usize) -> Result<PathVerdict> {
    let parts = Engine::new(g, k, ReconfigRule::TokenJumping)?
        .with_cap(cap)
        .enumerate_components()?;
    if parts.capped {
        return Err(Error::Capped { cap, visited: parts.visited });
    }
    let nodes = parts.components.iter().map(|c| c.size()).sum();
    let mut v = PathVerdict {
        is_path: false,
        nodes,
        components: parts.len(),
        diameter: None,
        reason: None,
    };
    match parts.components.as_slice() {
        [] => v.reason = Some("empty".into()),
        [c] => {
            v.diameter = Some(c.diameter().0);
            if c.is_path() {
                v.is_path = true;
            } else {
                v.reason = Some("degree pattern is not a path".into());
            }
        }
        _ => v.reason = Some(format!("{} components", parts.len())),
    }
    Ok(v)
}

fn max_diameter(g: &Graph, cap: usize) -> Result<Option<usize>> {
    let rep = Engine::new(g, 3, ReconfigRule::TokenJumping)?
        .with_cap(cap)
        .max_component_diameter()?;
    if rep.capped {
        return Err(Error::Capped { cap, visited: 0 });
    }
    Ok(rep.diameter)
}

/// Adds edges in lexicographic order while the largest R_3 component
/// diameter stays the same, repeating passes until nothing more can be added.
pub fn saturate_to_path(g: &Graph, cap: usize) -> Result<Graph> {
    let target = max_diameter(g, cap)?;
    let mut h = g.clone();
    loop {
        let mut changed = false;
        let candidates: Vec<(usize, usize)> = h.non_edges().collect();
        for (u, v) in candidates {
            h.add_edge(u, v);
            if max_diameter(&h, cap)? == target {
                changed = true;
            } else {
                h.remove_edge(u, v);
            }
        }
        if !changed {
            return Ok(h);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let v = is_config_path(&Graph::path(6).complement(), 2, 1000).unwrap();
        assert!(v.is_path);
        assert_eq!(v.diameter, Some(4));
        let v = is_config_path(&Graph::complete(4), 2, 1000).unwrap();
        assert!(!v.is_path);
        assert_eq!(v.reason.as_deref(), Some("empty"));
        let v = is_config_path(&Graph::empty(4), 2, 1000).unwrap();
        assert!(!v.is_path);
    }

    #[test]
    fn saturate_empty_four() {
        let h = saturate_to_path(&Graph::empty(4), 1000).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let v = is_config_path(&h, 3, 1000).unwrap();
        assert!(v.is_path);
        assert_eq!(v.diameter, Some(1));
    }
}
