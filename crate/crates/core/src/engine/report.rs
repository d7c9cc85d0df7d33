use super::{Engine, ReconfigRule};
use crate::error::Result;
use serde::{Deserialize, Serialize};

/// Largest component diameter of R_k(G), as emitted by `reconfig diameter`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterReport {
    pub n: usize,
    pub k: usize,
    pub rule: ReconfigRule,
    pub component_size: Option<usize>,
    pub diameter: Option<usize>,
    pub witness_from: Option<Vec<usize>>,
    pub witness_to: Option<Vec<usize>>,
    pub capped: bool,
    /// Components explored (all of them unless capped).
    pub components: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl DiameterReport {
    pub(super) fn compute(engine: &Engine<'_>) -> Result<Self> {
        let partition = engine.enumerate_components()?;
        let mut report = DiameterReport {
            n: engine.graph().n(),
            k: engine.k(),
            rule: engine.rule(),
            component_size: None,
            diameter: None,
            witness_from: None,
            witness_to: None,
            capped: partition.capped,
            components: partition.len(),
            reason: None,
        };
        // first component (by smallest key) wins ties
        let mut best: Option<(usize, usize)> = None;
        for (i, c) in partition.components.iter().enumerate() {
            let d = c.diameter().0;
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, i));
            }
        }
        match best {
            Some((d, i)) => {
                let c = &partition.components[i];
                let (_, a, b) = c.diameter();
                report.component_size = Some(c.size());
                report.diameter = Some(d);
                report.witness_from = Some(a.into_vec());
                report.witness_to = Some(b.into_vec());
            }
            None if partition.capped => {
                report.reason = Some("node cap exceeded".into());
            }
            None => {
                report.reason = Some("no independent set".into());
            }
        }
        Ok(report)
    }
}
