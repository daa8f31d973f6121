use serde::{Deserialize, Serialize};

use crate::rep::{rad_power_dims, RepError};

use super::ARQuiver;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditMismatch {
    pub source: String,
    pub target: String,
    pub stored: usize,
    pub irr: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowAudit {
    pub pairs_checked: usize,
    pub mismatches: Vec<AuditMismatch>,
    /// The component is a window, so `irr` is only a bound.
    pub window: bool,
}

impl ArrowAudit {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares stored arrow multiplicities with `dim rad − dim rad²` over all node pairs.
pub fn arrow_audit(ar: &ARQuiver) -> Result<ArrowAudit, RepError> {
    let reps = ar.reps();
    let table = rad_power_dims(&reps, 2)?;
    let k = reps.len();
    let mut mismatches = Vec::new();
    for x in 0..k {
        for y in 0..k {
            let stored = ar.multiplicity(x, y);
            let irr = table.irr(x, y);
            if stored != irr {
                mismatches.push(AuditMismatch {
                    source: ar.nodes[x].id.clone(),
                    target: ar.nodes[y].id.clone(),
                    stored,
                    irr,
                });
            }
        }
    }
    Ok(ArrowAudit {
        pairs_checked: k * k,
        mismatches,
        window: !ar.complete,
    })
}
