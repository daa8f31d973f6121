use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactlin::Field;
use crate::quiver::Quiver;
use crate::rep::{Morphism, MorphismJson, Rep, RepJson};

use super::{ARQuiver, ArArrow, ArNode, KnitError};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArNodeJson {
    pub id: String,
    pub dims: Vec<usize>,
    pub is_projective: bool,
    pub is_injective: bool,
    pub level: usize,
    /// Vertex id `x` of the orbit `τ^{-shift} P_x`.
    pub vertex: String,
    pub shift: usize,
    pub processed: bool,
    pub rep: RepJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArArrowJson {
    pub source: String,
    pub target: String,
    pub multiplicity: usize,
    pub valuation: (usize, usize),
    #[serde(default)]
    pub maps: Vec<MorphismJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArQuiverJson {
    pub v: u32,
    pub quiver: Quiver,
    pub field: Field,
    pub complete: bool,
    pub meshes: usize,
    pub nodes: Vec<ArNodeJson>,
    pub arrows: Vec<ArArrowJson>,
    /// Node id to the id of its translate.
    pub translate: BTreeMap<String, String>,
}

impl ARQuiver {
    pub fn to_json(&self) -> ArQuiverJson {
        let q = &self.quiver;
        ArQuiverJson {
            v: 1,
            quiver: (**q).clone(),
            field: self.field,
            complete: self.complete,
            meshes: self.meshes,
            nodes: self
                .nodes
                .iter()
                .map(|n| ArNodeJson {
                    id: n.id.clone(),
                    dims: n.dims().0.clone(),
                    is_projective: n.is_projective,
                    is_injective: n.is_injective,
                    level: n.level,
                    vertex: q.vertex_id(n.vertex).to_string(),
                    shift: n.shift,
                    processed: n.processed,
                    rep: n.rep.to_json(false),
                })
                .collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArArrowJson {
                    source: self.nodes[a.source].id.clone(),
                    target: self.nodes[a.target].id.clone(),
                    multiplicity: a.multiplicity,
                    valuation: a.valuation,
                    maps: a.maps.iter().map(|f| f.to_json(q)).collect(),
                })
                .collect(),
            translate: self
                .translate
                .iter()
                .enumerate()
                .filter_map(|(z, t)| t.map(|x| (self.nodes[z].id.clone(), self.nodes[x].id.clone())))
                .collect(),
        }
    }

    pub fn from_json(raw: &ArQuiverJson) -> Result<ARQuiver, KnitError> {
        let bad = |m: String| KnitError::Invalid(m);
        let q = Arc::new(raw.quiver.clone());
        let mut nodes = Vec::with_capacity(raw.nodes.len());
        let mut index = BTreeMap::new();
        for (i, n) in raw.nodes.iter().enumerate() {
            let rep = Rep::from_json(&n.rep, Some(q.clone()), raw.field)?;
            if rep.dims().0 != n.dims {
                return Err(bad(format!(
                    "node {} lists dims {:?} but its rep has {:?}",
                    n.id,
                    n.dims,
                    rep.dims().0
                )));
            }
            if index.insert(n.id.clone(), i).is_some() {
                return Err(bad(format!("duplicate node id {}", n.id)));
            }
            nodes.push(ArNode {
                id: n.id.clone(),
                rep,
                is_projective: n.is_projective,
                is_injective: n.is_injective,
                level: n.level,
                vertex: q.vertex_index(&n.vertex)?,
                shift: n.shift,
                processed: n.processed,
            });
        }
        let look = |id: &str| index.get(id).copied().ok_or_else(|| bad(format!("unknown node {id}")));
        let mut arrows = Vec::with_capacity(raw.arrows.len());
        for a in &raw.arrows {
            let (s, t) = (look(&a.source)?, look(&a.target)?);
            let maps = a
                .maps
                .iter()
                .map(|m| Morphism::from_json(m, &nodes[s].rep, &nodes[t].rep))
                .collect::<Result<Vec<_>, _>>()?;
            if !maps.is_empty() && maps.len() != a.multiplicity {
                return Err(bad(format!(
                    "arrow {} -> {} has {} maps",
                    a.source,
                    a.target,
                    maps.len()
                )));
            }
            arrows.push(ArArrow {
                source: s,
                target: t,
                multiplicity: a.multiplicity,
                valuation: a.valuation,
                maps,
            });
        }
        let mut translate = vec![None; nodes.len()];
        for (z, x) in &raw.translate {
            translate[look(z)?] = Some(look(x)?);
        }
        Ok(ARQuiver {
            quiver: q,
            field: raw.field,
            nodes,
            arrows,
            translate,
            complete: raw.complete,
            meshes: raw.meshes,
        })
    }

    pub fn parse_json(text: &str) -> Result<ARQuiver, KnitError> {
        let raw: ArQuiverJson = serde_json::from_str(text).map_err(|e| KnitError::Invalid(e.to_string()))?;
        ARQuiver::from_json(&raw)
    }
}
