//! Translation quivers, their mesh categories, sections and wings. Nothing
//! here knows about representations.

mod hom;
mod section;
mod shape;
mod wing;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knit::ARQuiver;

pub use hom::{mesh_hom_dim, mesh_hom_dim_fast, mesh_hom_row, mesh_hom_table, FastHom};
pub use section::{find_sections, find_sections_capped, is_section, SectionSearch, SectionView, SECTION_LIMIT};
pub use shape::{build_shape, ShapeKind};
pub use wing::{detect_wing, quasi_simples, WingChart};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeshError {
    #[error("oriented cycle through {0:?}")]
    Cycle(Vec<String>),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("translate is not injective at {0:?}")]
    TranslateNotInjective(String),
    #[error("mesh ending at {0:?} does not match the arrows leaving its translate")]
    MeshMismatch(String),
    #[error("empty window")]
    EmptyWindow,
    #[error("invalid translation quiver JSON: {0}")]
    Json(String),
}

/// Shapes a finite window may stand in for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeTag {
    #[serde(rename = "ZAinf")]
    ZAInf,
    #[serde(rename = "NAinf")]
    NAInf,
    #[serde(rename = "NminusAinf")]
    NMinusAInf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TqArrow {
    pub source: usize,
    pub target: usize,
    pub multiplicity: usize,
}

/// The mesh ending at `z`: for each middle vertex `w` with multiplicity `m`,
/// the `k`-th arrow `τz → w` is paired with the `k`-th arrow `w → z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mesh {
    pub z: usize,
    pub tau_z: usize,
    /// `(w, arrow τz → w, arrow w → z, m)`.
    pub middle: Vec<(usize, usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationQuiver {
    vertices: Vec<String>,
    arrows: Vec<TqArrow>,
    translate: Vec<Option<usize>>,
    meshes: Vec<Mesh>,
    mesh_at: Vec<Option<usize>>,
    topo: Vec<usize>,
    /// Position of each vertex in `topo`.
    rank: Vec<usize>,
    pub complete: bool,
    pub shape: Option<ShapeTag>,
}

impl TranslationQuiver {
    /// Validates acyclicity and the meshes, then builds the mesh ledger.
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<TqArrow>,
        translate: Vec<Option<usize>>,
    ) -> Result<TranslationQuiver, MeshError> {
        let n = vertices.len();
        let mut seen = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(MeshError::DuplicateVertex(v.clone()));
            }
        }
        // merge parallel arrow entries
        let mut merged: Vec<TqArrow> = Vec::new();
        for a in arrows {
            if a.multiplicity == 0 {
                continue;
            }
            match merged.iter_mut().find(|b| b.source == a.source && b.target == a.target) {
                Some(b) => b.multiplicity += a.multiplicity,
                None => merged.push(a),
            }
        }
        let topo = topo_order(n, &merged)
            .map_err(|cyc| MeshError::Cycle(cyc.iter().map(|&i| vertices[i].clone()).collect()))?;
        let mut image = vec![false; n];
        for t in translate.iter().flatten() {
            if std::mem::replace(&mut image[*t], true) {
                return Err(MeshError::TranslateNotInjective(vertices[*t].clone()));
            }
        }
        let find = |s: usize, t: usize| merged.iter().position(|a| a.source == s && a.target == t);
        let mut meshes = Vec::new();
        let mut mesh_at = vec![None; n];
        for z in 0..n {
            let Some(t) = translate[z] else { continue };
            let mut middle = Vec::new();
            for (bi, b) in merged.iter().enumerate().filter(|(_, a)| a.target == z) {
                let w = b.source;
                let ai = find(t, w).ok_or_else(|| MeshError::MeshMismatch(vertices[z].clone()))?;
                if merged[ai].multiplicity != b.multiplicity {
                    return Err(MeshError::MeshMismatch(vertices[z].clone()));
                }
                middle.push((w, ai, bi, b.multiplicity));
            }
            let out_of_t = merged.iter().filter(|a| a.source == t).count();
            if out_of_t != middle.len() || middle.is_empty() {
                return Err(MeshError::MeshMismatch(vertices[z].clone()));
            }
            middle.sort_unstable();
            mesh_at[z] = Some(meshes.len());
            meshes.push(Mesh { z, tau_z: t, middle });
        }
        let mut rank = vec![0; n];
        for (i, &v) in topo.iter().enumerate() {
            rank[v] = i;
        }
        Ok(TranslationQuiver {
            vertices,
            arrows: merged,
            translate,
            meshes,
            mesh_at,
            topo,
            rank,
            complete: true,
            shape: None,
        })
    }

    /// Forgets the representations of a knitted component.
    pub fn from_ar(ar: &ARQuiver) -> Result<TranslationQuiver, MeshError> {
        let mut tq = TranslationQuiver::new(
            ar.nodes.iter().map(|n| n.id.clone()).collect(),
            ar.arrows
                .iter()
                .map(|a| TqArrow {
                    source: a.source,
                    target: a.target,
                    multiplicity: a.multiplicity,
                })
                .collect(),
            ar.translate.clone(),
        )?;
        tq.complete = ar.complete;
        Ok(tq)
    }

    pub fn with_shape(mut self, shape: Option<ShapeTag>) -> Self {
        self.shape = shape;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize, MeshError> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| MeshError::UnknownVertex(id.to_string()))
    }

    pub fn arrows(&self) -> &[TqArrow] {
        &self.arrows
    }

    pub fn meshes(&self) -> &[Mesh] {
        &self.meshes
    }

    pub fn mesh_at(&self, z: usize) -> Option<&Mesh> {
        self.mesh_at[z].map(|i| &self.meshes[i])
    }

    pub fn tau(&self, z: usize) -> Option<usize> {
        self.translate[z]
    }

    pub fn tau_inverse(&self, x: usize) -> Option<usize> {
        self.translate.iter().position(|t| *t == Some(x))
    }

    pub fn translate(&self) -> &[Option<usize>] {
        &self.translate
    }

    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn topo_rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn in_arrows(&self, z: usize) -> impl Iterator<Item = (usize, &TqArrow)> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == z)
    }

    pub fn out_arrows(&self, z: usize) -> impl Iterator<Item = (usize, &TqArrow)> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == z)
    }

    /// Distinct immediate predecessors.
    pub fn predecessors(&self, z: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.in_arrows(z).map(|(_, a)| a.source).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn successors(&self, z: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.out_arrows(z).map(|(_, a)| a.target).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `reach[x][y]`: a path `x ⇝ y` exists (including `x = y`).
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut reach = vec![vec![false; n]; n];
        for &x in self.topo.iter().rev() {
            reach[x][x] = true;
            for (_, a) in self.out_arrows(x) {
                let row = reach[a.target].clone();
                for (r, s) in reach[x].iter_mut().zip(row) {
                    *r |= s;
                }
            }
        }
        reach
    }

    /// τ-orbits, each listed from the τ-most element towards τ⁻.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for v in 0..n {
            if self.translate[v].is_some() {
                continue;
            }
            let mut orbit = vec![v];
            let mut cur = v;
            while let Some(next) = self.tau_inverse(cur) {
                orbit.push(next);
                cur = next;
            }
            out.push(orbit);
        }
        out
    }

    pub fn to_json(&self) -> TranslationQuiverJson {
        TranslationQuiverJson {
            v: 1,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| TqArrowJson {
                    source: self.vertices[a.source].clone(),
                    target: self.vertices[a.target].clone(),
                    multiplicity: a.multiplicity,
                })
                .collect(),
            translate: self
                .translate
                .iter()
                .enumerate()
                .filter_map(|(z, t)| t.map(|x| (self.vertices[z].clone(), self.vertices[x].clone())))
                .collect(),
            complete: self.complete,
            shape: self.shape,
        }
    }

    pub fn from_json(raw: &TranslationQuiverJson) -> Result<TranslationQuiver, MeshError> {
        let index: BTreeMap<&str, usize> = raw.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let look = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| MeshError::UnknownVertex(id.to_string()))
        };
        let arrows = raw
            .arrows
            .iter()
            .map(|a| {
                Ok(TqArrow {
                    source: look(&a.source)?,
                    target: look(&a.target)?,
                    multiplicity: a.multiplicity,
                })
            })
            .collect::<Result<Vec<_>, MeshError>>()?;
        let mut translate = vec![None; raw.vertices.len()];
        for (z, x) in &raw.translate {
            translate[look(z)?] = Some(look(x)?);
        }
        let mut tq = TranslationQuiver::new(raw.vertices.clone(), arrows, translate)?;
        tq.complete = raw.complete;
        tq.shape = raw.shape;
        Ok(tq)
    }

    /// Accepts translation quiver JSON or AR quiver JSON.
    pub fn parse_json(text: &str) -> Result<TranslationQuiver, MeshError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| MeshError::Json(e.to_string()))?;
        if value.get("quiver").is_some() {
            let ar = ARQuiver::parse_json(text).map_err(|e| MeshError::Json(e.to_string()))?;
            return TranslationQuiver::from_ar(&ar);
        }
        let raw: TranslationQuiverJson = serde_json::from_value(value).map_err(|e| MeshError::Json(e.to_string()))?;
        TranslationQuiver::from_json(&raw)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TqArrowJson {
    pub source: String,
    pub target: String,
    #[serde(default = "one")]
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TranslationQuiverJson {
    #[serde(default = "one_u32")]
    pub v: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<TqArrowJson>,
    #[serde(default)]
    pub translate: BTreeMap<String, String>,
    #[serde(default = "yes")]
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeTag>,
}

fn one() -> usize {
    1
}

fn one_u32() -> u32 {
    1
}

fn yes() -> bool {
    true
}

/// Kahn's algorithm with smallest-index tie breaking; on failure returns a cycle.
fn topo_order(n: usize, arrows: &[TqArrow]) -> Result<Vec<usize>, Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.target] += 1;
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for a in arrows.iter().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                ready.insert(a.target);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // walk backwards through unfinished vertices until one repeats
    let mut path = Vec::new();
    let mut pos = vec![usize::MAX; n];
    let mut v = (0..n).find(|&v| indeg[v] > 0).expect("a vertex on a cycle");
    loop {
        if pos[v] != usize::MAX {
            let mut cycle = path[pos[v]..].to_vec();
            cycle.reverse();
            return Err(cycle);
        }
        pos[v] = path.len();
        path.push(v);
        v = arrows
            .iter()
            .find(|a| a.target == v && indeg[a.source] > 0)
            .map(|a| a.source)
            .expect("unfinished vertex has an unfinished predecessor");
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactlin::Field;
    use crate::knit::{knit_full_dynkin, knit_preprojective};
    use crate::quiver::Family;

    pub(crate) fn arrow(source: usize, target: usize) -> TqArrow {
        TqArrow {
            source,
            target,
            multiplicity: 1,
        }
    }

    #[test]
    fn from_a2_component() {
        let q = Arc::new(Family::LinearA(2).build().unwrap());
        let ar = knit_preprojective(&q, Field::Rational, 10).unwrap();
        let tq = TranslationQuiver::from_ar(&ar).unwrap();
        assert_eq!(tq.vertex_count(), 3);
        assert_eq!(tq.meshes().len(), 1);
        let text = serde_json::to_string(&tq.to_json()).unwrap();
        assert_eq!(TranslationQuiver::parse_json(&text).unwrap(), tq);
        let ar_text = serde_json::to_string(&ar.to_json()).unwrap();
        assert_eq!(TranslationQuiver::parse_json(&ar_text).unwrap(), tq);
    }

    #[test]
    fn d4_meshes() {
        let q = Arc::new(
            Family::D {
                n: 4,
                orientation: None,
            }
            .build()
            .unwrap(),
        );
        let ar = knit_full_dynkin(&q, Field::Rational).unwrap();
        let tq = TranslationQuiver::from_ar(&ar).unwrap();
        assert_eq!(tq.vertex_count(), 12);
        assert_eq!(tq.meshes().len(), 8);
        assert_eq!(tq.orbits().len(), 4);
    }

    #[test]
    fn tube_refused() {
        // rank-2 tube mouth: X ⇄ Y with τX = Y, τY = X
        let err = TranslationQuiver::new(
            vec!["X".into(), "Y".into()],
            vec![arrow(0, 1), arrow(1, 0)],
            vec![Some(1), Some(0)],
        )
        .unwrap_err();
        match err {
            MeshError::Cycle(c) => assert_eq!(c.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mesh_mismatch_refused() {
        // τC = A but A has no arrow to B
        let err = TranslationQuiver::new(
            vec!["A".into(), "B".into(), "C".into()],
            vec![arrow(1, 2)],
            vec![None, None, Some(0)],
        )
        .unwrap_err();
        assert_eq!(err, MeshError::MeshMismatch("C".into()));
    }
}
