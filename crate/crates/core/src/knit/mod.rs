//! Knitting Auslander-Reiten components from the projectives, with every
//! node realized as a representation and every arrow as irreducible maps.

mod audit;
mod dot;
mod json;

use std::sync::Arc;

use thiserror::Error;

use crate::artheory::{is_injective, tau_inverse, ArError};
use crate::exactlin::Field;
use crate::quiver::{DimVector, Quiver, QuiverError};
use crate::rep::{is_isomorphic, Morphism, Rep, RepError, ISO_TRIALS};

pub use audit::{arrow_audit, ArrowAudit, AuditMismatch};
pub use dot::to_dot;
pub use json::{ArArrowJson, ArNodeJson, ArQuiverJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnitError {
    #[error(transparent)]
    Ar(#[from] ArError),
    #[error("knitting needs a connected quiver")]
    Disconnected,
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("mesh at {node} is not additive")]
    MeshAdditivity { node: String },
    #[error("cokernel of the source map at {node} is not isomorphic to its τ⁻")]
    MeshNotRealized { node: String },
    #[error("knitting stopped with {got} nodes, expected {expected}")]
    Incomplete { expected: usize, got: usize },
    #[error("invalid AR quiver: {0}")]
    Invalid(String),
}

impl From<RepError> for KnitError {
    fn from(e: RepError) -> Self {
        KnitError::Ar(e.into())
    }
}

impl From<QuiverError> for KnitError {
    fn from(e: QuiverError) -> Self {
        KnitError::Ar(e.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArNode {
    pub id: String,
    pub rep: Rep,
    pub is_projective: bool,
    pub is_injective: bool,
    pub level: usize,
    /// The node is `τ^{-shift} P_vertex`.
    pub vertex: usize,
    pub shift: usize,
    /// Whether τ⁻ of this node has been attempted.
    pub processed: bool,
}

impl ArNode {
    pub fn dims(&self) -> &DimVector {
        self.rep.dims()
    }
}

/// `multiplicity` parallel irreducible maps, realized one per instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArArrow {
    pub source: usize,
    pub target: usize,
    pub multiplicity: usize,
    pub valuation: (usize, usize),
    pub maps: Vec<Morphism>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ARQuiver {
    pub quiver: Arc<Quiver>,
    pub field: Field,
    pub nodes: Vec<ArNode>,
    pub arrows: Vec<ArArrow>,
    /// `translate[z] = Some(τz)`.
    pub translate: Vec<Option<usize>>,
    pub complete: bool,
    pub meshes: usize,
}

impl ARQuiver {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn tau(&self, z: usize) -> Option<usize> {
        self.translate[z]
    }

    pub fn tau_inverse(&self, x: usize) -> Option<usize> {
        self.translate.iter().position(|t| *t == Some(x))
    }

    pub fn out_arrows(&self, x: usize) -> impl Iterator<Item = &ArArrow> + '_ {
        self.arrows.iter().filter(move |a| a.source == x)
    }

    pub fn in_arrows(&self, x: usize) -> impl Iterator<Item = &ArArrow> + '_ {
        self.arrows.iter().filter(move |a| a.target == x)
    }

    /// Total multiplicity of arrows `x → y`.
    pub fn multiplicity(&self, x: usize, y: usize) -> usize {
        self.out_arrows(x)
            .filter(|a| a.target == y)
            .map(|a| a.multiplicity)
            .sum()
    }

    pub fn reps(&self) -> Vec<Rep> {
        self.nodes.iter().map(|n| n.rep.clone()).collect()
    }

    /// Checks mesh additivity, Coxeter consistency and level monotonicity.
    pub fn check_invariants(&self) -> Result<(), KnitError> {
        for (z, t) in self.translate.iter().enumerate() {
            let Some(x) = *t else { continue };
            let mut rhs = vec![0usize; self.quiver.vertex_count()];
            for a in self.in_arrows(z) {
                for (r, d) in rhs.iter_mut().zip(&self.nodes[a.source].dims().0) {
                    *r += a.multiplicity * d;
                }
            }
            if self.nodes[x].dims().add(self.nodes[z].dims()).0 != rhs {
                return Err(KnitError::MeshAdditivity {
                    node: self.nodes[z].id.clone(),
                });
            }
            let expected = self.quiver.inverse_coxeter_transform(&self.nodes[x].dims().as_i64())?;
            if expected != self.nodes[z].dims().as_i64() {
                return Err(KnitError::Invalid(format!(
                    "{} is not Coxeter-consistent",
                    self.nodes[z].id
                )));
            }
        }
        for a in &self.arrows {
            let (s, t) = (&self.nodes[a.source], &self.nodes[a.target]);
            let ok = s.level < t.level || (s.level == t.level && s.is_projective && t.is_projective);
            if !ok {
                return Err(KnitError::Invalid(format!(
                    "arrow {} -> {} decreases the level",
                    s.id, t.id
                )));
            }
        }
        Ok(())
    }
}

fn node_id(q: &Quiver, vertex: usize, shift: usize) -> String {
    if shift == 0 {
        format!("P{}", q.vertex_id(vertex))
    } else {
        format!("P{}+{}", q.vertex_id(vertex), shift)
    }
}

/// The start of the knitting: all `P_x`, with `P_y → P_x` per arrow `x → y`.
fn projective_section(q: &Arc<Quiver>, field: Field) -> Result<ARQuiver, KnitError> {
    let n = q.vertex_count();
    let mut nodes = Vec::with_capacity(n);
    for x in 0..n {
        nodes.push(ArNode {
            id: node_id(q, x, 0),
            rep: Rep::projective(q.clone(), field, x)?,
            is_projective: true,
            is_injective: false,
            level: 0,
            vertex: x,
            shift: 0,
            processed: false,
        });
    }
    let mut arrows: Vec<ArArrow> = Vec::new();
    for (a, arr) in q.arrows().iter().enumerate() {
        let (x, y) = (arr.src, arr.tgt);
        let target = &nodes[x].rep;
        let mut image = vec![field.zero(); target.dim_at(y)];
        let pos = q.paths(x, y).iter().position(|p| p == &[a]).expect("arrow is a path");
        image[pos] = field.one();
        let f = target.map_from_projective(y, &image);
        match arrows.iter_mut().find(|e| e.source == y && e.target == x) {
            Some(e) => {
                e.multiplicity += 1;
                e.valuation = (e.multiplicity, e.multiplicity);
                e.maps.push(f);
            }
            None => arrows.push(ArArrow {
                source: y,
                target: x,
                multiplicity: 1,
                valuation: (1, 1),
                maps: vec![f],
            }),
        }
    }
    Ok(ARQuiver {
        quiver: q.clone(),
        field,
        nodes,
        arrows,
        translate: vec![None; n],
        complete: false,
        meshes: 0,
    })
}

/// Completes the mesh starting at `x` by realizing `τ⁻x` as the cokernel of
/// the source map out of `x`. Returns `false` when `x` is injective.
fn knit_mesh(ar: &mut ARQuiver, x: usize, seed: u64) -> Result<bool, KnitError> {
    let rep_x = ar.nodes[x].rep.clone();
    let z = match tau_inverse(&rep_x) {
        Ok(z) => z,
        Err(ArError::TauInverseUndefined) => return Ok(false),
        Err(e) => return Err(e.into()),
    };
    let outgoing: Vec<usize> = (0..ar.arrows.len()).filter(|&i| ar.arrows[i].source == x).collect();
    let mut instances: Vec<(usize, &Morphism)> = Vec::new();
    for &i in &outgoing {
        for f in &ar.arrows[i].maps {
            instances.push((ar.arrows[i].target, f));
        }
    }
    let node_name = ar.nodes[x].id.clone();
    if instances.is_empty() {
        return Err(KnitError::MeshAdditivity { node: node_name });
    }
    let targets: Vec<&Rep> = instances.iter().map(|&(t, _)| &ar.nodes[t].rep).collect();
    let (sum, incl, _) = Rep::direct_sum(&targets)?;
    let source_map = instances
        .iter()
        .zip(&incl)
        .map(|((_, f), i)| f.then(i))
        .reduce(|a, b| a.add(&b))
        .expect("non-empty");
    let (coker, pi) = sum.cokernel_of(&source_map)?;
    if !source_map.is_injective() || coker.dims() != z.dims() {
        return Err(KnitError::MeshAdditivity { node: node_name });
    }
    let phi = is_isomorphic(&coker, &z, ISO_TRIALS, seed)?.ok_or(KnitError::MeshNotRealized { node: node_name })?;
    let to_z = pi.then(&phi);
    let mut maps_into_z = incl.iter().map(|i| i.then(&to_z));

    let level = 1 + outgoing
        .iter()
        .map(|&i| ar.nodes[ar.arrows[i].target].level)
        .max()
        .unwrap_or(0);
    let (vertex, shift) = (ar.nodes[x].vertex, ar.nodes[x].shift + 1);
    let new = ar.nodes.len();
    ar.nodes.push(ArNode {
        id: node_id(&ar.quiver, vertex, shift),
        rep: z,
        is_projective: false,
        is_injective: false,
        level,
        vertex,
        shift,
        processed: false,
    });
    ar.translate.push(Some(x));
    for i in outgoing {
        let (s, m) = (ar.arrows[i].target, ar.arrows[i].multiplicity);
        let maps: Vec<Morphism> = maps_into_z.by_ref().take(m).collect();
        ar.arrows.push(ArArrow {
            source: s,
            target: new,
            multiplicity: m,
            valuation: (m, m),
            maps,
        });
    }
    ar.meshes += 1;
    Ok(true)
}

/// Knits the preprojective component, completing at most `budget` meshes.
pub fn knit_preprojective(q: &Arc<Quiver>, field: Field, budget: usize) -> Result<ARQuiver, KnitError> {
    q.require_acyclic()?;
    if !q.is_connected() {
        return Err(KnitError::Disconnected);
    }
    if budget == 0 {
        return Err(KnitError::ZeroBudget);
    }
    let mut ar = projective_section(q, field)?;
    loop {
        // predecessors of ready nodes are all processed; lowest (level, index) first
        let ready = (0..ar.nodes.len())
            .filter(|&i| !ar.nodes[i].processed)
            .filter(|&i| ar.in_arrows(i).all(|a| ar.nodes[a.source].processed))
            .min_by_key(|&i| (ar.nodes[i].level, i));
        let Some(x) = ready else { break };
        if ar.meshes >= budget {
            break;
        }
        let seed = ar.nodes.len() as u64;
        let knitted = knit_mesh(&mut ar, x, seed)?;
        ar.nodes[x].processed = true;
        ar.nodes[x].is_injective = !knitted;
    }
    ar.complete = ar.nodes.iter().all(|n| n.processed);
    for node in ar.nodes.iter_mut().filter(|n| !n.processed) {
        node.is_injective = is_injective(&node.rep)?;
    }
    ar.check_invariants()?;
    Ok(ar)
}

/// The whole AR quiver of a Dynkin quiver.
pub fn knit_full_dynkin(q: &Arc<Quiver>, field: Field) -> Result<ARQuiver, KnitError> {
    let ty = q.dynkin_type()?;
    let expected = ty.positive_root_count();
    let ar = knit_preprojective(q, field, expected)?;
    if !ar.complete || ar.node_count() != expected {
        return Err(KnitError::Incomplete {
            expected,
            got: ar.node_count(),
        });
    }
    Ok(ar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Family;

    const Q: Field = Field::Rational;

    fn shared(f: Family) -> Arc<Quiver> {
        Arc::new(f.build().unwrap())
    }

    #[test]
    fn a2_component() {
        let ar = knit_preprojective(&shared(Family::LinearA(2)), Q, 10).unwrap();
        assert!(ar.complete);
        let ids: Vec<&str> = ar.nodes.iter().map(|n| n.id.as_str()).collect();
        assert_eq!(ids, vec!["P1", "P2", "P2+1"]);
        let s1 = ar.node_index("P2+1").unwrap();
        assert_eq!(ar.nodes[s1].dims().0, vec![1, 0]);
        assert_eq!(ar.tau(s1), ar.node_index("P2"));
        assert_eq!(ar.multiplicity(1, 0), 1);
        assert_eq!(ar.multiplicity(0, 2), 1);
        assert!(ar.nodes[s1].is_injective && ar.nodes[0].is_injective);
        assert!(!ar.nodes[1].is_injective);
    }

    #[test]
    fn mesh_composites_vanish() {
        let ar = knit_full_dynkin(
            &shared(Family::D {
                n: 4,
                orientation: None,
            }),
            Q,
        )
        .unwrap();
        assert_eq!(ar.node_count(), 12);
        for (z, t) in ar.translate.iter().enumerate() {
            let Some(x) = *t else { continue };
            let mut total: Option<Morphism> = None;
            for a in ar.in_arrows(z) {
                let out = ar
                    .arrows
                    .iter()
                    .find(|b| b.source == x && b.target == a.source)
                    .unwrap();
                for (f, g) in out.maps.iter().zip(&a.maps) {
                    let c = f.then(g);
                    total = Some(match total {
                        None => c,
                        Some(t) => t.add(&c),
                    });
                }
            }
            assert!(total.unwrap().is_zero());
        }
    }

    #[test]
    fn linear_counts() {
        for n in 1..=5 {
            let ar = knit_full_dynkin(&shared(Family::LinearA(n)), Q).unwrap();
            assert_eq!(ar.node_count(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn kronecker_window() {
        let ar = knit_preprojective(&shared(Family::Kronecker), Q, 5).unwrap();
        assert!(!ar.complete);
        assert_eq!(ar.meshes, 5);
        let dims: Vec<Vec<usize>> = ar.nodes.iter().map(|n| n.dims().0.clone()).collect();
        assert_eq!(dims[..4], [vec![1, 2], vec![0, 1], vec![2, 3], vec![3, 4]]);
        assert!(ar.arrows.iter().all(|a| a.multiplicity == 2 && a.valuation == (2, 2)));
        assert!(knit_full_dynkin(&shared(Family::Kronecker), Q).is_err());
    }

    #[test]
    fn refusals() {
        let q = Arc::new(Quiver::from_edges(&["1", "2"], &[]).unwrap());
        assert_eq!(knit_preprojective(&q, Q, 3).unwrap_err(), KnitError::Disconnected);
        let a2 = shared(Family::LinearA(2));
        assert_eq!(knit_preprojective(&a2, Q, 0).unwrap_err(), KnitError::ZeroBudget);
    }
}
