//! Finite quivers, their paths, the Euler form and the Coxeter transformation.
//!
//! Paths are sequences of arrow indices read left to right: the path
//! `[a, b]` first traverses `a` and then `b`.

mod dynkin;
mod family;
mod walk;

use std::collections::{BTreeMap, VecDeque};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{Field, Mat};

pub use dynkin::DynkinType;
pub use family::Family;
pub use walk::Walk;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow id {0:?}")]
    DuplicateArrow(String),
    #[error("arrow {arrow:?} has dangling endpoint {vertex:?}")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("quiver has an oriented cycle through {0:?}")]
    Cyclic(Vec<String>),
    #[error("dimension vector has {got} entries, quiver has {expected} vertices")]
    IndexMismatch { expected: usize, got: usize },
    #[error("invalid family parameters: {0}")]
    BadFamily(String),
    #[error("invalid walk: {0}")]
    BadWalk(String),
    #[error("quiver is not of finite Dynkin type: {0}")]
    NotDynkin(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite quiver with opaque string ids. Vertex and arrow indices follow
/// input order; a topological order is computed once when the quiver is
/// acyclic.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vindex: BTreeMap<String, usize>,
    aindex: BTreeMap<String, usize>,
    topo: Option<Vec<usize>>,
    paths: OnceLock<Vec<Vec<Vec<Vec<usize>>>>>,
    opposite: OnceLock<Arc<Quiver>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

/// Per-vertex nonnegative integers indexed like the quiver's vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }

    /// Converts back from a signed vector, `None` if any entry is negative.
    pub fn from_i64(v: &[i64]) -> Option<DimVector> {
        v.iter()
            .map(|&x| usize::try_from(x).ok())
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub acyclic: bool,
    pub connected: bool,
    pub locally_finite: bool,
    pub path_finite: bool,
    pub cycle: Option<Vec<String>>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(arrow id, source, target)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Quiver, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vindex = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut aindex = BTreeMap::new();
        let mut out = Vec::new();
        for (i, (id, s, t)) in arrows.into_iter().enumerate() {
            let look = |v: &String| {
                vindex.get(v).copied().ok_or_else(|| QuiverError::DanglingEndpoint {
                    arrow: id.clone(),
                    vertex: v.clone(),
                })
            };
            let src = look(&s)?;
            let tgt = look(&t)?;
            if aindex.insert(id.clone(), i).is_some() {
                return Err(QuiverError::DuplicateArrow(id));
            }
            out.push(Arrow { id, src, tgt });
        }
        let mut q = Quiver {
            vertices,
            arrows: out,
            vindex,
            aindex,
            topo: None,
            paths: OnceLock::new(),
            opposite: OnceLock::new(),
        };
        q.topo = q.compute_topo();
        Ok(q)
    }

    /// Shorthand for tests and families: arrows as `(id, src, tgt)` string slices.
    pub fn from_edges(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver, QuiverError> {
        Quiver::new(
            vertices.iter().map(|s| s.to_string()),
            arrows
                .iter()
                .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_id(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize, QuiverError> {
        self.vindex
            .get(id)
            .copied()
            .ok_or_else(|| QuiverError::UnknownVertex(id.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize, QuiverError> {
        self.aindex
            .get(id)
            .copied()
            .ok_or_else(|| QuiverError::UnknownArrow(id.to_string()))
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].src == v)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].tgt == v)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topo.is_some()
    }

    /// Topological order of the vertices (sources first).
    pub fn topo_order(&self) -> Result<&[usize], QuiverError> {
        self.topo
            .as_deref()
            .ok_or_else(|| QuiverError::Cyclic(self.find_cycle().unwrap_or_default()))
    }

    pub fn require_acyclic(&self) -> Result<(), QuiverError> {
        self.topo_order().map(|_| ())
    }

    fn compute_topo(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.tgt] += 1;
        }
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for a in &self.arrows {
                if a.src == v {
                    indeg[a.tgt] -= 1;
                    if indeg[a.tgt] == 0 {
                        ready.insert(a.tgt);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    fn find_cycle(&self) -> Option<Vec<String>> {
        // Colour-marking DFS; returns the vertices along the first back edge found.
        let n = self.vertices.len();
        let mut state = vec![0u8; n];
        let mut stack: Vec<usize> = Vec::new();
        fn dfs(q: &Quiver, v: usize, state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
            state[v] = 1;
            stack.push(v);
            for a in q.out_arrows(v) {
                let w = q.arrows[a].tgt;
                if state[w] == 1 {
                    let pos = stack.iter().position(|&x| x == w).unwrap();
                    return Some(stack[pos..].to_vec());
                }
                if state[w] == 0 {
                    if let Some(c) = dfs(q, w, state, stack) {
                        return Some(c);
                    }
                }
            }
            stack.pop();
            state[v] = 2;
            None
        }
        for v in 0..n {
            if state[v] == 0 {
                if let Some(c) = dfs(self, v, &mut state, &mut stack) {
                    return Some(c.into_iter().map(|i| self.vertices[i].clone()).collect());
                }
            }
        }
        None
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for a in &self.arrows {
                for (x, y) in [(a.src, a.tgt), (a.tgt, a.src)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn validate(&self) -> ValidationReport {
        let acyclic = self.is_acyclic();
        ValidationReport {
            acyclic,
            connected: self.is_connected(),
            locally_finite: true,
            path_finite: acyclic,
            cycle: if acyclic { None } else { self.find_cycle() },
        }
    }

    /// The opposite quiver: same ids, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver::new(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| (a.id.clone(), self.vertices[a.tgt].clone(), self.vertices[a.src].clone())),
        )
        .expect("opposite of a valid quiver is valid")
    }

    /// The opposite quiver, built once and shared.
    pub fn opposite_shared(&self) -> Arc<Quiver> {
        self.opposite.get_or_init(|| Arc::new(self.opposite())).clone()
    }

    fn all_paths(&self) -> &Vec<Vec<Vec<Vec<usize>>>> {
        self.paths.get_or_init(|| {
            let n = self.vertices.len();
            let topo = self.topo.as_ref().expect("path tables need an acyclic quiver");
            // paths[x][y], built in reverse topological order of x.
            let mut table: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new(); n]; n];
            for &x in topo.iter().rev() {
                let mut row: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
                row[x].push(Vec::new());
                for a in self.out_arrows(x) {
                    let t = self.arrows[a].tgt;
                    for y in 0..n {
                        for p in &table[t][y] {
                            let mut path = Vec::with_capacity(p.len() + 1);
                            path.push(a);
                            path.extend_from_slice(p);
                            row[y].push(path);
                        }
                    }
                }
                for paths in row.iter_mut() {
                    paths.sort_by(|p, q| self.path_key(p).cmp(&self.path_key(q)));
                }
                table[x] = row;
            }
            table
        })
    }

    fn path_key<'a>(&'a self, p: &[usize]) -> Vec<&'a str> {
        p.iter().map(|&a| self.arrows[a].id.as_str()).collect()
    }

    /// All paths from `x` to `y` by index, in lexicographic order of arrow ids.
    pub fn paths(&self, x: usize, y: usize) -> &[Vec<usize>] {
        &self.all_paths()[x][y]
    }

    /// All directed paths `x ⇝ y` as arrow-id sequences, the trivial path
    /// included when `x == y`.
    pub fn enumerate_paths(&self, x: &str, y: &str) -> Result<Vec<Vec<String>>, QuiverError> {
        self.require_acyclic()?;
        let (xi, yi) = (self.vertex_index(x)?, self.vertex_index(y)?);
        Ok(self
            .paths(xi, yi)
            .iter()
            .map(|p| p.iter().map(|&a| self.arrows[a].id.clone()).collect())
            .collect())
    }

    /// Target vertex of a path starting at `x`.
    pub fn path_end(&self, x: usize, p: &[usize]) -> usize {
        p.last().map_or(x, |&a| self.arrows[a].tgt)
    }

    fn check_len(&self, len: usize) -> Result<(), QuiverError> {
        if len != self.vertices.len() {
            return Err(QuiverError::IndexMismatch {
                expected: self.vertices.len(),
                got: len,
            });
        }
        Ok(())
    }

    /// The Euler form `Σ_x d_x e_x − Σ_{α: x→y} d_x e_y`.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> Result<i64, QuiverError> {
        self.check_len(d.len())?;
        self.check_len(e.len())?;
        let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        let arrows: i64 = self.arrows.iter().map(|a| d[a.src] * e[a.tgt]).sum();
        Ok(diag - arrows)
    }

    /// Gram matrix of the Euler form: `C[x][y] = δ_xy − #(arrows x→y)`.
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertices.len();
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 1;
        }
        for a in &self.arrows {
            c[a.src][a.tgt] -= 1;
        }
        c
    }

    /// Coxeter matrix `Φ = −C⁻¹Cᵀ` acting on column dimension vectors, so
    /// that `dim τM = Φ · dim M` for non-projective indecomposables.
    pub fn coxeter_matrix(&self) -> Result<Vec<Vec<i64>>, QuiverError> {
        self.require_acyclic()?;
        let n = self.vertices.len();
        let q = Field::Rational;
        let c = self.euler_matrix();
        let rows: Vec<&[i64]> = c.iter().map(|r| r.as_slice()).collect();
        let cm = Mat::from_i64(q, &rows);
        let phi = cm
            .solve(&cm.transpose())
            .expect("square")
            .expect("Euler matrix is unitriangular up to reordering");
        let mut out = vec![vec![0i64; n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let r = phi.get(i, j).as_rational().unwrap();
                assert!(r.is_integer());
                *x = -i64::try_from(r.to_integer()).expect("small entries");
            }
        }
        Ok(out)
    }

    pub fn coxeter_transform(&self, d: &[i64]) -> Result<Vec<i64>, QuiverError> {
        self.check_len(d.len())?;
        let phi = self.coxeter_matrix()?;
        Ok(apply(&phi, d))
    }

    /// `Φ⁻¹ = −C⁻ᵀC`, the dimension shadow of `τ⁻`.
    pub fn inverse_coxeter_matrix(&self) -> Result<Vec<Vec<i64>>, QuiverError> {
        self.require_acyclic()?;
        let n = self.vertices.len();
        let c = self.euler_matrix();
        let rows: Vec<&[i64]> = c.iter().map(|r| r.as_slice()).collect();
        let cm = Mat::from_i64(Field::Rational, &rows);
        let inv = cm.transpose().solve(&cm).expect("square").expect("invertible");
        let mut out = vec![vec![0i64; n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let r = inv.get(i, j).as_rational().unwrap();
                *x = -i64::try_from(r.to_integer()).expect("small entries");
            }
        }
        Ok(out)
    }

    pub fn inverse_coxeter_transform(&self, d: &[i64]) -> Result<Vec<i64>, QuiverError> {
        self.check_len(d.len())?;
        Ok(apply(&self.inverse_coxeter_matrix()?, d))
    }

    /// Classifies the underlying graph as a finite Dynkin diagram.
    pub fn dynkin_type(&self) -> Result<DynkinType, QuiverError> {
        dynkin::classify(self)
    }

    pub fn family(family: &Family) -> Result<Quiver, QuiverError> {
        family.build()
    }

    pub fn into_shared(self) -> Arc<Quiver> {
        Arc::new(self)
    }
}

fn apply(m: &[Vec<i64>], d: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(d).map(|(a, b)| a * b).sum())
        .collect()
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v: Option<u32>,
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    id: String,
    src: String,
    tgt: String,
}

impl Serialize for Quiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuiverJson {
            v: None,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    id: a.id.clone(),
                    src: self.vertices[a.src].clone(),
                    tgt: self.vertices[a.tgt].clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Quiver, D::Error> {
        let raw = QuiverJson::deserialize(d)?;
        Quiver::new(raw.vertices, raw.arrows.into_iter().map(|a| (a.id, a.src, a.tgt)))
            .map_err(serde::de::Error::custom)
    }
}

impl Quiver {
    /// Parses either quiver JSON or the `family:<name>:<params>` shorthand.
    pub fn parse(text: &str) -> Result<Quiver, QuiverError> {
        let t = text.trim();
        if t.starts_with("family:") {
            return Family::parse(t)?.build();
        }
        serde_json::from_str(t).map_err(|e| QuiverError::BadFamily(format!("quiver JSON: {e}")))
    }
}
