//! Representations of a quiver over an exact field and the linear algebra
//! of their morphism spaces.
//!
//! Conventions: a representation assigns `M(x)` to each vertex and a matrix
//! of shape `dim M(y) × dim M(x)` to each arrow `x → y`. Paths compose left
//! to right, so `P_x(y)` has the paths `x ⇝ y` as basis and
//! `P_x(β: y → z)` sends `p` to `pβ`. Dually `I_x(y)` is spanned by the
//! duals of the paths `y ⇝ x`.

mod endo;
mod hom;
mod json;
mod morphism;
mod radical;

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::exactlin::{Field, LinAlgError, Mat, Scalar};
use crate::quiver::{DimVector, Quiver, QuiverError, Walk};

pub use endo::{end_report, fitting_split, is_isomorphic, rad_end_basis, EndReport, FittingOutcome, ISO_TRIALS};
pub(crate) use hom::reduce_span;
pub use hom::{ext1_dim, hom_basis, hom_dim, is_orthogonal, solve_in_span, HomBasis};
pub use json::{MorphismJson, RepJson};
pub use morphism::{combine, Morphism};
pub use radical::{irr_dim, rad_power_dims, RadTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("representations live on different quivers")]
    QuiverMismatch,
    #[error("representations live over different fields")]
    FieldMismatch,
    #[error("malformed representation: {0}")]
    Malformed(String),
    #[error("matrix family does not commute with the arrow maps")]
    NotAMorphism,
    #[error("subspace family is not invariant under the arrow maps")]
    NotInvariant,
    #[error("radical of an endomorphism algebra needs characteristic 0 (field is {0})")]
    RadicalNeedsCharZero(Field),
    #[error("string walk visits vertex {0:?} twice")]
    RepeatedVertex(String),
    #[error("window element {0} is not in the window")]
    NotInWindow(usize),
    #[error("invalid representation JSON: {0}")]
    Json(String),
}

/// A finite-dimensional representation.
#[derive(Clone, Debug)]
pub struct Rep {
    quiver: Arc<Quiver>,
    field: Field,
    dims: DimVector,
    mats: Vec<Mat>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        same_quiver(&self.quiver, &other.quiver)
            && self.field == other.field
            && self.dims == other.dims
            && self.mats == other.mats
    }
}

impl Eq for Rep {}

pub(crate) fn same_quiver(a: &Arc<Quiver>, b: &Arc<Quiver>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Rep {
    pub fn new(quiver: Arc<Quiver>, field: Field, dims: DimVector, mats: Vec<Mat>) -> Result<Rep, RepError> {
        if dims.len() != quiver.vertex_count() {
            return Err(QuiverError::IndexMismatch {
                expected: quiver.vertex_count(),
                got: dims.len(),
            }
            .into());
        }
        if mats.len() != quiver.arrows().len() {
            return Err(RepError::Malformed(format!(
                "{} matrices for {} arrows",
                mats.len(),
                quiver.arrows().len()
            )));
        }
        for (m, a) in mats.iter().zip(quiver.arrows()) {
            if m.field() != field {
                return Err(RepError::FieldMismatch);
            }
            if m.shape() != (dims[a.tgt], dims[a.src]) {
                return Err(RepError::Malformed(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.id,
                    dims[a.tgt],
                    dims[a.src],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Rep {
            quiver,
            field,
            dims,
            mats,
        })
    }

    pub fn zero(quiver: Arc<Quiver>, field: Field) -> Rep {
        let n = quiver.vertex_count();
        Rep::with_zero_maps(quiver, field, DimVector(vec![0; n]))
    }

    fn with_zero_maps(quiver: Arc<Quiver>, field: Field, dims: DimVector) -> Rep {
        let mats = quiver
            .arrows()
            .iter()
            .map(|a| Mat::zeros(field, dims[a.tgt], dims[a.src]))
            .collect();
        Rep {
            quiver,
            field,
            dims,
            mats,
        }
    }

    pub fn simple(quiver: Arc<Quiver>, field: Field, x: usize) -> Rep {
        let mut dims = vec![0; quiver.vertex_count()];
        dims[x] = 1;
        Rep::with_zero_maps(quiver, field, DimVector(dims))
    }

    /// Indecomposable projective `P_x`.
    pub fn projective(quiver: Arc<Quiver>, field: Field, x: usize) -> Result<Rep, RepError> {
        quiver.require_acyclic()?;
        let n = quiver.vertex_count();
        let dims = DimVector((0..n).map(|y| quiver.paths(x, y).len()).collect());
        let index: Vec<HashMap<&[usize], usize>> = (0..n)
            .map(|y| {
                quiver
                    .paths(x, y)
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (p.as_slice(), i))
                    .collect()
            })
            .collect();
        let mut mats = Vec::with_capacity(quiver.arrows().len());
        for (b, arr) in quiver.arrows().iter().enumerate() {
            let mut m = Mat::zeros(field, dims[arr.tgt], dims[arr.src]);
            for (col, p) in quiver.paths(x, arr.src).iter().enumerate() {
                let mut pb = p.clone();
                pb.push(b);
                let row = index[arr.tgt][pb.as_slice()];
                m.set(row, col, field.one());
            }
            mats.push(m);
        }
        Rep::new(quiver, field, dims, mats)
    }

    /// Indecomposable injective `I_x`.
    pub fn injective(quiver: Arc<Quiver>, field: Field, x: usize) -> Result<Rep, RepError> {
        quiver.require_acyclic()?;
        let n = quiver.vertex_count();
        let dims = DimVector((0..n).map(|y| quiver.paths(y, x).len()).collect());
        let mut mats = Vec::with_capacity(quiver.arrows().len());
        for (b, arr) in quiver.arrows().iter().enumerate() {
            let mut m = Mat::zeros(field, dims[arr.tgt], dims[arr.src]);
            let targets: HashMap<&[usize], usize> = quiver
                .paths(arr.tgt, x)
                .iter()
                .enumerate()
                .map(|(i, p)| (p.as_slice(), i))
                .collect();
            for (col, p) in quiver.paths(arr.src, x).iter().enumerate() {
                if p.first() == Some(&b) {
                    m.set(targets[&p[1..]], col, field.one());
                }
            }
            mats.push(m);
        }
        Rep::new(quiver, field, dims, mats)
    }

    /// The string representation of a walk that visits each vertex at most once.
    pub fn string(quiver: Arc<Quiver>, field: Field, walk: &Walk) -> Result<Rep, RepError> {
        let verts = walk.vertices(&quiver);
        let mut dims = vec![0; quiver.vertex_count()];
        for &v in &verts {
            if dims[v] == 1 {
                return Err(RepError::RepeatedVertex(quiver.vertex_id(v).to_string()));
            }
            dims[v] = 1;
        }
        let mut rep = Rep::with_zero_maps(quiver, field, DimVector(dims));
        for &(a, _) in walk.steps() {
            rep.mats[a] = Mat::identity(field, 1);
        }
        Ok(rep)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn dim_at(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.len()
    }

    pub fn arrow_map(&self, a: usize) -> &Mat {
        &self.mats[a]
    }

    pub fn arrow_maps(&self) -> &[Mat] {
        &self.mats
    }

    /// Matrix of a path starting at `x`.
    pub fn path_map(&self, x: usize, path: &[usize]) -> Mat {
        let mut acc = Mat::identity(self.field, self.dims[x]);
        for &a in path {
            acc = self.mats[a].matmul(&acc).expect("path is composable");
        }
        acc
    }

    pub(crate) fn check_compatible(&self, other: &Rep) -> Result<(), RepError> {
        if !same_quiver(&self.quiver, &other.quiver) {
            return Err(RepError::QuiverMismatch);
        }
        if self.field != other.field {
            return Err(RepError::FieldMismatch);
        }
        Ok(())
    }

    /// Re-homes the representation on an equal quiver value.
    pub fn with_quiver(mut self, quiver: Arc<Quiver>) -> Result<Rep, RepError> {
        if *quiver != *self.quiver {
            return Err(RepError::QuiverMismatch);
        }
        self.quiver = quiver;
        Ok(self)
    }

    /// The dual representation on the opposite quiver.
    pub fn dual_on(&self, opposite: Arc<Quiver>) -> Rep {
        Rep {
            quiver: opposite,
            field: self.field,
            dims: self.dims.clone(),
            mats: self.mats.iter().map(Mat::transpose).collect(),
        }
    }

    /// Direct sum with the canonical inclusions and projections.
    pub fn direct_sum(parts: &[&Rep]) -> Result<(Rep, Vec<Morphism>, Vec<Morphism>), RepError> {
        let first = parts
            .first()
            .ok_or_else(|| RepError::Malformed("empty direct sum".into()))?;
        for p in parts {
            first.check_compatible(p)?;
        }
        let field = first.field;
        let quiver = first.quiver.clone();
        let n = quiver.vertex_count();
        let dims = DimVector((0..n).map(|x| parts.iter().map(|p| p.dims[x]).sum()).collect());
        let mut mats = Vec::new();
        for (a, arr) in quiver.arrows().iter().enumerate() {
            let mut m = Mat::zeros(field, dims[arr.tgt], dims[arr.src]);
            let (mut r0, mut c0) = (0, 0);
            for p in parts {
                m.set_block(r0, c0, &p.mats[a]);
                r0 += p.dims[arr.tgt];
                c0 += p.dims[arr.src];
            }
            mats.push(m);
        }
        let sum = Rep::new(quiver, field, dims.clone(), mats)?;
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        let mut offsets = vec![0usize; n];
        for p in parts {
            let mut i_comps = Vec::new();
            let mut p_comps = Vec::new();
            for x in 0..n {
                let mut i = Mat::zeros(field, dims[x], p.dims[x]);
                i.set_block(offsets[x], 0, &Mat::identity(field, p.dims[x]));
                p_comps.push(i.transpose());
                i_comps.push(i);
                offsets[x] += p.dims[x];
            }
            incl.push(Morphism::new(i_comps));
            proj.push(Morphism::new(p_comps));
        }
        Ok((sum, incl, proj))
    }

    /// Subrepresentation spanned by the columns of `bases[x]`, with its inclusion.
    pub fn subrep(&self, bases: &[Mat]) -> Result<(Rep, Morphism), RepError> {
        let n = self.vertex_count();
        let dims = DimVector(bases.iter().map(Mat::cols).collect());
        let mut mats = Vec::new();
        for (a, arr) in self.quiver.arrows().iter().enumerate() {
            let image = self.mats[a].matmul(&bases[arr.src])?;
            let m = bases[arr.tgt].solve(&image)?.ok_or(RepError::NotInvariant)?;
            mats.push(m);
        }
        debug_assert_eq!(bases.len(), n);
        let sub = Rep::new(self.quiver.clone(), self.field, dims, mats)?;
        Ok((sub, Morphism::new(bases.to_vec())))
    }

    /// Quotient by the invariant subspaces spanned by `bases[x]`, with the projection.
    pub fn quotient(&self, bases: &[Mat]) -> Result<(Rep, Morphism), RepError> {
        let proj: Vec<Mat> = bases.iter().map(Mat::left_kernel).collect();
        let dims = DimVector(proj.iter().map(Mat::rows).collect());
        let mut mats = Vec::new();
        for (a, arr) in self.quiver.arrows().iter().enumerate() {
            // C · Q_x = Q_y · M(α)
            let rhs = proj[arr.tgt].matmul(&self.mats[a])?;
            let ct = proj[arr.src]
                .transpose()
                .solve(&rhs.transpose())?
                .ok_or(RepError::NotInvariant)?;
            mats.push(ct.transpose());
        }
        let q = Rep::new(self.quiver.clone(), self.field, dims, mats)?;
        Ok((q, Morphism::new(proj)))
    }

    /// Kernel of `f: self → target` as a subrepresentation of `self`.
    pub fn kernel_of(&self, f: &Morphism) -> Result<(Rep, Morphism), RepError> {
        let bases: Vec<Mat> = f.comps().iter().map(Mat::kernel_mat).collect();
        self.subrep(&bases)
    }

    /// Cokernel of `f: source → self` as a quotient of `self`.
    pub fn cokernel_of(&self, f: &Morphism) -> Result<(Rep, Morphism), RepError> {
        let bases: Vec<Mat> = f.comps().iter().map(Mat::column_space).collect();
        self.quotient(&bases)
    }

    /// Image of `f: source → self` as a subrepresentation of `self`.
    pub fn image_of(&self, f: &Morphism) -> Result<(Rep, Morphism), RepError> {
        let bases: Vec<Mat> = f.comps().iter().map(Mat::column_space).collect();
        self.subrep(&bases)
    }

    /// The morphism `P_x → self` sending the trivial path at `x` to `v ∈ M(x)`.
    pub fn map_from_projective(&self, x: usize, v: &[Scalar]) -> Morphism {
        let q = &self.quiver;
        let col = Mat::from_columns(self.field, v.len(), &[v.to_vec()]);
        let comps = (0..q.vertex_count())
            .map(|z| {
                let cols: Vec<Vec<Scalar>> = q
                    .paths(x, z)
                    .iter()
                    .map(|p| self.path_map(x, p).matmul(&col).expect("path image").to_vector())
                    .collect();
                Mat::from_columns(self.field, self.dims[z], &cols)
            })
            .collect();
        Morphism::new(comps)
    }

    /// `rad M(y)`: the sum of the images of all arrows into `y`.
    pub fn radical_space(&self, y: usize) -> Mat {
        let mut acc = Mat::zeros(self.field, self.dims[y], 0);
        for a in self.quiver.in_arrows(y) {
            acc = acc.hstack(&self.mats[a]).expect("same row count");
        }
        acc.column_space()
    }

    /// Top dimensions `dim M(x) − dim rad M(x)`.
    pub fn top_dims(&self) -> DimVector {
        DimVector(
            (0..self.vertex_count())
                .map(|x| self.dims[x] - self.radical_space(x).cols())
                .collect(),
        )
    }
}

/// Free-function spellings of the constructors.
pub fn projective(quiver: &Arc<Quiver>, field: Field, x: &str) -> Result<Rep, RepError> {
    Rep::projective(quiver.clone(), field, quiver.vertex_index(x)?)
}

pub fn injective(quiver: &Arc<Quiver>, field: Field, x: &str) -> Result<Rep, RepError> {
    Rep::injective(quiver.clone(), field, quiver.vertex_index(x)?)
}

pub fn string_rep(quiver: &Arc<Quiver>, field: Field, walk: &Walk) -> Result<Rep, RepError> {
    Rep::string(quiver.clone(), field, walk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Family;

    const Q: Field = Field::Rational;

    fn a2() -> Arc<Quiver> {
        Arc::new(Family::LinearA(2).build().unwrap())
    }

    #[test]
    fn projective_and_injective_dims() {
        let q = a2();
        assert_eq!(projective(&q, Q, "1").unwrap().dims().0, vec![1, 1]);
        assert_eq!(projective(&q, Q, "2").unwrap().dims().0, vec![0, 1]);
        assert_eq!(injective(&q, Q, "1").unwrap().dims().0, vec![1, 0]);
        assert_eq!(injective(&q, Q, "2").unwrap().dims().0, vec![1, 1]);
        assert_eq!(projective(&q, Q, "1").unwrap(), injective(&q, Q, "2").unwrap());
        let iso = Arc::new(Quiver::from_edges(&["x"], &[]).unwrap());
        let s = Rep::simple(iso.clone(), Q, 0);
        assert_eq!(projective(&iso, Q, "x").unwrap(), s);
        assert_eq!(injective(&iso, Q, "x").unwrap(), s);
        assert!(projective(&q, Q, "9").is_err());
    }

    #[test]
    fn projective_maps_follow_paths() {
        let q = Arc::new(Family::Kronecker.build().unwrap());
        let p1 = projective(&q, Q, "1").unwrap();
        assert_eq!(p1.dims().0, vec![1, 2]);
        // a sends e1 to the path "a", b to "b"
        assert_eq!(p1.arrow_map(0), &Mat::from_i64(Q, &[&[1], &[0]]));
        assert_eq!(p1.arrow_map(1), &Mat::from_i64(Q, &[&[0], &[1]]));
        let i2 = injective(&q, Q, "2").unwrap();
        assert_eq!(i2.dims().0, vec![2, 1]);
        assert_eq!(i2.arrow_map(0), &Mat::from_i64(Q, &[&[1, 0]]));
    }

    #[test]
    fn malformed_reps_rejected() {
        let q = a2();
        let bad = Rep::new(q.clone(), Q, DimVector(vec![1, 1]), vec![Mat::zeros(Q, 2, 1)]);
        assert!(matches!(bad, Err(RepError::Malformed(_))));
        let bad = Rep::new(q, Q, DimVector(vec![1, 1]), vec![Mat::zeros(Field::Prime(3), 1, 1)]);
        assert!(matches!(bad, Err(RepError::FieldMismatch)));
    }

    #[test]
    fn string_rep_a3() {
        let q = Arc::new(Family::LinearA(3).build().unwrap());
        let w = Walk::parse(&q, "1:a1").unwrap();
        let m = string_rep(&q, Q, &w).unwrap();
        assert_eq!(m.dims().0, vec![1, 1, 0]);
        assert_eq!(m.arrow_map(0), &Mat::identity(Q, 1));
        assert_eq!(m.arrow_map(1).shape(), (0, 1));
    }

    #[test]
    fn kernel_cokernel_of_inclusion() {
        let q = a2();
        let p2 = projective(&q, Q, "2").unwrap();
        let p1 = projective(&q, Q, "1").unwrap();
        // rad P1 = P2 embeds via the arrow
        let f = Morphism::new(vec![Mat::zeros(Q, 1, 0), Mat::identity(Q, 1)]);
        assert!(f.commutes(&p2, &p1));
        let (coker, pi) = p1.cokernel_of(&f).unwrap();
        assert_eq!(coker.dims().0, vec![1, 0]);
        assert!(pi.commutes(&p1, &coker));
        let (ker, _) = p2.kernel_of(&f).unwrap();
        assert!(ker.is_zero());
        assert_eq!(p1.top_dims().0, vec![1, 0]);
    }

    #[test]
    fn direct_sum_maps() {
        let q = a2();
        let p1 = projective(&q, Q, "1").unwrap();
        let s2 = Rep::simple(q.clone(), Q, 1);
        let (sum, incl, proj) = Rep::direct_sum(&[&p1, &s2]).unwrap();
        assert_eq!(sum.dims().0, vec![1, 2]);
        for (i, p) in incl.iter().zip(&proj) {
            assert!(i.then(p).is_iso());
        }
        assert!(incl[0].then(&proj[1]).is_zero());
    }
}
