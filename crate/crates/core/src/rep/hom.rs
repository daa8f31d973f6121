use crate::exactlin::{independent_subset, Mat, Scalar};

use super::{combine, Morphism, Rep, RepError};

/// A basis of `Hom(source, target)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source: Rep,
    pub target: Rep,
    pub basis: Vec<Morphism>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// `Σ c_i b_i`.
    pub fn element(&self, coeffs: &[Scalar]) -> Morphism {
        if self.basis.is_empty() {
            return Morphism::zero(self.source.field(), &self.source, &self.target);
        }
        combine(&self.basis, coeffs)
    }

    /// Coordinates of `f` in this basis, if `f` lies in the span.
    pub fn coords(&self, f: &Morphism) -> Option<Vec<Scalar>> {
        solve_in_span(&self.basis, f)
    }
}

/// Coefficients `c` with `Σ c_i f_i = target`, if any. The morphisms must share a shape.
pub fn solve_in_span(spanning: &[Morphism], target: &Morphism) -> Option<Vec<Scalar>> {
    if spanning.is_empty() {
        return target.is_zero().then(Vec::new);
    }
    let field = target
        .comps()
        .first()
        .map_or(crate::exactlin::Field::Rational, Mat::field);
    let t = target.flatten();
    if t.is_empty() {
        return Some(vec![field.zero(); spanning.len()]);
    }
    let cols: Vec<Vec<Scalar>> = spanning.iter().map(Morphism::flatten).collect();
    let a = Mat::from_columns(field, t.len(), &cols);
    let b = Mat::from_columns(field, t.len(), &[t]);
    a.solve(&b).ok().flatten().map(|x| x.to_vector())
}

/// Offsets of the per-vertex blocks in the flattened unknown vector.
fn offsets(m: &Rep, n: &Rep) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.vertex_count() + 1);
    let mut acc = 0;
    out.push(0);
    for x in 0..m.vertex_count() {
        acc += n.dim_at(x) * m.dim_at(x);
        out.push(acc);
    }
    out
}

/// Solves `φ_y · M(α) = N(α) · φ_x` for all arrows `α: x → y`.
pub fn hom_basis(m: &Rep, n: &Rep) -> Result<HomBasis, RepError> {
    m.check_compatible(n)?;
    let field = m.field();
    let off = offsets(m, n);
    let unknowns = off[m.vertex_count()];
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, arr) in m.quiver().arrows().iter().enumerate() {
        let (x, y) = (arr.src, arr.tgt);
        let (mx, my, nx, ny) = (m.dim_at(x), m.dim_at(y), n.dim_at(x), n.dim_at(y));
        let ma = m.arrow_map(a);
        let na = n.arrow_map(a);
        // equation (i, j) with i < ny, j < mx
        for i in 0..ny {
            for j in 0..mx {
                let mut row = vec![field.zero(); unknowns];
                for k in 0..my {
                    let c = ma.get(k, j);
                    if !c.is_zero() {
                        let idx = off[y] + i * my + k;
                        row[idx] = &row[idx] + c;
                    }
                }
                for k in 0..nx {
                    let c = na.get(i, k);
                    if !c.is_zero() {
                        let idx = off[x] + k * mx + j;
                        row[idx] = &row[idx] - c;
                    }
                }
                if row.iter().any(|s| !s.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Mat::from_rows(field, unknowns, rows)?;
    let basis = system
        .kernel_basis()
        .into_iter()
        .map(|v| unflatten(m, n, &off, &v))
        .collect::<Vec<_>>();
    debug_assert!(basis.iter().all(|f| f.commutes(m, n)));
    Ok(HomBasis {
        source: m.clone(),
        target: n.clone(),
        basis,
    })
}

fn unflatten(m: &Rep, n: &Rep, off: &[usize], v: &[Scalar]) -> Morphism {
    let comps = (0..m.vertex_count())
        .map(|x| {
            let data = v[off[x]..off[x + 1]].to_vec();
            Mat::new(m.field(), n.dim_at(x), m.dim_at(x), data).expect("block shape")
        })
        .collect();
    Morphism::new(comps)
}

pub fn hom_dim(m: &Rep, n: &Rep) -> Result<usize, RepError> {
    Ok(hom_basis(m, n)?.dim())
}

pub fn is_orthogonal(m: &Rep, n: &Rep) -> Result<bool, RepError> {
    Ok(hom_dim(m, n)? == 0 && hom_dim(n, m)? == 0)
}

/// `dim Hom(M, N) − ⟨dim M, dim N⟩`, valid because path algebras are hereditary.
pub fn ext1_dim(m: &Rep, n: &Rep) -> Result<usize, RepError> {
    m.quiver().require_acyclic()?;
    let hom = hom_dim(m, n)? as i64;
    let euler = m.quiver().euler_form(&m.dims().as_i64(), &n.dims().as_i64())?;
    let ext = hom - euler;
    debug_assert!(ext >= 0, "negative ext dimension");
    Ok(ext.max(0) as usize)
}

/// Drops linearly dependent morphisms from a spanning list.
pub(crate) fn reduce_span(spanning: Vec<Morphism>) -> Vec<Morphism> {
    let Some(first) = spanning.first() else {
        return spanning;
    };
    let field = first
        .comps()
        .first()
        .map_or(crate::exactlin::Field::Rational, Mat::field);
    let vectors: Vec<Vec<Scalar>> = spanning.iter().map(Morphism::flatten).collect();
    let len = vectors[0].len();
    if len == 0 {
        return Vec::new();
    }
    let keep = independent_subset(field, len, &vectors);
    let mut spanning: Vec<Option<Morphism>> = spanning.into_iter().map(Some).collect();
    keep.into_iter().map(|i| spanning[i].take().unwrap()).collect()
}
