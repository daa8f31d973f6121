use crate::exactlin::{Field, Mat, Scalar};

use super::{Rep, RepError};

/// A family of per-vertex matrices `φ_x : M(x) → N(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    comps: Vec<Mat>,
}

impl Morphism {
    pub fn new(comps: Vec<Mat>) -> Morphism {
        Morphism { comps }
    }

    pub fn zero(field: Field, source: &Rep, target: &Rep) -> Morphism {
        Morphism {
            comps: (0..source.vertex_count())
                .map(|x| Mat::zeros(field, target.dim_at(x), source.dim_at(x)))
                .collect(),
        }
    }

    pub fn identity(m: &Rep) -> Morphism {
        Morphism {
            comps: (0..m.vertex_count())
                .map(|x| Mat::identity(m.field(), m.dim_at(x)))
                .collect(),
        }
    }

    pub fn comps(&self) -> &[Mat] {
        &self.comps
    }

    pub fn at(&self, x: usize) -> &Mat {
        &self.comps[x]
    }

    pub fn into_comps(self) -> Vec<Mat> {
        self.comps
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Morphism {
        Morphism {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(f, g)| g.matmul(f).expect("composable morphisms"))
                .collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        other.then(self)
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b).expect("same shapes"))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        Morphism {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b).expect("same shapes"))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        Morphism {
            comps: self.comps.iter().map(|m| m.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Mat::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(Mat::is_invertible)
    }

    pub fn inverse(&self) -> Option<Morphism> {
        self.comps
            .iter()
            .map(Mat::inverse)
            .collect::<Option<Vec<_>>>()
            .map(Morphism::new)
    }

    /// Concatenated row-major entries, vertex by vertex.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.comps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn trace(&self) -> Scalar {
        let field = self.comps.first().map_or(Field::Rational, Mat::field);
        self.comps.iter().fold(field.zero(), |acc, m| &acc + &m.trace())
    }

    /// Checks `φ_y · M(α) == N(α) · φ_x` for every arrow.
    pub fn commutes(&self, source: &Rep, target: &Rep) -> bool {
        if self.comps.len() != source.vertex_count() {
            return false;
        }
        for (x, c) in self.comps.iter().enumerate() {
            if c.shape() != (target.dim_at(x), source.dim_at(x)) {
                return false;
            }
        }
        source.quiver().arrows().iter().enumerate().all(|(a, arr)| {
            let lhs = self.comps[arr.tgt].matmul(source.arrow_map(a)).unwrap();
            let rhs = target.arrow_map(a).matmul(&self.comps[arr.src]).unwrap();
            lhs == rhs
        })
    }

    pub(crate) fn check(&self, source: &Rep, target: &Rep) -> Result<(), RepError> {
        if self.commutes(source, target) {
            Ok(())
        } else {
            Err(RepError::NotAMorphism)
        }
    }

    /// Transposes every component; a morphism `M → N` becomes `DN → DM`.
    pub fn dual(&self) -> Morphism {
        Morphism {
            comps: self.comps.iter().map(Mat::transpose).collect(),
        }
    }
}

/// Linear combination `Σ c_i f_i`; `basis` must be non-empty.
pub fn combine(basis: &[Morphism], coeffs: &[Scalar]) -> Morphism {
    assert_eq!(basis.len(), coeffs.len());
    let mut acc = basis[0].scale(&coeffs[0]);
    for (f, c) in basis.iter().zip(coeffs).skip(1) {
        if !c.is_zero() {
            acc = acc.add(&f.scale(c));
        }
    }
    acc
}
