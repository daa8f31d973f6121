//! The Auslander-Reiten translate on concrete representations, computed
//! through minimal projective presentations and the Nakayama functor, and
//! realized almost split sequences.

mod sequence;

use std::collections::HashMap;

use thiserror::Error;

use crate::exactlin::{Mat, Scalar};
use crate::quiver::{DimVector, QuiverError};
use crate::rep::{Morphism, Rep, RepError};

pub use sequence::{almost_split_sequence, verify_almost_split, AlmostSplitReport, AlmostSplitSeq, AlmostSplitSeqJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("the zero representation has no presentation")]
    ZeroModule,
    #[error("τ undefined: the input is projective")]
    TauUndefined,
    #[error("τ⁻ undefined: the input is injective")]
    TauInverseUndefined,
    #[error("translate has dimension vector {got:?}, the Coxeter transformation predicts {expected:?}")]
    CoxeterMismatch { expected: Vec<i64>, got: Vec<usize> },
    #[error("Ext¹(Z, τZ) has dimension {0}; only the one-dimensional case is realized")]
    Ext1NotOne(usize),
    #[error("automorphism field of Z has dimension {0}; only trivial automorphism fields are realized")]
    NontrivialAutoField(usize),
    #[error("internal error: constructed extension splits")]
    SplitConstructed,
}

impl From<QuiverError> for ArError {
    fn from(e: QuiverError) -> Self {
        ArError::Rep(e.into())
    }
}

/// A generator of a projective summand: the vertex `x` of `P_x` and the
/// image of the trivial path `e_x`, a vector in the target at `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub vertex: usize,
    pub image: Vec<Scalar>,
}

/// Minimal projective presentation `0 → P1 → P0 → M → 0`.
#[derive(Clone, Debug)]
pub struct PresKit {
    pub module: Rep,
    pub p0: Rep,
    pub p1: Rep,
    /// One entry per summand `P_x` of `P0`; images in `M(x)`.
    pub p0_gens: Vec<Generator>,
    /// One entry per summand `P_y` of `P1`; images in `P0(y)`.
    pub p1_gens: Vec<Generator>,
    pub map: Morphism,
    pub cover: Morphism,
}

impl PresKit {
    pub fn p0_tops(&self) -> Vec<usize> {
        self.p0_gens.iter().map(|g| g.vertex).collect()
    }

    pub fn p1_tops(&self) -> Vec<usize> {
        self.p1_gens.iter().map(|g| g.vertex).collect()
    }

    /// Multiplicity of each `P_x` in `P0` and `P1`.
    pub fn multiplicities(&self) -> (DimVector, DimVector) {
        let n = self.module.vertex_count();
        let count = |gens: &[Generator]| {
            let mut v = vec![0; n];
            for g in gens {
                v[g.vertex] += 1;
            }
            DimVector(v)
        };
        (count(&self.p0_gens), count(&self.p1_gens))
    }

    pub fn is_projective(&self) -> bool {
        self.p1_gens.is_empty()
    }
}

/// Top generators: standard vectors completing `rad M(x)` at every vertex.
fn top_generators(m: &Rep) -> Vec<Generator> {
    let field = m.field();
    let mut gens = Vec::new();
    for x in 0..m.vertex_count() {
        let rad = m.radical_space(x);
        for k in rad.complement_indices() {
            let mut v = vec![field.zero(); m.dim_at(x)];
            v[k] = field.one();
            gens.push(Generator { vertex: x, image: v });
        }
    }
    gens
}

/// The map `⊕ P_{x_i} → M` sending each trivial path to its generator image.
fn projective_cover_map(target: &Rep, gens: &[Generator]) -> Result<(Rep, Morphism), RepError> {
    let q = target.quiver();
    let field = target.field();
    let parts: Vec<Rep> = gens
        .iter()
        .map(|g| Rep::projective(q.clone(), field, g.vertex))
        .collect::<Result<_, _>>()?;
    let sum = if parts.is_empty() {
        Rep::zero(q.clone(), field)
    } else {
        let refs: Vec<&Rep> = parts.iter().collect();
        Rep::direct_sum(&refs)?.0
    };
    let pieces: Vec<Morphism> = gens
        .iter()
        .map(|g| target.map_from_projective(g.vertex, &g.image))
        .collect();
    let comps = (0..q.vertex_count())
        .map(|y| {
            pieces.iter().fold(Mat::zeros(field, target.dim_at(y), 0), |acc, f| {
                acc.hstack(f.at(y)).expect("same rows")
            })
        })
        .collect();
    let f = Morphism::new(comps);
    debug_assert!(f.commutes(&sum, target));
    Ok((sum, f))
}

pub fn min_proj_presentation(m: &Rep) -> Result<PresKit, ArError> {
    if m.is_zero() {
        return Err(ArError::ZeroModule);
    }
    m.quiver().require_acyclic()?;
    let p0_gens = top_generators(m);
    let (p0, cover) = projective_cover_map(m, &p0_gens)?;
    debug_assert!(cover.is_surjective());
    let (kernel, incl) = p0.kernel_of(&cover)?;
    let p1_gens: Vec<Generator> = top_generators(&kernel)
        .into_iter()
        .map(|g| {
            let v = Mat::from_columns(m.field(), g.image.len(), std::slice::from_ref(&g.image));
            Generator {
                vertex: g.vertex,
                image: incl.at(g.vertex).matmul(&v).expect("inclusion").to_vector(),
            }
        })
        .collect();
    let (p1, map) = projective_cover_map(&p0, &p1_gens)?;
    debug_assert!(map.is_injective());
    Ok(PresKit {
        module: m.clone(),
        p0,
        p1,
        p0_gens,
        p1_gens,
        map,
        cover,
    })
}

/// The Nakayama image `⊕ I_{y_j} → ⊕ I_{x_i}` of the presentation map.
fn nakayama(kit: &PresKit) -> Result<(Rep, Rep, Morphism), RepError> {
    let m = &kit.module;
    let q = m.quiver();
    let field = m.field();
    let n = q.vertex_count();
    let sum_of = |tops: &[usize]| -> Result<Rep, RepError> {
        let parts: Vec<Rep> = tops
            .iter()
            .map(|&x| Rep::injective(q.clone(), field, x))
            .collect::<Result<_, _>>()?;
        if parts.is_empty() {
            return Ok(Rep::zero(q.clone(), field));
        }
        let refs: Vec<&Rep> = parts.iter().collect();
        Ok(Rep::direct_sum(&refs)?.0)
    };
    let x_tops = kit.p0_tops();
    let y_tops = kit.p1_tops();
    let i1 = sum_of(&y_tops)?;
    let i0 = sum_of(&x_tops)?;
    let mut comps = Vec::with_capacity(n);
    for z in 0..n {
        let mut block = Mat::zeros(field, i0.dim_at(z), i1.dim_at(z));
        let mut col0 = 0;
        for g in &kit.p1_gens {
            let y = g.vertex;
            let cols: HashMap<&[usize], usize> = q
                .paths(z, y)
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect();
            // g.image lives in P0(y) = ⊕_i span{paths x_i ⇝ y}
            let mut coeff_off = 0;
            let mut row0 = 0;
            for &x in &x_tops {
                let qpaths = q.paths(x, y);
                for (qi, path_q) in qpaths.iter().enumerate() {
                    let c = &g.image[coeff_off + qi];
                    if c.is_zero() {
                        continue;
                    }
                    for (ri, r) in q.paths(z, x).iter().enumerate() {
                        let mut rq = r.clone();
                        rq.extend_from_slice(path_q);
                        let s = cols[rq.as_slice()];
                        let cur = block.get(row0 + ri, col0 + s).clone();
                        block.set(row0 + ri, col0 + s, &cur + c);
                    }
                }
                coeff_off += qpaths.len();
                row0 += q.paths(z, x).len();
            }
            col0 += q.paths(z, y).len();
        }
        comps.push(block);
    }
    let f = Morphism::new(comps);
    f.check(&i1, &i0)?;
    Ok((i1, i0, f))
}

fn check_coxeter(expected: Vec<i64>, got: &Rep) -> Result<(), ArError> {
    if got.dims().as_i64() != expected {
        return Err(ArError::CoxeterMismatch {
            expected,
            got: got.dims().0.clone(),
        });
    }
    Ok(())
}

/// `τM = ker(νP1 → νP0)` for an indecomposable non-projective `M`.
pub fn tau(m: &Rep) -> Result<Rep, ArError> {
    let kit = min_proj_presentation(m)?;
    tau_from_presentation(&kit)
}

pub fn tau_from_presentation(kit: &PresKit) -> Result<Rep, ArError> {
    if kit.is_projective() {
        return Err(ArError::TauUndefined);
    }
    let (i1, _, nu) = nakayama(kit)?;
    let (t, _) = i1.kernel_of(&nu)?;
    let expected = kit.module.quiver().coxeter_transform(&kit.module.dims().as_i64())?;
    check_coxeter(expected, &t)?;
    Ok(t)
}

/// `τ⁻M = D τ_{Q^op} D M` for an indecomposable non-injective `M`.
pub fn tau_inverse(m: &Rep) -> Result<Rep, ArError> {
    let q = m.quiver().clone();
    let dm = m.dual_on(q.opposite_shared());
    let t = match tau(&dm) {
        Err(ArError::TauUndefined) => return Err(ArError::TauInverseUndefined),
        other => other?,
    };
    let out = t.dual_on(q.clone());
    check_coxeter(q.inverse_coxeter_transform(&m.dims().as_i64())?, &out)?;
    Ok(out)
}

pub fn is_projective(m: &Rep) -> Result<bool, ArError> {
    Ok(min_proj_presentation(m)?.is_projective())
}

pub fn is_injective(m: &Rep) -> Result<bool, ArError> {
    let dm = m.dual_on(m.quiver().opposite_shared());
    is_projective(&dm)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactlin::Field;
    use crate::quiver::{Family, Quiver};
    use crate::rep::{injective, is_isomorphic, projective, ISO_TRIALS};

    const Q: Field = Field::Rational;

    fn a2() -> Arc<Quiver> {
        Arc::new(Family::LinearA(2).build().unwrap())
    }

    #[test]
    fn presentations() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), Q, 0);
        let kit = min_proj_presentation(&s1).unwrap();
        assert_eq!(kit.p0_tops(), vec![0]);
        assert_eq!(kit.p1_tops(), vec![1]);
        let p1 = projective(&q, Q, "1").unwrap();
        assert!(min_proj_presentation(&p1).unwrap().is_projective());
        let k = Arc::new(Family::Kronecker.build().unwrap());
        let t1 = Rep::simple(k.clone(), Q, 0);
        let kit = min_proj_presentation(&t1).unwrap();
        assert_eq!(kit.p0_tops(), vec![0]);
        assert_eq!(kit.p1_tops(), vec![1, 1]);
        assert!(min_proj_presentation(&Rep::zero(k, Q)).is_err());
    }

    #[test]
    fn tau_a2() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), Q, 0);
        let s2 = Rep::simple(q.clone(), Q, 1);
        let t = tau(&s1).unwrap();
        assert!(is_isomorphic(&t, &s2, ISO_TRIALS, 0).unwrap().is_some());
        let ti = tau_inverse(&s2).unwrap();
        assert!(is_isomorphic(&ti, &s1, ISO_TRIALS, 0).unwrap().is_some());
        assert_eq!(tau(&s2), Err(ArError::TauUndefined));
        assert_eq!(tau_inverse(&s1), Err(ArError::TauInverseUndefined));
        let i2 = injective(&q, Q, "2").unwrap();
        assert_eq!(tau_inverse(&i2), Err(ArError::TauInverseUndefined));
    }

    #[test]
    fn kronecker_orbit() {
        let k = Arc::new(Family::Kronecker.build().unwrap());
        let p1 = projective(&k, Q, "1").unwrap();
        assert_eq!(p1.dims().0, vec![1, 2]);
        assert_eq!(tau(&p1), Err(ArError::TauUndefined));
        let m = tau_inverse(&p1).unwrap();
        assert_eq!(m.dims().0, vec![3, 4]);
        let m2 = tau_inverse(&m).unwrap();
        assert_eq!(m2.dims().0, vec![5, 6]);
        let back = tau(&m).unwrap();
        assert_eq!(back.dims().0, vec![1, 2]);
        assert!(is_isomorphic(&back, &p1, ISO_TRIALS, 0).unwrap().is_some());
        assert!(is_projective(&p1).unwrap());
        assert!(!is_injective(&m).unwrap());
    }

    #[test]
    fn decomposable_input_detected() {
        // P2 ⊕ S1 is not indecomposable; τ sees only the S1 part.
        let q = a2();
        let p2 = projective(&q, Q, "2").unwrap();
        let s1 = Rep::simple(q, Q, 0);
        let (sum, _, _) = Rep::direct_sum(&[&p2, &s1]).unwrap();
        assert!(matches!(tau(&sum), Err(ArError::CoxeterMismatch { .. })));
    }

    #[test]
    fn round_trip_d4() {
        let q = Arc::new(
            Family::D {
                n: 4,
                orientation: Some("><>".into()),
            }
            .build()
            .unwrap(),
        );
        for x in 0..4 {
            let p = Rep::projective(q.clone(), Q, x).unwrap();
            if let Ok(m) = tau_inverse(&p) {
                let back = tau(&m).unwrap();
                assert!(is_isomorphic(&back, &p, ISO_TRIALS, 1).unwrap().is_some());
            }
        }
    }
}
