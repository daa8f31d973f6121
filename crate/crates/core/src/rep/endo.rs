use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exactlin::{Field, Mat, Scalar};

use super::{hom_basis, HomBasis, Morphism, Rep, RepError};

/// Default number of random combinations tried by the iso and split searches.
pub const ISO_TRIALS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndReport {
    pub field: Field,
    pub end_dim: usize,
    /// `None` when the radical could not be computed (prime field, non-brick).
    pub rad_end_dim: Option<usize>,
    pub auto_field_dim: Option<usize>,
    pub is_brick: bool,
}

impl EndReport {
    /// The radical dimension, or the refusal error for prime fields.
    pub fn require_radical(&self) -> Result<(usize, usize), RepError> {
        match (self.rad_end_dim, self.auto_field_dim) {
            (Some(r), Some(a)) => Ok((r, a)),
            _ => Err(RepError::RadicalNeedsCharZero(self.field)),
        }
    }
}

/// Basis of `rad End(M)` as the kernel of the trace form `(f, g) ↦ tr(f∘g)`.
pub fn rad_end_basis(end: &HomBasis) -> Result<Vec<Morphism>, RepError> {
    let field = end.source.field();
    let n = end.dim();
    if n <= 1 {
        // End(M) = k for bricks; the zero rep has no endomorphisms at all.
        return Ok(Vec::new());
    }
    if field.characteristic() != 0 {
        return Err(RepError::RadicalNeedsCharZero(field));
    }
    let mut gram = Mat::zeros(field, n, n);
    for i in 0..n {
        for j in i..n {
            let t = end.basis[j].then(&end.basis[i]).trace();
            gram.set(j, i, t.clone());
            gram.set(i, j, t);
        }
    }
    Ok(gram.kernel_basis().into_iter().map(|c| end.element(&c)).collect())
}

pub fn end_report(m: &Rep) -> Result<EndReport, RepError> {
    if m.is_zero() {
        return Err(RepError::Malformed(
            "zero representation has no endomorphism report".into(),
        ));
    }
    let end = hom_basis(m, m)?;
    let end_dim = end.dim();
    let rad = match rad_end_basis(&end) {
        Ok(r) => Some(r.len()),
        Err(RepError::RadicalNeedsCharZero(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(EndReport {
        field: m.field(),
        end_dim,
        rad_end_dim: rad,
        auto_field_dim: rad.map(|r| end_dim - r),
        is_brick: end_dim == 1,
    })
}

/// Small random coefficients, reproducible from `rng`.
fn random_coeffs(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n).map(|_| field.from_i64(rng.gen_range(-7..=7))).collect()
}

/// Candidate morphisms: the basis elements first, then random combinations.
fn candidates<'a>(h: &'a HomBasis, trials: usize, seed: u64) -> impl Iterator<Item = Morphism> + 'a {
    let field = h.source.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = h.basis.iter().cloned();
    let random = (0..trials).map(move |_| {
        let c = random_coeffs(field, h.dim(), &mut rng);
        h.element(&c)
    });
    basis.chain(random)
}

/// Looks for an isomorphism `m → n`. `None` means "not proven isomorphic".
pub fn is_isomorphic(m: &Rep, n: &Rep, trials: usize, seed: u64) -> Result<Option<Morphism>, RepError> {
    m.check_compatible(n)?;
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(Morphism::zero(m.field(), m, n)));
    }
    let h = hom_basis(m, n)?;
    if h.is_zero() {
        return Ok(None);
    }
    let found = candidates(&h, trials, seed).find(Morphism::is_iso);
    Ok(found)
}

#[derive(Clone, Debug)]
pub enum FittingOutcome {
    NoSplit,
    /// `m ≅ kernel ⊕ image` of the stable power of some endomorphism.
    Split(Rep, Rep),
}

impl FittingOutcome {
    pub fn is_split(&self) -> bool {
        matches!(self, FittingOutcome::Split(..))
    }
}

fn power(f: &Morphism, n: usize) -> Morphism {
    let mut acc = f.clone();
    for _ in 1..n.max(1) {
        acc = acc.then(f);
    }
    acc
}

/// Splits `m` along `ker f^N ⊕ im f^N` for some endomorphism `f`, trying
/// the shifts `f − c·1` for small `c` so that rational eigenvalues are found.
pub fn fitting_split(m: &Rep, trials: usize, seed: u64) -> Result<FittingOutcome, RepError> {
    if m.is_zero() {
        return Err(RepError::Malformed("cannot split the zero representation".into()));
    }
    let end = hom_basis(m, m)?;
    if end.dim() <= 1 {
        return Ok(FittingOutcome::NoSplit);
    }
    let field = m.field();
    let n = m.total_dim();
    let id = Morphism::identity(m);
    for f in candidates(&end, trials, seed) {
        for c in -3..=3 {
            let g = f.sub(&id.scale(&field.from_i64(c)));
            let g = power(&g, n);
            let ker: Vec<Mat> = g.comps().iter().map(Mat::kernel_mat).collect();
            let k: usize = ker.iter().map(Mat::cols).sum();
            if k == 0 || k == n {
                continue;
            }
            let img: Vec<Mat> = g.comps().iter().map(Mat::column_space).collect();
            let (a, _) = m.subrep(&ker)?;
            let (b, _) = m.subrep(&img)?;
            return Ok(FittingOutcome::Split(a, b));
        }
    }
    Ok(FittingOutcome::NoSplit)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::quiver::{DimVector, Family, Quiver};
    use crate::rep::projective;

    const Q: Field = Field::Rational;

    /// α ↦ 1, β ↦ companion matrix of x² + 1 on the Kronecker quiver.
    fn companion_rep(field: Field) -> Rep {
        let k = Arc::new(Family::Kronecker.build().unwrap());
        Rep::new(
            k,
            field,
            DimVector(vec![2, 2]),
            vec![Mat::identity(field, 2), Mat::from_i64(field, &[&[0, -1], &[1, 0]])],
        )
        .unwrap()
    }

    #[test]
    fn simple_and_projective_are_bricks() {
        let q = Arc::new(Family::LinearA(2).build().unwrap());
        for m in [Rep::simple(q.clone(), Q, 0), projective(&q, Q, "1").unwrap()] {
            let r = end_report(&m).unwrap();
            assert!(r.is_brick);
            assert_eq!((r.rad_end_dim, r.auto_field_dim), (Some(0), Some(1)));
        }
    }

    #[test]
    fn companion_over_rationals() {
        let r = end_report(&companion_rep(Q)).unwrap();
        assert_eq!(r.end_dim, 2);
        assert_eq!(r.rad_end_dim, Some(0));
        assert_eq!(r.auto_field_dim, Some(2));
        assert!(!r.is_brick);
        assert!(!fitting_split(&companion_rep(Q), ISO_TRIALS, 1).unwrap().is_split());
    }

    #[test]
    fn companion_over_f5_splits() {
        let f5 = Field::prime(5).unwrap();
        let m = companion_rep(f5);
        let r = end_report(&m).unwrap();
        assert_eq!(r.end_dim, 2);
        assert!(r.rad_end_dim.is_none());
        assert!(matches!(r.require_radical(), Err(RepError::RadicalNeedsCharZero(_))));
        match fitting_split(&m, ISO_TRIALS, 7).unwrap() {
            FittingOutcome::Split(a, b) => {
                assert_eq!(a.dims().0, vec![1, 1]);
                assert_eq!(b.dims().0, vec![1, 1]);
            }
            FittingOutcome::NoSplit => panic!("x^2+1 splits over F5"),
        }
    }

    #[test]
    fn nilpotent_radical() {
        // S ⊕ S ⊕ ... is semisimple; P1 ⊕ S2 on A2 has a nonzero radical.
        let q = Arc::new(Family::LinearA(2).build().unwrap());
        let p1 = projective(&q, Q, "1").unwrap();
        let s2 = Rep::simple(q.clone(), Q, 1);
        let (sum, _, _) = Rep::direct_sum(&[&p1, &s2]).unwrap();
        let r = end_report(&sum).unwrap();
        assert_eq!(r.end_dim, 3);
        assert_eq!(r.rad_end_dim, Some(1));
        assert!(fitting_split(&sum, ISO_TRIALS, 0).unwrap().is_split());
    }

    #[test]
    fn split_semisimple() {
        let q = Arc::new(Quiver::from_edges(&["x"], &[]).unwrap());
        let s = Rep::simple(q, Q, 0);
        let (ss, _, _) = Rep::direct_sum(&[&s, &s]).unwrap();
        assert!(fitting_split(&ss, ISO_TRIALS, 3).unwrap().is_split());
        assert!(!fitting_split(&s, ISO_TRIALS, 3).unwrap().is_split());
    }

    #[test]
    fn iso_search() {
        let q = Arc::new(Family::LinearA(2).build().unwrap());
        let p2 = projective(&q, Q, "2").unwrap();
        let s2 = Rep::simple(q.clone(), Q, 1);
        assert!(is_isomorphic(&p2, &s2, ISO_TRIALS, 0).unwrap().is_some());
        let s1 = Rep::simple(q, Q, 0);
        assert!(is_isomorphic(&s1, &s2, ISO_TRIALS, 0).unwrap().is_none());
    }
}
