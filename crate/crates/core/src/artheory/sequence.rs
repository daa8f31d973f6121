use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactlin::{Field, Mat};
use crate::rep::{
    end_report, ext1_dim, hom_basis, is_isomorphic, rad_end_basis, solve_in_span, Morphism, MorphismJson, Rep,
    RepError, RepJson, ISO_TRIALS,
};

use super::{min_proj_presentation, tau_from_presentation, ArError};

/// `0 → left → middle → right → 0` with `left = τ(right)`.
#[derive(Clone, Debug)]
pub struct AlmostSplitSeq {
    pub left: Rep,
    pub middle: Rep,
    pub right: Rep,
    pub f: Morphism,
    pub g: Morphism,
}

/// The unique `g` with `g ∘ pi = c`, for `pi` surjective at every vertex.
fn factor_through_epi(pi: &Morphism, c: &Morphism) -> Result<Morphism, RepError> {
    let comps = pi
        .comps()
        .iter()
        .zip(c.comps())
        .map(|(p, cx)| {
            let gt = p.transpose().solve(&cx.transpose())?.ok_or(RepError::NotAMorphism)?;
            Ok(gt.transpose())
        })
        .collect::<Result<Vec<Mat>, RepError>>()?;
    Ok(Morphism::new(comps))
}

/// Realizes the non-split extension of `z` by `τz` as a pushout of the
/// projective presentation of `z` along a cocycle `h: P1 → τz`.
pub fn almost_split_sequence(z: &Rep) -> Result<AlmostSplitSeq, ArError> {
    let kit = min_proj_presentation(z)?;
    let left = tau_from_presentation(&kit)?;
    let report = end_report(z)?;
    match report.auto_field_dim {
        Some(1) => {}
        Some(a) => return Err(ArError::NontrivialAutoField(a)),
        None => return Err(RepError::RadicalNeedsCharZero(z.field()).into()),
    }
    let ext = ext1_dim(z, &left)?;
    if ext != 1 {
        return Err(ArError::Ext1NotOne(ext));
    }
    // Ext¹(z, τz) = coker(Hom(P0, τz) → Hom(P1, τz)) because 0 → P1 → P0 → z → 0 is exact.
    let from_p1 = hom_basis(&kit.p1, &left)?;
    let from_p0 = hom_basis(&kit.p0, &left)?;
    let image: Vec<Morphism> = from_p0.basis.iter().map(|phi| kit.map.then(phi)).collect();
    let h = from_p1
        .basis
        .iter()
        .find(|h| solve_in_span(&image, h).is_none())
        .cloned()
        .ok_or(ArError::SplitConstructed)?;

    let (sum, incl, proj) = Rep::direct_sum(&[&left, &kit.p0])?;
    let u = kit.map.then(&incl[1]).sub(&h.then(&incl[0]));
    let (middle, pi) = sum.cokernel_of(&u)?;
    let f = incl[0].then(&pi);
    let g = factor_through_epi(&pi, &proj[1].then(&kit.cover))?;
    f.check(&left, &middle)?;
    g.check(&middle, z)?;
    let seq = AlmostSplitSeq {
        left,
        middle,
        right: z.clone(),
        f,
        g,
    };
    if seq.splits()? {
        return Err(ArError::SplitConstructed);
    }
    Ok(seq)
}

impl AlmostSplitSeq {
    /// True when `g` has a section.
    pub fn splits(&self) -> Result<bool, RepError> {
        let sections = hom_basis(&self.right, &self.middle)?;
        let composites: Vec<Morphism> = sections.basis.iter().map(|s| s.then(&self.g)).collect();
        Ok(solve_in_span(&composites, &Morphism::identity(&self.right)).is_some())
    }

    pub fn to_json(&self) -> AlmostSplitSeqJson {
        let q = self.right.quiver();
        AlmostSplitSeqJson {
            v: 1,
            field: self.right.field(),
            left: self.left.to_json(false),
            middle: self.middle.to_json(false),
            right: self.right.to_json(false),
            f: self.f.to_json(q),
            g: self.g.to_json(q),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlmostSplitSeqJson {
    pub v: u32,
    pub field: Field,
    pub left: RepJson,
    pub middle: RepJson,
    pub right: RepJson,
    pub f: MorphismJson,
    pub g: MorphismJson,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostSplitReport {
    pub composite_zero: bool,
    pub f_injective: bool,
    pub g_surjective: bool,
    pub dims_add: bool,
    pub non_split: bool,
    /// Window indices `W` with a non-retraction `W → right` that does not lift through `g`.
    pub lift_failures: Vec<usize>,
    /// Window indices `W` with a non-section `left → W` that does not extend through `f`.
    pub extend_failures: Vec<usize>,
    /// `None` when automorphism fields cannot be computed (prime field).
    pub auto_fields_equal: Option<bool>,
}

impl AlmostSplitReport {
    pub fn passed(&self) -> bool {
        self.composite_zero
            && self.f_injective
            && self.g_surjective
            && self.dims_add
            && self.non_split
            && self.lift_failures.is_empty()
            && self.extend_failures.is_empty()
            && self.auto_fields_equal != Some(false)
    }
}

/// Basis of the non-isomorphisms `a → b` for indecomposable `a`, `b`.
fn non_isos(a: &Rep, b: &Rep) -> Result<Vec<Morphism>, RepError> {
    match is_isomorphic(a, b, ISO_TRIALS, 0)? {
        None => Ok(hom_basis(a, b)?.basis),
        Some(phi) => {
            let end_b = hom_basis(b, b)?;
            Ok(rad_end_basis(&end_b)?.iter().map(|r| phi.then(r)).collect())
        }
    }
}

pub fn verify_almost_split(seq: &AlmostSplitSeq, window: &[Rep]) -> Result<AlmostSplitReport, RepError> {
    let mut report = AlmostSplitReport {
        composite_zero: seq.f.then(&seq.g).is_zero(),
        f_injective: seq.f.is_injective(),
        g_surjective: seq.g.is_surjective(),
        dims_add: seq.middle.dims() == &seq.left.dims().add(seq.right.dims()),
        non_split: !seq.splits()?,
        ..Default::default()
    };
    let checks = window
        .par_iter()
        .enumerate()
        .map(|(i, w)| -> Result<(usize, bool, bool), RepError> {
            let into_e = hom_basis(w, &seq.middle)?;
            let through_g: Vec<Morphism> = into_e.basis.iter().map(|v| v.then(&seq.g)).collect();
            let lifts = non_isos(w, &seq.right)?
                .iter()
                .all(|u| solve_in_span(&through_g, u).is_some());
            let from_e = hom_basis(&seq.middle, w)?;
            let through_f: Vec<Morphism> = from_e.basis.iter().map(|v| seq.f.then(v)).collect();
            let extends = non_isos(&seq.left, w)?
                .iter()
                .all(|u| solve_in_span(&through_f, u).is_some());
            Ok((i, lifts, extends))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (i, lifts, extends) in checks {
        if !lifts {
            report.lift_failures.push(i);
        }
        if !extends {
            report.extend_failures.push(i);
        }
    }
    let left = end_report(&seq.left)?;
    let right = end_report(&seq.right)?;
    report.auto_fields_equal = match (left.auto_field_dim, right.auto_field_dim) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::artheory::tau_inverse;
    use crate::quiver::{Family, Quiver};
    use crate::rep::projective;

    const Q: Field = Field::Rational;

    fn a2() -> Arc<Quiver> {
        Arc::new(Family::LinearA(2).build().unwrap())
    }

    #[test]
    fn a2_sequence() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), Q, 0);
        let seq = almost_split_sequence(&s1).unwrap();
        assert_eq!(seq.left.dims().0, vec![0, 1]);
        assert_eq!(seq.middle.dims().0, vec![1, 1]);
        let p1 = projective(&q, Q, "1").unwrap();
        assert!(is_isomorphic(&seq.middle, &p1, ISO_TRIALS, 0).unwrap().is_some());
        let window = vec![Rep::simple(q.clone(), Q, 1), p1, s1];
        let report = verify_almost_split(&seq, &window).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.auto_fields_equal, Some(true));
        let json = serde_json::to_string(&seq.to_json()).unwrap();
        assert!(json.contains("\"middle\""));
    }

    #[test]
    fn split_sequence_fails() {
        let q = a2();
        let a = Rep::simple(q.clone(), Q, 1);
        let b = Rep::simple(q.clone(), Q, 0);
        let (sum, incl, proj) = Rep::direct_sum(&[&a, &b]).unwrap();
        let seq = AlmostSplitSeq {
            left: a,
            middle: sum,
            right: b,
            f: incl[0].clone(),
            g: proj[1].clone(),
        };
        let report = verify_almost_split(&seq, &[]).unwrap();
        assert!(!report.non_split);
        assert!(!report.passed());
    }

    #[test]
    fn projective_refused() {
        let q = a2();
        let p2 = projective(&q, Q, "2").unwrap();
        assert_eq!(almost_split_sequence(&p2).unwrap_err(), ArError::TauUndefined);
    }

    #[test]
    fn a3_middle_term() {
        let q = Arc::new(Family::LinearA(3).build().unwrap());
        let p2 = projective(&q, Q, "2").unwrap();
        let z = tau_inverse(&p2).unwrap();
        let seq = almost_split_sequence(&z).unwrap();
        assert_eq!(seq.middle.dims(), &seq.left.dims().add(z.dims()));
        assert!(!seq.splits().unwrap());
    }
}
