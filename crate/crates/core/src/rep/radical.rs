use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::endo::rad_end_basis;
use super::hom::reduce_span;
use super::{hom_basis, Morphism, Rep, RepError};

/// Dimensions of `rad^t(X, Y)` over a window of pairwise non-isomorphic
/// indecomposables. Exact when the window is a full finite component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadTable {
    /// `powers[t - 1][x][y] = dim rad^t(X_x, X_y)`.
    pub powers: Vec<Vec<Vec<usize>>>,
    /// First `t` with `rad^t = rad^{t+1}` on the whole window, if reached.
    pub stabilized_at: Option<usize>,
    pub reaches_zero: bool,
}

impl RadTable {
    pub fn dim(&self, t: usize, x: usize, y: usize) -> usize {
        assert!(t >= 1, "radical powers start at 1");
        match self.powers.get(t - 1) {
            Some(p) => p[x][y],
            // past the computed range the table has stabilized
            None => self.powers.last().map_or(0, |p| p[x][y]),
        }
    }

    /// `dim rad(X, Y) − dim rad²(X, Y)`.
    pub fn irr(&self, x: usize, y: usize) -> usize {
        self.dim(1, x, y) - self.dim(2, x, y)
    }

    pub fn is_zero_at(&self, t: usize) -> bool {
        let k = self.powers.first().map_or(0, Vec::len);
        (0..k).all(|x| (0..k).all(|y| self.dim(t, x, y) == 0))
    }
}

fn rad_one(window: &[Rep]) -> Result<Vec<Vec<Vec<Morphism>>>, RepError> {
    let k = window.len();
    if let Some(first) = window.first() {
        for m in window {
            first.check_compatible(m)?;
        }
    }
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|x| (0..k).map(move |y| (x, y))).collect();
    let cells = pairs
        .par_iter()
        .map(|&(x, y)| {
            let h = hom_basis(&window[x], &window[y])?;
            if x == y {
                rad_end_basis(&h)
            } else {
                Ok(h.basis)
            }
        })
        .collect::<Result<Vec<_>, RepError>>()?;
    let mut it = cells.into_iter();
    Ok((0..k).map(|_| (0..k).map(|_| it.next().unwrap()).collect()).collect())
}

fn dims(table: &[Vec<Vec<Morphism>>]) -> Vec<Vec<usize>> {
    table.iter().map(|row| row.iter().map(Vec::len).collect()).collect()
}

/// Computes `rad^t` for `t = 1..=n`, stopping early once the table is stable.
pub fn rad_power_dims(window: &[Rep], n: usize) -> Result<RadTable, RepError> {
    let k = window.len();
    let rad = rad_one(window)?;
    let mut powers = vec![dims(&rad)];
    let mut current = rad.clone();
    let mut stabilized_at = None;
    for t in 1..n.max(1) {
        if powers[t - 1].iter().flatten().all(|&d| d == 0) {
            stabilized_at = Some(t);
            break;
        }
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|x| (0..k).map(move |y| (x, y))).collect();
        let next_cells: Vec<Vec<Morphism>> = pairs
            .par_iter()
            .map(|&(x, y)| {
                let mut span = Vec::new();
                for mid in 0..k {
                    for f in &current[x][mid] {
                        for g in &rad[mid][y] {
                            let c = f.then(g);
                            if !c.is_zero() {
                                span.push(c);
                            }
                        }
                    }
                }
                reduce_span(span)
            })
            .collect();
        let mut it = next_cells.into_iter();
        let next: Vec<Vec<Vec<Morphism>>> = (0..k).map(|_| (0..k).map(|_| it.next().unwrap()).collect()).collect();
        let d = dims(&next);
        let stable = d == powers[t - 1];
        powers.push(d);
        current = next;
        if stable {
            stabilized_at = Some(t);
            break;
        }
    }
    if stabilized_at.is_none() && powers.last().is_some_and(|p| p.iter().flatten().all(|&d| d == 0)) {
        stabilized_at = Some(powers.len());
    }
    let reaches_zero = powers.last().is_some_and(|p| p.iter().flatten().all(|&d| d == 0));
    Ok(RadTable {
        powers,
        stabilized_at,
        reaches_zero,
    })
}

pub fn irr_dim(window: &[Rep], x: usize, y: usize) -> Result<usize, RepError> {
    if x >= window.len() {
        return Err(RepError::NotInWindow(x));
    }
    if y >= window.len() {
        return Err(RepError::NotInWindow(y));
    }
    Ok(rad_power_dims(window, 2)?.irr(x, y))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactlin::Field;
    use crate::quiver::Family;
    use crate::rep::projective;

    const Q: Field = Field::Rational;

    /// The A2 component: S2 = P2 → P1 → S1.
    fn a2_window() -> Vec<Rep> {
        let q = Arc::new(Family::LinearA(2).build().unwrap());
        vec![
            Rep::simple(q.clone(), Q, 1),
            projective(&q, Q, "1").unwrap(),
            Rep::simple(q, Q, 0),
        ]
    }

    #[test]
    fn a2_radical_powers() {
        let w = a2_window();
        let t = rad_power_dims(&w, 5).unwrap();
        assert_eq!(t.dim(1, 0, 1), 1);
        assert_eq!(t.dim(1, 0, 2), 0);
        assert_eq!(t.dim(2, 0, 2), 0);
        assert_eq!(irr_dim(&w, 0, 1).unwrap(), 1);
        assert_eq!(irr_dim(&w, 1, 2).unwrap(), 1);
        assert_eq!(irr_dim(&w, 0, 2).unwrap(), 0);
        assert_eq!(irr_dim(&w, 1, 1).unwrap(), 0);
        assert!(t.reaches_zero);
        assert!(t.stabilized_at.unwrap() <= 3);
        assert!(irr_dim(&w, 0, 7).is_err());
    }

    #[test]
    fn a3_monotone_and_zero() {
        let q = Arc::new(Family::LinearA(3).build().unwrap());
        let mut w = Vec::new();
        for x in ["1", "2", "3"] {
            w.push(projective(&q, Q, x).unwrap());
        }
        let t = rad_power_dims(&w, 6).unwrap();
        // P3 ⊂ P2 ⊂ P1: rad(P3, P1) is reached in two steps
        assert_eq!(t.dim(1, 2, 0), 1);
        assert_eq!(t.dim(2, 2, 0), 1);
        assert_eq!(t.irr(2, 0), 0);
        assert_eq!(t.irr(2, 1), 1);
        assert!(t.reaches_zero);
        for s in 1..t.powers.len() {
            for x in 0..3 {
                for y in 0..3 {
                    assert!(t.dim(s + 1, x, y) <= t.dim(s, x, y));
                }
            }
        }
    }
}
