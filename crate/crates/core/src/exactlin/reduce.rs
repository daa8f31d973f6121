//! Row reduction kernels.
//!
//! Over the rationals each row is scaled to a primitive integer vector and
//! eliminated fraction-free (cross-multiplication followed by division by the
//! row content), so no intermediate rational normalisation happens. Only the
//! final reduced echelon form is converted back to rationals, with every
//! pivot equal to one. Over `F_p` plain Gauss-Jordan is used.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{pow_mod, Field, Scalar};
use super::Mat;

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

pub(crate) fn rref(m: &Mat) -> Rref {
    match m.field() {
        Field::Rational => rref_rational(m, true),
        Field::Prime(p) => rref_prime(m, p, true),
    }
}

/// Forward elimination only; enough for rank.
pub(crate) fn echelon_pivots(m: &Mat) -> Vec<usize> {
    match m.field() {
        Field::Rational => rref_rational(m, false).pivots,
        Field::Prime(p) => rref_prime(m, p, false).pivots,
    }
}

fn primitive_row(row: &[Scalar]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        let r = x.as_rational().expect("rational row");
        if !r.is_zero() {
            lcm = lcm.lcm(r.denom());
        }
    }
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|x| {
            let r = x.as_rational().unwrap();
            r.numer() * (&lcm / r.denom())
        })
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = &*x / &g;
        }
    }
}

/// `target <- pivot_val * target - factor * pivot_row`, then strip content.
fn eliminate(target: &mut [BigInt], pivot_row: &[BigInt], col: usize) {
    let factor = target[col].clone();
    if factor.is_zero() {
        return;
    }
    let pv = &pivot_row[col];
    let g = factor.gcd(pv);
    let a = pv / &g;
    let b = &factor / &g;
    for (t, p) in target.iter_mut().zip(pivot_row) {
        if p.is_zero() {
            if !t.is_zero() && !a.is_one() {
                *t = &*t * &a;
            }
        } else {
            *t = &*t * &a - &b * p;
        }
    }
    target[col] = BigInt::zero();
    make_primitive(target);
}

fn rref_rational(m: &Mat, full: bool) -> Rref {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|r| primitive_row(m.row_slice(r))).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r);
        let (prow, tail) = tail.split_first_mut().unwrap();
        for row in tail.iter_mut() {
            eliminate(row, prow, c);
        }
        if full {
            for row in head.iter_mut() {
                eliminate(row, prow, c);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if !full {
        return Rref {
            mat: Mat::zeros(Field::Rational, 0, cols),
            pivots,
        };
    }
    // Pivot rows are zero in every other pivot column at this point.
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in a.iter().enumerate() {
        if i < pivots.len() {
            let pv = row[pivots[i]].clone();
            let sign_fix = if pv.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            let pv = pv.abs();
            for x in row {
                data.push(Scalar::Rat(BigRational::new(x * &sign_fix, pv.clone())));
            }
        } else {
            data.extend(std::iter::repeat_n(Field::Rational.zero(), cols));
        }
    }
    Rref {
        mat: Mat::from_vec(Field::Rational, rows, cols, data),
        pivots,
    }
}

fn rref_prime(m: &Mat, p: u64, full: bool) -> Rref {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            m.row_slice(r)
                .iter()
                .map(|x| match x {
                    Scalar::Mod { value, .. } => *value,
                    Scalar::Rat(_) => unreachable!("prime matrix holds residues"),
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || (!full && i < r) {
                continue;
            }
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&prow) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let data = a
        .into_iter()
        .flatten()
        .map(|v| Scalar::Mod { value: v, modulus: p })
        .collect();
    Rref {
        mat: Mat::from_vec(Field::Prime(p), rows, cols, data),
        pivots,
    }
}
