use std::fmt;

use super::reduce::{self, Rref};
use super::scalar::{Field, Scalar};
use super::LinAlgError;

/// Dense row-major matrix over one exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}x{} over {}](", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, ")")
    }
}

impl Mat {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|x| x.field() != field) {
            return Err(LinAlgError::FieldMismatch);
        }
        Ok(Mat {
            field,
            rows,
            cols,
            data,
        })
    }

    pub(crate) fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Mat {
        debug_assert_eq!(data.len(), rows * cols);
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat::from_vec(field, rows, cols, vec![field.zero(); rows * cols])
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| field.from_i64(v)))
            .collect();
        Mat::from_vec(field, r, c, data)
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Mat, LinAlgError> {
        let r = rows.len();
        if rows.iter().any(|x| x.len() != cols) {
            return Err(LinAlgError::Shape("ragged rows".into()));
        }
        Mat::new(field, r, cols, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length");
            for (r, x) in v.iter().enumerate() {
                m.data[r * columns.len() + c] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub(crate) fn row_slice(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.row_slice(r).to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Mat::from_vec(self.field, self.cols, self.rows, data)
    }

    fn check_field(&self, other: &Mat) -> Result<(), LinAlgError> {
        if self.field != other.field {
            Err(LinAlgError::FieldMismatch)
        } else {
            Ok(())
        }
    }

    /// Exact product `self * other`.
    pub fn matmul(&self, other: &Mat) -> Result<Mat, LinAlgError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(LinAlgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, LinAlgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, LinAlgError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Mat, LinAlgError> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinAlgError::Shape(format!("{:?} vs {:?}", self.shape(), other.shape())));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Mat::from_vec(self.field, self.rows, self.cols, data))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let data = self.data.iter().map(|x| x * s).collect();
        Mat::from_vec(self.field, self.rows, self.cols, data)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat, LinAlgError> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(LinAlgError::Shape("hstack row mismatch".into()));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            data.extend_from_slice(self.row_slice(r));
            data.extend_from_slice(other.row_slice(r));
        }
        Ok(Mat::from_vec(self.field, self.rows, self.cols + other.cols, data))
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat, LinAlgError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(LinAlgError::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat::from_vec(self.field, self.rows + other.rows, self.cols, data))
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for r in r0..r0 + rows {
            data.extend_from_slice(&self.data[r * self.cols + c0..r * self.cols + c0 + cols]);
        }
        Mat::from_vec(self.field, rows, cols, data)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for r in 0..self.rows {
            for &c in idx {
                data.push(self.get(r, c).clone());
            }
        }
        Mat::from_vec(self.field, self.rows, idx.len(), data)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(self.cols * idx.len());
        for &r in idx {
            data.extend_from_slice(self.row_slice(r));
        }
        Mat::from_vec(self.field, idx.len(), self.cols, data)
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        (0..self.rows).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn rref(&self) -> Rref {
        reduce::rref(self)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        reduce::echelon_pivots(self).len()
    }

    /// Basis of the right null space in reduced echelon-normal form: one
    /// vector per free column, with a one in that column and zeros in the
    /// other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let n = self.cols;
        if self.rows == 0 {
            return (0..n)
                .map(|i| {
                    let mut v = vec![self.field.zero(); n];
                    v[i] = self.field.one();
                    v
                })
                .collect();
        }
        let Rref { mat, pivots } = self.rref();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![self.field.zero(); n];
                v[f] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -mat.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Kernel basis packed as the columns of a matrix.
    pub fn kernel_mat(&self) -> Mat {
        Mat::from_columns(self.field, self.cols, &self.kernel_basis())
    }

    /// Some `X` with `self * X == b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>, LinAlgError> {
        self.check_field(b)?;
        if self.rows != b.rows {
            return Err(LinAlgError::Shape(format!(
                "solve: {} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let n = self.cols;
        if self.rows == 0 {
            return Ok(Some(Mat::zeros(self.field, n, b.cols)));
        }
        let Rref { mat, pivots } = self.hstack(b)?.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, n, b.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = mat.get(row, n + j).clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let id = Mat::identity(self.field, self.rows);
        match self.solve(&id) {
            Ok(Some(x)) if self.rank() == self.rows => Some(x),
            _ => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis (as columns) of the column space, taken from the pivot columns.
    pub fn column_space(&self) -> Mat {
        if self.rows == 0 || self.cols == 0 {
            return Mat::zeros(self.field, self.rows, 0);
        }
        let pivots = reduce::echelon_pivots(self);
        self.select_columns(&pivots)
    }

    /// Indices of standard basis vectors completing the column space of
    /// `self` to the whole ambient space.
    pub fn complement_indices(&self) -> Vec<usize> {
        if self.cols == 0 {
            return (0..self.rows).collect();
        }
        let pivots = reduce::echelon_pivots(&self.transpose());
        let mut taken = vec![false; self.rows];
        for p in pivots {
            taken[p] = true;
        }
        (0..self.rows).filter(|&i| !taken[i]).collect()
    }

    /// Rows spanning the left kernel: `Y` with `Y * self == 0` and full row rank.
    pub fn left_kernel(&self) -> Mat {
        let basis = self.transpose().kernel_basis();
        let rows = basis.len();
        Mat::from_vec(self.field, rows, self.rows, basis.into_iter().flatten().collect())
    }

    /// Flattens the matrix into a column vector, row-major.
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.data.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn product_examples() {
        let a = Mat::from_i64(Q, &[&[1, 2], &[3, 4]]);
        let b = Mat::from_i64(Q, &[&[0], &[1]]);
        assert_eq!(a.matmul(&b).unwrap(), Mat::from_i64(Q, &[&[2], &[4]]));
        let id = Mat::identity(Q, 2);
        assert_eq!(id.matmul(&a).unwrap(), a);
        let z = Mat::zeros(Q, 2, 2);
        assert!(z.matmul(&a).unwrap().is_zero());
    }

    #[test]
    fn product_errors() {
        let a = Mat::from_i64(Q, &[&[1, 2]]);
        assert!(matches!(a.matmul(&a), Err(LinAlgError::Shape(_))));
        let b = Mat::identity(Field::Prime(3), 2);
        assert!(matches!(a.matmul(&b), Err(LinAlgError::FieldMismatch)));
    }

    #[test]
    fn kernel_examples() {
        assert!(Mat::identity(Q, 3).kernel_basis().is_empty());
        assert_eq!(Mat::zeros(Q, 2, 2).kernel_basis().len(), 2);
        let k = Mat::from_i64(Q, &[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![Q.from_i64(-1), Q.from_i64(1)]]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::identity(Q, 4).rank(), 4);
        assert_eq!(Mat::zeros(Q, 3, 2).rank(), 0);
        assert_eq!(Mat::from_i64(Q, &[&[1, 2], &[2, 4]]).rank(), 1);
        let f3 = Field::Prime(3);
        // det = 3 vanishes mod 3
        assert_eq!(Mat::from_i64(f3, &[&[1, 1], &[1, 4]]).rank(), 1);
        assert_eq!(Mat::from_i64(Q, &[&[1, 1], &[1, 4]]).rank(), 2);
    }

    #[test]
    fn solve_examples() {
        let b = Mat::from_i64(Q, &[&[3, 1], &[-2, 5]]);
        assert_eq!(Mat::identity(Q, 2).solve(&b).unwrap(), Some(b.clone()));
        let a = Mat::from_i64(Q, &[&[1, 1]]);
        let x = a.solve(&Mat::from_i64(Q, &[&[2]])).unwrap().unwrap();
        assert_eq!(a.matmul(&x).unwrap(), Mat::from_i64(Q, &[&[2]]));
        let z = Mat::from_i64(Q, &[&[0]]);
        assert_eq!(z.solve(&Mat::from_i64(Q, &[&[1]])).unwrap(), None);
        assert!(z.solve(&Mat::zeros(Q, 2, 1)).is_err());
    }

    #[test]
    fn rref_with_fractions() {
        let a = Mat::new(
            Q,
            2,
            3,
            ["1/2", "1/3", "1", "2", "0", "-1/5"]
                .iter()
                .map(|s| Q.parse(s).unwrap())
                .collect(),
        )
        .unwrap();
        let r = a.rref();
        assert_eq!(r.pivots, vec![0, 1]);
        assert!(r.mat.get(0, 0).is_one() && r.mat.get(1, 1).is_one());
        assert!(r.mat.get(0, 1).is_zero() && r.mat.get(1, 0).is_zero());
        for v in a.kernel_basis() {
            let col = Mat::from_columns(Q, 3, &[v]);
            assert!(a.matmul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn inverse_and_complement() {
        let a = Mat::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), Mat::identity(Q, 2));
        assert!(Mat::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
        let span = Mat::from_i64(Q, &[&[1], &[1], &[0]]);
        assert_eq!(span.complement_indices(), vec![1, 2]);
        let lk = span.left_kernel();
        assert_eq!(lk.rows(), 2);
        assert!(lk.matmul(&span).unwrap().is_zero());
    }
}
