//! Square matrices over a field. Row `i` holds the coefficients of
//! `(x_i)λ = Σ_j a_ij x_j`, so the matrix of a composite `λμ` is `A·B`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    n: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::diagonal(field, &vec![field.one(); n])
    }

    pub fn diagonal(field: &Field, d: &[Scalar]) -> Matrix {
        let n = d.len();
        let mut rows = vec![vec![field.zero(); n]; n];
        for (i, v) in d.iter().enumerate() {
            rows[i][i] = v.clone();
        }
        Matrix { field: field.clone(), n, rows }
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::ArityMismatch { expected: n, found: r.len() });
        }
        if rows.iter().flatten().any(|v| !field.contains(v)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field: field.clone(), n, rows })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.rows[i][j] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| {
            r.iter().enumerate().all(|(j, v)| if i == j { self.field.is_one(v) } else { self.field.is_zero(v) })
        })
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, v)| i == j || self.field.is_zero(v)))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let f = &self.field;
        let mut rows = vec![vec![f.zero(); self.n]; self.n];
        for i in 0..self.n {
            for k in 0..self.n {
                let a = &self.rows[i][k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..self.n {
                    rows[i][j] = f.add(&rows[i][j], &f.mul(a, &other.rows[k][j]));
                }
            }
        }
        Matrix { field: f.clone(), n: self.n, rows }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
            .collect()
    }

    /// Gaussian elimination; returns the row-echelon determinant.
    pub fn det(&self) -> Scalar {
        let f = &self.field;
        let mut m = self.rows.clone();
        let mut det = f.one();
        for col in 0..self.n {
            let Some(piv) = (col..self.n).find(|&r| !f.is_zero(&m[r][col])) else {
                return f.zero();
            };
            if piv != col {
                m.swap(piv, col);
                det = f.neg(&det);
            }
            let p = m[col][col].clone();
            det = f.mul(&det, &p);
            let pinv = f.inv(&p).expect("nonzero pivot");
            for r in col + 1..self.n {
                let factor = f.mul(&m[r][col], &pinv);
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..self.n {
                    let sub = f.mul(&factor, &m[col][c]);
                    m[r][c] = f.sub(&m[r][c], &sub);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let f = &self.field;
        let n = self.n;
        let mut m = self.rows.clone();
        let mut inv = Matrix::identity(f, n).rows;
        for col in 0..n {
            let piv = (col..n).find(|&r| !f.is_zero(&m[r][col])).ok_or(Error::Singular)?;
            m.swap(piv, col);
            inv.swap(piv, col);
            let pinv = f.inv(&m[col][col])?;
            for c in 0..n {
                m[col][c] = f.mul(&m[col][c], &pinv);
                inv[col][c] = f.mul(&inv[col][c], &pinv);
            }
            for r in 0..n {
                if r == col || f.is_zero(&m[r][col]) {
                    continue;
                }
                let factor = m[r][col].clone();
                for c in 0..n {
                    let a = f.mul(&factor, &m[col][c]);
                    m[r][c] = f.sub(&m[r][c], &a);
                    let b = f.mul(&factor, &inv[col][c]);
                    inv[r][c] = f.sub(&inv[r][c], &b);
                }
            }
        }
        Ok(Matrix { field: f.clone(), n, rows: inv })
    }

    /// Multiplies column `j` by `c`, i.e. right-multiplies by `diag(1,..,c,..,1)`.
    pub fn scale_column(&self, j: usize, c: &Scalar) -> Matrix {
        let mut out = self.clone();
        for r in out.rows.iter_mut() {
            r[j] = self.field.mul(&r[j], c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let f = Field::rationals();
        let m = Matrix::from_rows(&f, vec![vec![f.from_i64(2), f.from_i64(1)], vec![f.from_i64(7), f.from_i64(4)]]).unwrap();
        assert_eq!(m.det(), f.from_i64(1));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = Matrix::from_rows(&f, vec![vec![f.from_i64(1), f.from_i64(2)], vec![f.from_i64(2), f.from_i64(4)]]).unwrap();
        assert_eq!(sing.det(), f.zero());
        assert_eq!(sing.inverse(), Err(Error::Singular));
    }

    #[test]
    fn det_with_row_swap_over_f4() {
        let f = Field::finite(4).unwrap();
        let g = f.generator().unwrap();
        let m = Matrix::from_rows(&f, vec![vec![f.zero(), g.clone()], vec![f.one(), f.one()]]).unwrap();
        // det = 0*1 - g*1 = -g = g in characteristic 2
        assert_eq!(m.det(), g);
    }
}
