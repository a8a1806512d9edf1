use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn determinant(&self) -> Result<Rational> {
        self.require_square("determinant")?;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] / &p;
                for k in col..n {
                    let sub = &factor * &a[col * n + k];
                    a[r * n + k] -= sub;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square("inverse")?;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or_else(|| Error::Domain("matrix is singular".into()))?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for k in 0..n {
                a[(col, k)] /= &p;
                inv[(col, k)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for k in 0..n {
                    let da = &factor * &a[(col, k)];
                    a[(r, k)] -= da;
                    let di = &factor * &inv[(col, k)];
                    inv[(r, k)] -= di;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::InvalidArgument("vector length mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Kronecker product: block `(i, j)` is `self[i][j] * rhs`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for p in 0..rhs.rows {
                    for q in 0..rhs.cols {
                        out[(i * rhs.rows + p, j * rhs.cols + q)] = &self[(i, j)] * &rhs[(p, q)];
                    }
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Checks `det(A ⊗ B) = det(A)^{n_b} · det(B)^{n_a}` for square `a` (n_a×n_a)
/// and `b` (n_b×n_b), with the Kronecker product built explicitly.
pub fn kron_det_check(a: &Matrix, b: &Matrix) -> Result<bool> {
    a.require_square("kron_det_check")?;
    b.require_square("kron_det_check")?;
    let lhs = a.kron(b).determinant()?;
    let rhs = crate::rational::pow(&a.determinant()?, b.rows()) * crate::rational::pow(&b.determinant()?, a.rows());
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn determinant_small() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]).unwrap();
        assert_eq!(m.determinant().unwrap(), int(1));
        let s = Matrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.determinant().unwrap(), int(0));
        assert!(s.inverse().is_err());
        let p = Matrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(p.determinant().unwrap(), int(-1));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn kron_examples() {
        let i2 = Matrix::identity(2);
        assert!(kron_det_check(&i2, &i2).unwrap());
        assert_eq!(i2.kron(&i2), Matrix::identity(4));
        let a = Matrix::from_i64(&[&[2]]).unwrap();
        let b = Matrix::from_i64(&[&[3]]).unwrap();
        assert_eq!(a.kron(&b).determinant().unwrap(), int(6));
        assert!(kron_det_check(&a, &b).unwrap());
        let ns = Matrix::from_i64(&[&[1, 2, 3]]).unwrap();
        assert!(kron_det_check(&ns, &a).is_err());
    }

    #[test]
    fn kron_layout() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]).unwrap();
        let b = Matrix::from_i64(&[&[0, 5], &[6, 7]]).unwrap();
        let k = a.kron(&b);
        assert_eq!(k.row(0), Matrix::from_i64(&[&[0, 5, 0, 10]]).unwrap().row(0));
        assert_eq!(k.row(3), Matrix::from_i64(&[&[18, 21, 24, 28]]).unwrap().row(0));
    }
}
