//! Exact linear algebra by Gaussian elimination.

use std::ops::{Mul, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::LinearForm;
use crate::scalar::{Field, PrimeField, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
}

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<Vec<Rational>>,
    ncols: usize,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            rows: vec![vec![Rational::zero(); ncols]; nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(MatrixError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows, ncols })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::scalar::rat(v)).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.rows[i][j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ncols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.rows[j][i] = v.clone();
            }
        }
        t
    }

    /// Row `i` read as the homogeneous form `sum_j a_ij x_j`.
    pub fn row_form(&self, i: usize) -> LinearForm {
        LinearForm::homogeneous(self.rows[i].clone())
    }

    pub fn row_forms(&self) -> Vec<LinearForm> {
        (0..self.nrows()).map(|i| self.row_form(i)).collect()
    }

    pub fn mul_checked(&self, rhs: &Matrix) -> Result<Matrix, MatrixError> {
        if self.ncols != rhs.nrows() {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows(),
                self.ncols,
                rhs.nrows(),
                rhs.ncols
            )));
        }
        let mut out = Matrix::zeros(self.nrows(), rhs.ncols);
        for i in 0..self.nrows() {
            for k in 0..self.ncols {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    let b = &rhs.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub_checked(&self, rhs: &Matrix) -> Result<Matrix, MatrixError> {
        if self.nrows() != rhs.nrows() || self.ncols != rhs.ncols {
            return Err(MatrixError::DimensionMismatch("shape differs".into()));
        }
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Ok(Matrix {
            rows,
            ncols: self.ncols,
        })
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|v| v * s).collect())
                .collect(),
            ncols: self.ncols,
        }
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.ncols);
        self.rows.iter().filter(|r| basis.insert(r)).count()
    }

    /// Rank over the requested field; over a prime field this is a lower
    /// bound on the rational rank.
    pub fn rank_in(&self, field: Field) -> usize {
        match field {
            Field::Rational => self.rank(),
            Field::Prime(p) => {
                let mut basis = PrimeEchelonBasis::new(PrimeField::new(p), self.ncols);
                self.rows.iter().filter(|r| basis.insert_rational(r)).count()
            }
        }
    }

    pub fn determinant(&self) -> Result<Rational, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::DimensionMismatch("determinant of non-square".into()));
        }
        let n = self.nrows();
        let mut a = self.rows.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &p;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::DimensionMismatch("inverse of non-square".into()));
        }
        let n = self.nrows();
        let mut a = self.rows.clone();
        let mut inv = Matrix::identity(n).rows;
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(MatrixError::Singular)?;
            a.swap(piv, col);
            inv.swap(piv, col);
            let p = a[col][col].recip();
            for c in 0..n {
                a[col][c] *= &p;
                inv[col][c] *= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let da = &factor * &a[col][c];
                    a[r][c] -= da;
                    let di = &factor * &inv[col][c];
                    inv[r][c] -= di;
                }
            }
        }
        Ok(Matrix { rows: inv, ncols: n })
    }

    /// Some solution of `self * x = b`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
        if b.len() != self.nrows() {
            return Err(MatrixError::DimensionMismatch(format!(
                "{} rows but right-hand side of length {}",
                self.nrows(),
                b.len()
            )));
        }
        let n = self.ncols;
        let mut a: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .zip(b)
            .map(|(r, v)| {
                let mut row = r.clone();
                row.push(v.clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(piv) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(piv, row);
            let p = a[row][col].recip();
            for c in col..=n {
                a[row][c] *= &p;
            }
            for r in 0..a.len() {
                if r == row || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in col..=n {
                    let d = &factor * &a[row][c];
                    a[r][c] -= d;
                }
            }
            pivots.push(col);
            row += 1;
        }
        if a[row..].iter().any(|r| !r[n].is_zero()) {
            return Err(MatrixError::Inconsistent);
        }
        let mut x = vec![Rational::zero(); n];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = a[r][n].clone();
        }
        Ok(x)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.mul_checked(rhs).expect("matrix shapes agree")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.sub_checked(rhs).expect("matrix shapes agree")
    }
}

/// Dimension of the span of the coefficient vectors of `forms` (constants
/// count as one more coordinate).
pub fn span_dimension_forms(forms: &[LinearForm]) -> usize {
    let n = forms.iter().map(LinearForm::nvars).max().unwrap_or(0);
    let mut basis = EchelonBasis::new(n + 1);
    forms
        .iter()
        .filter(|f| {
            let mut v = f.coeff_vector(n);
            v.push(f.constant().clone());
            basis.insert(&v)
        })
        .count()
}

/// Dimension of the span of equal-length vectors.
pub fn span_dimension(vectors: &[Vec<Rational>]) -> Result<usize, MatrixError> {
    let width = vectors.first().map_or(0, Vec::len);
    if vectors.iter().any(|v| v.len() != width) {
        return Err(MatrixError::DimensionMismatch("vectors of different lengths".into()));
    }
    let mut basis = EchelonBasis::new(width);
    Ok(vectors.iter().filter(|v| basis.insert(v)).count())
}

/// Incrementally built row-echelon basis over the rationals.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    width: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new(width: usize) -> Self {
        EchelonBasis {
            width,
            rows: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        v.resize(self.width, Rational::zero());
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*pivot) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in v.iter_mut().skip(pivot) {
            *x *= &inv;
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Row-echelon basis over a prime field.
#[derive(Debug, Clone)]
pub struct PrimeEchelonBasis {
    field: PrimeField,
    width: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl PrimeEchelonBasis {
    pub fn new(field: PrimeField, width: usize) -> Self {
        PrimeEchelonBasis {
            field,
            width,
            rows: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Inserts the image of a rational vector. Entries whose denominator
    /// vanishes mod p make the image undefined; such vectors are skipped.
    pub fn insert_rational(&mut self, v: &[Rational]) -> bool {
        let image: Option<Vec<u64>> = v.iter().map(|x| self.field.reduce(x)).collect();
        match image {
            Some(image) => self.insert(image),
            None => false,
        }
    }

    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let f = self.field;
        v.resize(self.width, 0);
        for (pivot, row) in &self.rows {
            let factor = v[*pivot];
            if factor == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row).skip(*pivot) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(factor, r));
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pivot]);
        for x in v.iter_mut().skip(pivot) {
            *x = f.mul(*x, inv);
        }
        self.rows.push((pivot, v));
        true
    }
}
