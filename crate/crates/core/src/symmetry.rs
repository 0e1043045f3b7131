//! Symmetries of the Vandermonde polynomial and its Lie algebra.
//!
//! Every symmetry has the shape `P + v⊗1`, where `P` is the matrix of an even
//! permutation and `v⊗1` is the rank-one matrix whose row `i` is constantly
//! `v_i`. The Lie algebra consists of the matrices `v⊗1` themselves.

use std::fmt;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::linalg::{span_dimension, Matrix};
use crate::poly::{LinearForm, Polynomial};
use crate::scalar::{rat, Rational};
use crate::vandermonde::{pairwise_differences, vd, vd_of_forms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    Shape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrices of different sizes")]
    SizeMismatch,
    #[error("need n >= {0}")]
    TooSmall(usize),
}

fn check_square(a: &Matrix, n: usize) -> Result<(), SymmetryError> {
    if a.nrows() != n || a.ncols() != n {
        return Err(SymmetryError::Shape {
            expected: n,
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(())
}

/// All permutations of `0..n` in lex order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![perm.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
        out.push(perm.clone());
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Parity by cycle decomposition: a cycle of length `k` contributes `k - 1`
/// transpositions.
pub fn parity(perm: &[usize]) -> Parity {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

pub fn is_even(perm: &[usize]) -> bool {
    parity(perm) == Parity::Even
}

/// `P` with `P[i][perm[i]] = 1`, so `(P x)_i = x_{perm(i)}`.
pub fn permutation_matrix(perm: &[usize]) -> Matrix {
    let n = perm.len();
    let mut m = Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        m.set(i, j, Rational::one());
    }
    m
}

/// The matrix `v⊗1`.
pub fn outer_one(v: &[Rational]) -> Matrix {
    let n = v.len();
    Matrix::from_rows(v.iter().map(|vi| vec![vi.clone(); n]).collect()).expect("square")
}

/// `P_perm + v⊗1`.
pub fn reassemble(v: &[Rational], perm: &[usize]) -> Matrix {
    let mut m = outer_one(v);
    for (i, &j) in perm.iter().enumerate() {
        let bumped = m.get(i, j) + Rational::one();
        m.set(i, j, bumped);
    }
    m
}

/// The forms substituted for `x_1, ..., x_n` under `A`: matrices act on
/// row vectors, so the `j`-th new variable is `sum_i A[i][j] x_i`. With this
/// action `v⊗1` adds the single form `sum_i v_i x_i` to every variable.
pub fn image_forms(a: &Matrix) -> Vec<LinearForm> {
    a.transpose().row_forms()
}

/// `VD(x A)` as its list of linear factors.
fn transformed_factors(a: &Matrix) -> Vec<LinearForm> {
    pairwise_differences(&image_forms(a))
}

/// Whether `VD(x A) = VD(x)` for an invertible `A`.
///
/// Small sizes compare full expansions. From `n = 7` on the comparison is
/// made factor by factor, which is exact by unique factorization: both sides
/// are products of linear forms, so they agree iff the multisets of monic
/// factors agree and the scalars match.
pub fn is_symmetry(a: &Matrix, n: usize) -> Result<bool, SymmetryError> {
    check_square(a, n)?;
    if a.determinant().expect("square").is_zero() {
        return Ok(false);
    }
    if n <= 6 {
        let vdn = vd(n).expect("n >= 1 for a nonempty matrix");
        return Ok(vd_of_forms(&image_forms(a)) == vdn);
    }
    let identity: Vec<LinearForm> = (0..n).map(LinearForm::var).collect();
    Ok(crate::equivalence::factored_ratio(&transformed_factors(a), &pairwise_differences(&identity))
        == Some(Rational::one()))
}

/// Why a matrix is not of the form `P + v⊗1` with `P` even and invertible.
#[derive(Debug, Clone, PartialEq, Eq, Error, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotInGroup {
    #[error("row {0} does not have the shape v_i, ..., v_i + 1, ..., v_i")]
    RowShape(usize),
    #[error("the +1 positions do not form a permutation")]
    NotPermutation,
    #[error("the permutation is odd")]
    OddPermutation,
    #[error("the matrix is singular (sum of v equals -1)")]
    Singular,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryDecomposition {
    pub v: Vec<Rational>,
    pub perm: Vec<usize>,
    pub parity: Parity,
}

impl SymmetryDecomposition {
    pub fn matrix(&self) -> Matrix {
        reassemble(&self.v, &self.perm)
    }
}

/// Splits a square matrix as `P + v⊗1`.
pub fn decompose_symmetry(a: &Matrix) -> Result<Result<SymmetryDecomposition, NotInGroup>, SymmetryError> {
    let n = a.nrows();
    check_square(a, n)?;
    let mut v = Vec::with_capacity(n);
    let mut perm = Vec::with_capacity(n);
    for (i, row) in a.rows().iter().enumerate() {
        let Some((vi, col)) = row_shape(row) else {
            return Ok(Err(NotInGroup::RowShape(i)));
        };
        v.push(vi);
        perm.push(col);
    }
    let mut hit = vec![false; n];
    for &j in &perm {
        if std::mem::replace(&mut hit[j], true) {
            return Ok(Err(NotInGroup::NotPermutation));
        }
    }
    let parity = parity(&perm);
    if parity == Parity::Odd {
        return Ok(Err(NotInGroup::OddPermutation));
    }
    // det(P + v⊗1) = sgn(P) (1 + sum v)
    let sum: Rational = v.iter().sum();
    if sum == -Rational::one() {
        return Ok(Err(NotInGroup::Singular));
    }
    let d = SymmetryDecomposition { v, perm, parity };
    debug_assert_eq!(&d.matrix(), a);
    Ok(Ok(d))
}

/// `(v_i, j)` when the row is constantly `v_i` except for `v_i + 1` at `j`.
fn row_shape(row: &[Rational]) -> Option<(Rational, usize)> {
    if row.len() == 1 {
        return Some((&row[0] - Rational::one(), 0));
    }
    let max = row.iter().max()?;
    let min = row.iter().min()?;
    if max - min != Rational::one() {
        return None;
    }
    let mut tops = row.iter().enumerate().filter(|(_, x)| *x == max);
    let (j, _) = tops.next()?;
    if tops.next().is_some() {
        return None;
    }
    Some((min.clone(), j))
}

/// A random symmetry: an even permutation plus a small integer `v` with
/// `sum v != -1`.
pub fn sample_symmetry<R: Rng>(n: usize, rng: &mut R) -> Result<Matrix, SymmetryError> {
    if n < 2 {
        return Err(SymmetryError::TooSmall(2));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    if !is_even(&perm) {
        perm.swap(0, 1);
    }
    loop {
        let v: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect();
        let m = reassemble(&v, &perm);
        if m.rank() == n {
            return Ok(m);
        }
    }
}

/// The Lie algebra element `v⊗1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    pub v: Vec<Rational>,
}

impl LieElement {
    pub fn new(v: Vec<Rational>) -> Self {
        LieElement { v }
    }

    /// The basis element `e_i⊗1` in dimension `n`.
    pub fn basis(i: usize, n: usize) -> Self {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        LieElement { v }
    }

    pub fn matrix(&self) -> Matrix {
        outer_one(&self.v)
    }

    /// Reads `v` off a matrix whose rows are each constant.
    pub fn from_matrix(a: &Matrix) -> Option<Self> {
        a.rows()
            .iter()
            .map(|row| {
                let first = row.first()?;
                row.iter().all(|x| x == first).then(|| first.clone())
            })
            .collect::<Option<Vec<_>>>()
            .map(LieElement::new)
    }

    /// `[v⊗1, w⊗1] = ((sum w) v - (sum v) w)⊗1`.
    pub fn bracket(&self, other: &LieElement) -> LieElement {
        let sv: Rational = self.v.iter().sum();
        let sw: Rational = other.v.iter().sum();
        LieElement::new(
            self.v
                .iter()
                .zip(&other.v)
                .map(|(a, b)| &sw * a - &sv * b)
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LieCheck {
    /// Every row of the matrix is constant.
    pub structural: bool,
    /// The first-order part of `VD(x (I + εA))` vanishes.
    pub first_order: bool,
}

impl LieCheck {
    pub fn agree(&self) -> bool {
        self.structural == self.first_order
    }

    pub fn is_member(&self) -> bool {
        self.structural && self.first_order
    }
}

/// A polynomial over the dual numbers, `p0 + ε p1` with `ε^2 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPolynomial {
    pub value: Polynomial,
    pub epsilon: Polynomial,
}

impl DualPolynomial {
    pub fn one(nvars: usize) -> Self {
        DualPolynomial {
            value: Polynomial::one(nvars),
            epsilon: Polynomial::zero(nvars),
        }
    }

    /// Multiplies by the dual linear form `u + ε w`.
    pub fn mul_dual_form(&self, u: &LinearForm, w: &LinearForm) -> Self {
        let value = self.value.mul_linear(u);
        let epsilon = &self.epsilon.mul_linear(u) + &self.value.mul_linear(w);
        DualPolynomial { value, epsilon }
    }
}

/// `VD(x (I + εA))` expanded over the dual numbers.
pub fn vd_dual_expansion(a: &Matrix) -> DualPolynomial {
    let n = a.nrows();
    let rows = image_forms(a);
    let mut acc = DualPolynomial::one(n);
    for i in 0..n {
        for j in i + 1..n {
            let u = &LinearForm::var(i) - &LinearForm::var(j);
            let w = &rows[i] - &rows[j];
            acc = acc.mul_dual_form(&u, &w);
        }
    }
    acc
}

/// Runs the structural and the first-order membership checks.
pub fn verify_lie_member(a: &Matrix, n: usize) -> Result<LieCheck, SymmetryError> {
    check_square(a, n)?;
    Ok(LieCheck {
        structural: LieElement::from_matrix(a).is_some(),
        first_order: vd_dual_expansion(a).epsilon.is_zero(),
    })
}

/// `AB - BA`.
pub fn lie_bracket(a: &Matrix, b: &Matrix) -> Result<Matrix, SymmetryError> {
    if !a.is_square() || a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return Err(SymmetryError::SizeMismatch);
    }
    Ok(&(a * b) - &(b * a))
}

/// Dimension of `span{[e_i⊗1, B] : i}`, with brackets flattened to vectors.
pub fn ideal_dimension(b: &Matrix) -> Result<usize, SymmetryError> {
    let n = b.nrows();
    let vectors = (0..n)
        .map(|i| {
            let c = lie_bracket(&LieElement::basis(i, n).matrix(), b)?;
            Ok(c.rows().iter().flatten().cloned().collect())
        })
        .collect::<Result<Vec<Vec<Rational>>, SymmetryError>>()?;
    Ok(span_dimension(&vectors).expect("equal lengths"))
}
