//! Brute-force complexity measures: restricted evaluation dimension (RED),
//! dimensions of partial-derivative spaces, and the fan-in bound they give.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{EchelonBasis, PrimeEchelonBasis};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{Field, PrimeField, Rational};

/// Default limit on the `3^k` assignments enumerated by [`red`].
pub const DEFAULT_RED_CAP: u64 = 531_441;

/// Default limit on `n^k` for [`pderiv_dim`].
pub const DEFAULT_PDERIV_CAP: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("{needed} exceeds the enumeration cap {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("variable index {0} out of range")]
    BadIndex(usize),
    #[error("subset has a repeated index")]
    RepeatedIndex,
    #[error("{0} is out of range")]
    OutOfRange(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Value {
    Zero,
    One,
    Star,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Value::Zero => "0",
            Value::One => "1",
            Value::Star => "*",
        })
    }
}

/// Values in `{0, 1, *}` for the variables of a subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub subset: Vec<usize>,
    pub values: Vec<Value>,
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .subset
            .iter()
            .zip(&self.values)
            .map(|(i, v)| format!("x{}={v}", i + 1))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Sets the assigned variables to 0 or 1 and leaves the starred ones alive.
pub fn restrict(f: &Polynomial, a: &Assignment) -> Polynomial {
    let mut out = Polynomial::zero(f.nvars());
    'terms: for (m, c) in f.terms() {
        let mut exps = m.exponents().to_vec();
        for (&i, v) in a.subset.iter().zip(&a.values) {
            let e = exps.get(i).copied().unwrap_or(0);
            match v {
                Value::Star => {}
                Value::Zero if e > 0 => continue 'terms,
                Value::Zero => {}
                Value::One => {
                    if e > 0 {
                        exps[i] = 0;
                    }
                }
            }
        }
        out.add_term(Monomial::from_exponents(&exps), c.clone());
    }
    out
}

fn validate_subset(subset: &[usize], nvars: usize) -> Result<(), MeasureError> {
    let mut seen = HashSet::new();
    for &i in subset {
        if i >= nvars {
            return Err(MeasureError::BadIndex(i));
        }
        if !seen.insert(i) {
            return Err(MeasureError::RepeatedIndex);
        }
    }
    Ok(())
}

/// All `3^k` assignments of `subset`, in lex order `0 < 1 < *`.
pub fn assignments(subset: &[usize]) -> impl Iterator<Item = Assignment> + '_ {
    let k = subset.len() as u32;
    (0..3u64.pow(k)).map(move |mut code| {
        let mut values = vec![Value::Zero; k as usize];
        for slot in values.iter_mut().rev() {
            *slot = [Value::Zero, Value::One, Value::Star][(code % 3) as usize];
            code /= 3;
        }
        Assignment {
            subset: subset.to_vec(),
            values,
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedReport {
    pub dimension: usize,
    pub assignments: usize,
    /// Assignments whose restrictions form a basis of the span.
    pub basis: Vec<Assignment>,
}

/// Rank of coefficient vectors, incrementally, over the chosen field.
enum RankBasis {
    Rational(EchelonBasis),
    Prime(PrimeEchelonBasis),
}

impl RankBasis {
    fn new(field: Field, width: usize) -> Self {
        match field {
            Field::Rational => RankBasis::Rational(EchelonBasis::new(width)),
            Field::Prime(p) => RankBasis::Prime(PrimeEchelonBasis::new(PrimeField::new(p), width)),
        }
    }

    fn insert(&mut self, v: &[Rational]) -> bool {
        match self {
            RankBasis::Rational(b) => b.insert(v),
            RankBasis::Prime(b) => b.insert_rational(v),
        }
    }
}

/// Rank of a family of polynomials; returns the indices of a basis.
fn polynomial_rank(polys: &[&Polynomial], field: Field) -> Vec<usize> {
    let mut columns: HashMap<&Monomial, usize> = HashMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = columns.len();
            columns.entry(m).or_insert(next);
        }
    }
    let mut basis = RankBasis::new(field, columns.len());
    let mut picked = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        let mut v = vec![Rational::zero(); columns.len()];
        for (m, c) in p.terms() {
            v[columns[m]] = c.clone();
        }
        if basis.insert(&v) {
            picked.push(i);
        }
    }
    picked
}

/// Dimension of the span of every restriction of `f` on `subset`.
pub fn red(f: &Polynomial, subset: &[usize], cap: u64, field: Field) -> Result<RedReport, MeasureError> {
    validate_subset(subset, f.nvars().max(f.used_nvars()))?;
    let needed = 3u128.pow(subset.len() as u32);
    if needed > cap as u128 {
        return Err(MeasureError::CapExceeded { needed, cap });
    }
    let mut seen: HashSet<Polynomial> = HashSet::new();
    let mut distinct: Vec<(Assignment, Polynomial)> = Vec::new();
    let mut count = 0;
    for a in assignments(subset) {
        count += 1;
        let r = restrict(f, &a);
        if !r.is_zero() && seen.insert(r.clone()) {
            distinct.push((a, r));
        }
    }
    let polys: Vec<&Polynomial> = distinct.iter().map(|(_, p)| p).collect();
    let picked = polynomial_rank(&polys, field);
    Ok(RedReport {
        dimension: picked.len(),
        assignments: count,
        basis: picked.into_iter().map(|i| distinct[i].0.clone()).collect(),
    })
}

/// A certified lower bound on `red(f, subset)` from the `2^k` assignments in
/// `{1, *}^k`: restrictions with pairwise distinct leading monomials are
/// independent. Variables of `subset` are moved to the front of the lex
/// order first, which leaves the rank unchanged.
pub fn red_leading_monomial_bound(f: &Polynomial, subset: &[usize]) -> Result<usize, MeasureError> {
    let n = f.nvars().max(f.used_nvars());
    validate_subset(subset, n)?;
    let mut perm = vec![usize::MAX; n];
    for (pos, &i) in subset.iter().enumerate() {
        perm[i] = pos;
    }
    for (next, slot) in (subset.len()..).zip(perm.iter_mut().filter(|p| **p == usize::MAX)) {
        *slot = next;
    }
    let g = f.permute_variables(&perm);
    let front: Vec<usize> = (0..subset.len()).collect();
    let k = subset.len() as u32;
    let mut leading = HashSet::new();
    for mask in 0u64..(1 << k) {
        let values = (0..k)
            .map(|b| if mask >> b & 1 == 1 { Value::Star } else { Value::One })
            .collect();
        let r = restrict(
            &g,
            &Assignment {
                subset: front.clone(),
                values,
            },
        );
        if let Some((m, _)) = r.leading_term() {
            leading.insert(m.clone());
        }
    }
    Ok(leading.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubadditivityReport {
    pub red_f: usize,
    pub red_g: usize,
    pub red_sum: usize,
}

impl SubadditivityReport {
    pub fn holds(&self) -> bool {
        self.red_sum <= self.red_f + self.red_g
    }
}

/// Computes `red` of `f`, `g` and `f + g` on the same subset.
pub fn red_subadditivity_check(
    f: &Polynomial,
    g: &Polynomial,
    subset: &[usize],
    cap: u64,
    field: Field,
) -> Result<SubadditivityReport, MeasureError> {
    let n = f.nvars().max(g.nvars());
    let f = f.clone().with_nvars(n);
    let g = g.clone().with_nvars(n);
    let sum = &f + &g;
    Ok(SubadditivityReport {
        red_f: red(&f, subset, cap, field)?.dimension,
        red_g: red(&g, subset, cap, field)?.dimension,
        red_sum: red(&sum, subset, cap, field)?.dimension,
    })
}

/// Multisets of size `k` from `0..n`, as sorted index vectors.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Dimension of the span of all order-`k` partial derivatives of `f`.
///
/// Mixed partials commute, so one derivative per multiset of directions is
/// enough.
pub fn pderiv_dim(f: &Polynomial, k: usize, cap: u64, field: Field) -> Result<usize, MeasureError> {
    let n = f.nvars().max(f.used_nvars());
    let needed = (n as u128).saturating_pow(k as u32);
    if needed > cap as u128 {
        return Err(MeasureError::CapExceeded { needed, cap });
    }
    let partials: Vec<Polynomial> = multisets(n, k)
        .into_iter()
        .map(|dirs| dirs.iter().fold(f.clone(), |p, &i| p.partial_derivative(i)))
        .filter(|p| !p.is_zero())
        .collect();
    let refs: Vec<&Polynomial> = partials.iter().collect();
    Ok(polynomial_rank(&refs, field).len())
}

/// `ceil((2^k - 1) / (k + 1)^2)`: the least top fan-in of a sum of
/// projections of class proj equal to `Sym_{n,k}`, given `red <= (k+1)^2`
/// for each summand and `red >= 2^k - 1` for `Sym_{n,k}`.
pub fn fanin_lower_bound(k: u32) -> Result<u128, MeasureError> {
    if k == 0 || k > 120 {
        return Err(MeasureError::OutOfRange(format!("k = {k}")));
    }
    let num = (1u128 << k) - 1;
    let den = (k as u128 + 1).pow(2);
    Ok(num.div_ceil(den))
}

/// `Sym_{n,k}`: the sum of all multilinear monomials of degree `k`.
pub fn elementary_symmetric(n: usize, k: usize) -> Result<Polynomial, MeasureError> {
    if k > n {
        return Err(MeasureError::OutOfRange(format!("k = {k} > n = {n}")));
    }
    let mut out = Polynomial::zero(n);
    let mut chosen = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, chosen: &mut Vec<usize>, out: &mut Polynomial) {
        if chosen.len() == k {
            let mut exps = vec![0u16; n];
            for &i in chosen.iter() {
                exps[i] = 1;
            }
            out.add_term(Monomial::from_exponents(&exps), Rational::one());
            return;
        }
        for i in start..n {
            chosen.push(i);
            go(i + 1, n, k, chosen, out);
            chosen.pop();
        }
    }
    go(0, n, k, &mut chosen, &mut out);
    Ok(out)
}

/// `Pow_{n,d} = x_1^d + ... + x_n^d`.
pub fn power_symmetric(n: usize, d: u32) -> Polynomial {
    Polynomial::from_terms(
        n,
        (0..n).map(|i| (Monomial::var_pow(i, d as u16), Rational::one())),
    )
}
