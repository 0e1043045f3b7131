//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are `x1, x2, ...` and are indexed from zero internally. Terms are
//! kept in a `BTreeMap` keyed by [`Monomial`], whose derived ordering is lex
//! with `x1 > x2 > ...`, so the last key is always the leading monomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("expected {expected} substitutions, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not divisible by the divisor")]
    NotDivisible,
    #[error("polynomial of degree {0} is not a linear form")]
    NotLinear(i64),
}

/// Exponent vector with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u16) -> Self {
        let mut v: SmallVec<[u16; 8]> = SmallVec::from_elem(0, i + 1);
        v[i] = e;
        Monomial(v).trimmed()
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps)).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// One past the highest variable index with a nonzero exponent.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut v = long.0.clone();
        for (a, b) in v.iter_mut().zip(short.0.iter()) {
            *a += *b;
        }
        Monomial(v)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (a, b) in v.iter_mut().zip(other.0.iter()) {
            if *a < *b {
                return None;
            }
            *a -= *b;
        }
        Some(Monomial(v).trimmed())
    }

    /// Lowers the exponent of `var` by one.
    pub fn derive(&self, var: usize) -> Option<(u16, Monomial)> {
        let e = self.exponent(var);
        if e == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[var] -= 1;
        Some((e, Monomial(v).trimmed()))
    }

    /// Relabels variables: variable `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut v: SmallVec<[u16; 8]> = SmallVec::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let j = perm[i];
            if v.len() <= j {
                v.resize(j + 1, 0);
            }
            v[j] += e;
        }
        Monomial(v).trimmed()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A polynomial over the rationals in a universe of `nvars` variables.
///
/// Equality ignores `nvars`: two polynomials are equal iff their term maps are.
#[derive(Debug, Clone, Default)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Rational::one(), nvars)
    }

    pub fn constant(c: Rational, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    /// The variable `x_{i+1}`.
    pub fn var(i: usize, nvars: usize) -> Self {
        Self::monomial(Monomial::var(i), Rational::one(), nvars)
    }

    pub fn monomial(m: Monomial, c: Rational, nvars: usize) -> Self {
        let nvars = nvars.max(m.support_len());
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from possibly repeated terms, summing duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Same polynomial viewed in a universe of at least `nvars` variables.
    pub fn with_nvars(mut self, nvars: usize) -> Self {
        self.nvars = self.nvars.max(nvars);
        self
    }

    /// One past the highest variable index that actually occurs.
    pub fn used_nvars(&self) -> usize {
        self.terms.keys().map(Monomial::support_len).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constants and zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Leading term in lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        self.nvars = self.nvars.max(m.support_len());
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Product with a linear form; the hot loop of every expansion.
    pub fn mul_linear(&self, form: &LinearForm) -> Polynomial {
        let nvars = self.nvars.max(form.nvars());
        let mut acc: std::collections::HashMap<Monomial, Rational> =
            std::collections::HashMap::with_capacity(self.terms.len() * (form.support() + 1));
        let mut push = |m: Monomial, c: Rational| {
            use std::collections::hash_map::Entry;
            match acc.entry(m) {
                Entry::Vacant(e) => {
                    e.insert(c);
                }
                Entry::Occupied(mut e) => *e.get_mut() += c,
            }
        };
        for (m, c) in &self.terms {
            for (i, a) in form.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut v = m.0.clone();
                if v.len() <= i {
                    v.resize(i + 1, 0);
                }
                v[i] += 1;
                push(Monomial(v), c * a);
            }
            if !form.constant().is_zero() {
                push(m.clone(), c * form.constant());
            }
        }
        Polynomial {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derive(var) {
                out.add_term(dm, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Exact value at `point`; the point must cover every variable in use.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        let used = self.used_nvars();
        if point.len() < used {
            return Err(PolyError::ArityMismatch {
                expected: used.max(self.nvars),
                got: point.len(),
            });
        }
        let powers = PowerTable::new(point, self.max_exponents());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * powers.monomial(m);
        }
        Ok(acc)
    }

    fn max_exponents(&self) -> Vec<u16> {
        let mut max = vec![0u16; self.used_nvars()];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                max[i] = max[i].max(e);
            }
        }
        max
    }

    /// Value and gradient at `point`.
    pub fn evaluate_with_gradient(
        &self,
        point: &[Rational],
    ) -> Result<(Rational, Vec<Rational>), PolyError> {
        let used = self.used_nvars();
        if point.len() < used {
            return Err(PolyError::ArityMismatch {
                expected: used.max(self.nvars),
                got: point.len(),
            });
        }
        let n = point.len();
        let powers = PowerTable::new(point, self.max_exponents());
        let mut value = Rational::zero();
        // For coordinates with a nonzero value, d/dx_i of c*x^e is e_i*term/x_i,
        // so accumulating e_i*term and dividing once at the end suffices.
        let mut weighted = vec![Rational::zero(); n];
        let zero_coords: Vec<usize> = (0..used).filter(|&i| point[i].is_zero()).collect();
        let mut direct = vec![Rational::zero(); n];
        for (m, c) in &self.terms {
            let term = c * powers.monomial(m);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 && !point[i].is_zero() {
                    weighted[i] += &term * Rational::from_integer(e.into());
                }
            }
            for &i in &zero_coords {
                // Only terms linear in x_i survive at x_i = 0.
                if m.exponent(i) == 1 {
                    let mut rest = c.clone();
                    for (j, &e) in m.exponents().iter().enumerate() {
                        if j != i && e > 0 {
                            rest *= powers.get(j, e);
                        }
                    }
                    direct[i] += rest;
                }
            }
            value += term;
        }
        let grad = (0..n)
            .map(|i| {
                if point[i].is_zero() {
                    std::mem::take(&mut direct[i])
                } else {
                    &weighted[i] / &point[i]
                }
            })
            .collect();
        Ok((value, grad))
    }

    /// Substitutes `forms[i]` for variable `i` and expands.
    pub fn substitute(&self, forms: &[LinearForm]) -> Result<Polynomial, PolyError> {
        let used = self.used_nvars();
        if forms.len() < used {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                got: forms.len(),
            });
        }
        let polys: Vec<Polynomial> = forms.iter().map(LinearForm::to_polynomial).collect();
        self.substitute_polys(&polys)
    }

    /// Substitutes arbitrary polynomials for the variables.
    pub fn substitute_polys(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        let used = self.used_nvars();
        if images.len() < used {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let nvars = images.iter().map(Polynomial::nvars).max().unwrap_or(0);
        let max = self.max_exponents();
        let mut cache: Vec<Vec<Polynomial>> = max
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let mut pw = vec![Polynomial::one(nvars)];
                for k in 1..=e as usize {
                    let next = &pw[k - 1] * &images[i];
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone(), nvars);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &cache[i][e as usize];
                }
            }
            out = &out + &t;
        }
        cache.clear();
        Ok(out)
    }

    /// Swaps variables `i` and `j`.
    pub fn swap_variables(&self, i: usize, j: usize) -> Polynomial {
        let n = self.nvars.max(i + 1).max(j + 1);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        self.permute_variables(&perm)
    }

    /// Relabels variable `i` as `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Polynomial {
        Polynomial {
            nvars: self.nvars.max(perm.len()),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.permuted(perm), c.clone()))
                .collect(),
        }
    }

    /// Exact division: returns `h` with `self = divisor * h`.
    ///
    /// Runs multivariate division by leading-monomial elimination in lex
    /// order and confirms the quotient by multiplying back.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        let (lm, lc) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        let nvars = self.nvars.max(divisor.nvars);
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero(nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(lm).ok_or(PolyError::NotDivisible)?;
            let qc = rc / lc;
            for (m, c) in divisor.terms() {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quotient.add_term(qm, qc);
        }
        if &(divisor * &quotient) != self {
            return Err(PolyError::NotDivisible);
        }
        Ok(quotient.with_nvars(nvars))
    }

    /// The homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

/// Powers `point[i]^k` for every exponent a polynomial needs.
struct PowerTable {
    table: Vec<Vec<Rational>>,
}

impl PowerTable {
    fn new(point: &[Rational], max: Vec<u16>) -> Self {
        let table = max
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let mut pw = Vec::with_capacity(e as usize + 1);
                pw.push(Rational::one());
                for k in 1..=e as usize {
                    let next = &pw[k - 1] * &point[i];
                    pw.push(next);
                }
                pw
            })
            .collect();
        PowerTable { table }
    }

    fn get(&self, i: usize, e: u16) -> &Rational {
        &self.table[i][e as usize]
    }

    fn monomial(&self, m: &Monomial) -> Rational {
        let mut acc = Rational::one();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                acc *= self.get(i, e);
            }
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.nvars = out.nvars.max(rhs.nvars);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.nvars = out.nvars.max(rhs.nvars);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let nvars = self.nvars.max(rhs.nvars);
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc: std::collections::HashMap<Monomial, Rational> =
            std::collections::HashMap::with_capacity(big.terms.len() * small.terms.len());
        for (ms, cs) in &small.terms {
            for (mb, cb) in &big.terms {
                let prod = cs * cb;
                use std::collections::hash_map::Entry;
                match acc.entry(mb.mul(ms)) {
                    Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    Entry::Occupied(mut e) => *e.get_mut() += prod,
                }
            }
        }
        Polynomial {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_polynomial(self))
    }
}

/// An affine form `c0 + c1*x1 + ... + cn*xn`.
///
/// Trailing zero coefficients are trimmed, so forms compare equal regardless
/// of the variable universe they were built in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<Rational>,
    constant: Rational,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> Self {
        let mut f = LinearForm { coeffs, constant };
        f.trim();
        f
    }

    pub fn homogeneous(coeffs: Vec<Rational>) -> Self {
        Self::new(coeffs, Rational::zero())
    }

    pub fn from_integers(coeffs: &[i64], constant: i64) -> Self {
        Self::new(
            coeffs.iter().map(|&c| crate::scalar::rat(c)).collect(),
            crate::scalar::rat(constant),
        )
    }

    pub fn var(i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); i + 1];
        coeffs[i] = Rational::one();
        Self::homogeneous(coeffs)
    }

    pub fn constant_form(c: Rational) -> Self {
        Self::new(Vec::new(), c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Reads a polynomial of degree at most one as a form.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self, PolyError> {
        if p.degree() > 1 {
            return Err(PolyError::NotLinear(p.degree()));
        }
        let mut coeffs = vec![Rational::zero(); p.used_nvars()];
        let mut constant = Rational::zero();
        for (m, c) in p.terms() {
            if m.is_one() {
                constant = c.clone();
            } else {
                let i = m.support_len() - 1;
                coeffs[i] = c.clone();
            }
        }
        Ok(Self::new(coeffs, constant))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::constant(self.constant.clone(), self.nvars());
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::var(i), c.clone());
        }
        p
    }

    /// Variable coefficients (trailing zeros trimmed).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient vector padded or read out to length `n`.
    pub fn coeff_vector(&self, n: usize) -> Vec<Rational> {
        (0..n).map(|i| self.coeff(i)).collect()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    /// One past the highest variable with a nonzero coefficient.
    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    /// Number of variables with a nonzero coefficient.
    pub fn support(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = self.constant.clone();
        for (c, x) in self.coeffs.iter().zip(point) {
            if !c.is_zero() {
                acc += c * x;
            }
        }
        acc
    }

    pub fn scale(&self, s: &Rational) -> LinearForm {
        LinearForm::new(
            self.coeffs.iter().map(|c| c * s).collect(),
            &self.constant * s,
        )
    }

    /// Splits off the scalar that makes the first nonzero coefficient one
    /// (variables in index order, the constant last): `self = scalar * monic`.
    ///
    /// Returns `None` for the zero form.
    pub fn canonicalize(&self) -> Option<(Rational, LinearForm)> {
        let lead = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .or(if self.constant.is_zero() {
                None
            } else {
                Some(&self.constant)
            })?
            .clone();
        let monic = self.scale(&lead.recip());
        Some((lead, monic))
    }

    pub fn is_monic(&self) -> bool {
        self.canonicalize().is_some_and(|(s, _)| s.is_one())
    }

    /// `self` with variable `i` replaced by `inner[i]`.
    pub fn compose(&self, inner: &[LinearForm]) -> LinearForm {
        let mut acc = LinearForm::constant_form(self.constant.clone());
        for (c, g) in self.coeffs.iter().zip(inner) {
            if !c.is_zero() {
                acc = &acc + &g.scale(c);
            }
        }
        acc
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;

    fn add(self, rhs: &LinearForm) -> LinearForm {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LinearForm::new(
            (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(),
            &self.constant + &rhs.constant,
        )
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;

    fn sub(self, rhs: &LinearForm) -> LinearForm {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LinearForm::new(
            (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect(),
            &self.constant - &rhs.constant,
        )
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;

    fn neg(self) -> LinearForm {
        LinearForm::new(self.coeffs.iter().map(|c| -c).collect(), -&self.constant)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// Expands the product of the given forms.
pub fn product_of_forms(forms: &[LinearForm], nvars: usize) -> Polynomial {
    use std::collections::hash_map::Entry;
    use std::collections::HashMap;

    let n = forms.iter().map(LinearForm::nvars).max().unwrap_or(0).max(nvars);
    // Expand integer multiples of the forms in BigInt, then divide once.
    let mut denominator = BigInt::one();
    let integral: Vec<(Vec<(usize, BigInt)>, BigInt)> = forms
        .iter()
        .map(|f| {
            let lcm = f
                .coeffs()
                .iter()
                .chain([f.constant()])
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let scale = |c: &Rational| (c * Rational::from_integer(lcm.clone())).to_integer();
            let coeffs = f
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, scale(c)))
                .collect();
            denominator *= &lcm;
            (coeffs, scale(f.constant()))
        })
        .collect();
    let mut acc: HashMap<Monomial, BigInt> = HashMap::from([(Monomial::one(), BigInt::one())]);
    for (coeffs, constant) in &integral {
        let mut next: HashMap<Monomial, BigInt> = HashMap::with_capacity(acc.len() * (coeffs.len() + 1));
        let mut push = |m: Monomial, c: BigInt| match next.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => *e.get_mut() += c,
        };
        for (m, c) in &acc {
            for (i, a) in coeffs {
                let mut v = m.0.clone();
                if v.len() <= *i {
                    v.resize(i + 1, 0);
                }
                v[*i] += 1;
                push(Monomial(v), c * a);
            }
            if !constant.is_zero() {
                push(m.clone(), c * constant);
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    Polynomial {
        nvars: n,
        terms: acc
            .into_iter()
            .map(|(m, c)| (m, Rational::new(c, denominator.clone())))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::scalar::{rat, ratio};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn additive_inverse_and_telescoping() {
        assert!((&p("x1") + &p("-x1")).is_zero());
        assert_eq!(&p("x1 - x2") + &p("x2 - x3"), p("x1 - x3"));
    }

    #[test]
    fn three_factor_expansion() {
        let prod = &(&p("x1 - x2") * &p("x1 - x3")) * &p("x2 - x3");
        assert_eq!(
            prod,
            p("x1^2*x2 - x1^2*x3 - x1*x2^2 + x1*x3^2 + x2^2*x3 - x2*x3^2")
        );
        assert_eq!(&p("x1 - x2") * &p("x1 + x2"), p("x1^2 - x2^2"));
        assert!((&prod * &Polynomial::zero(3)).is_zero());
    }

    #[test]
    fn degree_conventions() {
        assert_eq!(Polynomial::zero(3).degree(), -1);
        assert_eq!(Polynomial::one(3).degree(), 0);
        assert_eq!(p("x1^2*x2 + x3").degree(), 3);
        assert!(!p("x1^2 + x2").is_homogeneous());
    }

    #[test]
    fn substitution_examples() {
        let forms = vec![
            LinearForm::from_integers(&[1, 1], 0),
            LinearForm::from_integers(&[1, -1], 0),
        ];
        assert_eq!(p("x1*x2").substitute(&forms).unwrap(), p("x1^2 - x2^2"));
        let swap = vec![LinearForm::var(1), LinearForm::var(0)];
        assert_eq!(p("x1 - x2").substitute(&swap).unwrap(), p("x2 - x1"));
        assert!(p("x1*x2*x3").substitute(&forms).is_err());
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x1^2*x2").partial_derivative(0), p("2*x1*x2"));
        assert!(p("x1*x2").partial_derivative(2).is_zero());
    }

    #[test]
    fn exact_division() {
        assert_eq!(
            p("x1^2 - x2^2").divide_exact(&p("x1 - x2")).unwrap(),
            p("x1 + x2")
        );
        assert_eq!(
            p("x1^2 + x2").divide_exact(&p("x1")),
            Err(PolyError::NotDivisible)
        );
        assert_eq!(
            p("x1").divide_exact(&Polynomial::zero(1)),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn evaluation() {
        let f = p("x1 - x2");
        assert_eq!(f.evaluate(&[rat(5), rat(5)]).unwrap(), rat(0));
        let g = p("3 + x1*x2 - 1/2*x3^2");
        assert_eq!(g.evaluate(&[rat(0), rat(0), rat(0)]).unwrap(), rat(3));
        assert!(g.evaluate(&[rat(1)]).is_err());
    }

    #[test]
    fn gradient_matches_partials() {
        let f = p("x1^3*x2 - 2*x2^2*x3 + 5*x1 - 7");
        for point in [
            vec![rat(2), ratio(-1, 3), rat(4)],
            vec![rat(0), rat(3), rat(-2)],
            vec![rat(1), rat(0), rat(0)],
        ] {
            let (v, g) = f.evaluate_with_gradient(&point).unwrap();
            assert_eq!(v, f.evaluate(&point).unwrap());
            for (i, gi) in g.iter().enumerate() {
                assert_eq!(gi, &f.partial_derivative(i).evaluate(&point).unwrap());
            }
        }
    }

    #[test]
    fn canonical_forms() {
        let f = LinearForm::from_integers(&[0, -2, 4], 6);
        let (s, m) = f.canonicalize().unwrap();
        assert_eq!(s, rat(-2));
        assert_eq!(m, LinearForm::from_integers(&[0, 1, -2], -3));
        let c = LinearForm::constant_form(rat(5));
        assert_eq!(c.canonicalize().unwrap().1, LinearForm::constant_form(rat(1)));
        assert!(LinearForm::from_integers(&[0, 0], 0).canonicalize().is_none());
        assert_eq!(LinearForm::from_integers(&[1, 0, 0], 0), LinearForm::var(0));
    }

    #[test]
    fn lex_leading_monomial() {
        let f = p("x2^5 + x1*x3 + x1*x2");
        assert_eq!(f.leading_term().unwrap().0, &Monomial::from_exponents(&[1, 1]));
    }
}
