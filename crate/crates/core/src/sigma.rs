//! Polynomials as linear combinations of Vandermonde projections.
//!
//! A univariate `f` of degree `d` is a combination of
//! `g_i = VD(x, b_1, ..., b_{d-i})`, `i = 0..=d`: `g_i` has degree `d - i` with
//! leading coefficient `VD(b_1, ..., b_{d-i}) != 0`, so the coefficients come
//! out of a triangular solve. Monomials are first written as signed sums of
//! powers of linear forms, which reduces the multivariate case to the
//! univariate one with `x` replaced by a form.

use std::collections::HashSet;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{LinearForm, Monomial, Polynomial};
use crate::scalar::{rat, Rational};
use crate::vandermonde::{expand_projection, is_vd_degree, Entry, ProjectionClass, VdProjectionDescriptor};

/// Refuse monomials above this degree by default.
pub const DEFAULT_DEGREE_CAP: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error("nodes must be pairwise distinct")]
    RepeatedNodes,
    #[error("degree {degree} needs {degree} nodes, got {got}")]
    NotEnoughNodes { degree: usize, got: usize },
    #[error("degree {degree} exceeds the cap {cap}")]
    CapExceeded { degree: u32, cap: u32 },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("reconstruction check failed")]
    VerificationFailed,
}

/// Pairwise-distinct constants `b_1, ..., b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    betas: Vec<Rational>,
}

impl NodeSet {
    pub fn new(betas: Vec<Rational>) -> Result<Self, SigmaError> {
        let distinct: HashSet<&Rational> = betas.iter().collect();
        if distinct.len() != betas.len() {
            return Err(SigmaError::RepeatedNodes);
        }
        Ok(NodeSet { betas })
    }

    /// `1, 2, ..., k`.
    pub fn default_for(k: usize) -> Self {
        NodeSet {
            betas: (1..=k as i64).map(rat).collect(),
        }
    }

    pub fn betas(&self) -> &[Rational] {
        &self.betas
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaTerm {
    pub alpha: Rational,
    pub descriptor: VdProjectionDescriptor,
}

/// `sum alpha_i * VD(descriptor_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaVdDecomposition {
    pub class: ProjectionClass,
    pub terms: Vec<SigmaTerm>,
}

impl SigmaVdDecomposition {
    fn empty(class: ProjectionClass) -> Self {
        SigmaVdDecomposition {
            class,
            terms: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::zero(0);
        for t in &self.terms {
            acc = &acc + &expand_projection(&t.descriptor).scale(&t.alpha);
        }
        acc
    }

    pub fn reconstructs(&self, target: &Polynomial) -> bool {
        &self.expand() == target
    }

    fn checked(self, target: &Polynomial) -> Result<Self, SigmaError> {
        if self.reconstructs(target) {
            Ok(self)
        } else {
            Err(SigmaError::VerificationFailed)
        }
    }
}

/// Coefficients of `f = sum_i alpha_i g_i` where `g_i = VD(x, b_1..b_{d-i})`
/// with `x` any form; `coeffs` is `a_0..a_d` of `f` as a polynomial in `x`.
fn univariate_alphas(coeffs: &[Rational], nodes: &[Rational]) -> Vec<Rational> {
    let d = coeffs.len() - 1;
    // g_i as a dense polynomial in x, low degree first.
    let g = |i: usize| -> Vec<Rational> {
        let k = d - i;
        let mut poly = vec![Rational::one()];
        for b in &nodes[..k] {
            // multiply by (x - b)
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (j, c) in poly.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * b;
            }
            poly = next;
        }
        let scale = crate::vandermonde::vd_evaluate(&nodes[..k]);
        poly.iter().map(|c| c * &scale).collect()
    };
    let mut residual = coeffs.to_vec();
    let mut alphas = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let gi = g(i);
        let k = d - i;
        let alpha = &residual[k] / &gi[k];
        for (j, c) in gi.iter().enumerate() {
            residual[j] -= &alpha * c;
        }
        alphas.push(alpha);
    }
    debug_assert!(residual.iter().all(Zero::is_zero));
    alphas
}

fn univariate_terms(
    coeffs: &[Rational],
    nodes: &[Rational],
    x: &Entry,
    class: ProjectionClass,
    scale: &Rational,
) -> Result<Vec<SigmaTerm>, SigmaError> {
    let d = coeffs.len() - 1;
    if nodes.len() < d {
        return Err(SigmaError::NotEnoughNodes {
            degree: d,
            got: nodes.len(),
        });
    }
    let alphas = univariate_alphas(coeffs, nodes);
    Ok(alphas
        .into_iter()
        .enumerate()
        .map(|(i, alpha)| {
            let mut entries = vec![x.clone()];
            entries.extend(nodes[..d - i].iter().cloned().map(Entry::Const));
            SigmaTerm {
                alpha: alpha * scale,
                descriptor: VdProjectionDescriptor::new(class, entries).expect("valid by construction"),
            }
        })
        .collect())
}

/// `a_0 + a_1 x_{var+1} + ... + a_d x^d` as `d + 1` projections of class proj.
///
/// Trailing zero coefficients are ignored; the zero polynomial gives an
/// empty decomposition.
pub fn univariate_to_sigma_vd_proj(
    coeffs: &[Rational],
    nodes: Option<&NodeSet>,
    var: usize,
) -> Result<SigmaVdDecomposition, SigmaError> {
    let d = match coeffs.iter().rposition(|c| !c.is_zero()) {
        Some(d) => d,
        None => return Ok(SigmaVdDecomposition::empty(ProjectionClass::Proj)),
    };
    let coeffs = &coeffs[..=d];
    let default = NodeSet::default_for(d);
    let nodes = nodes.unwrap_or(&default);
    let terms = univariate_terms(coeffs, nodes.betas(), &Entry::Var(var), ProjectionClass::Proj, &Rational::one())?;
    let target = Polynomial::from_terms(
        var + 1,
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (Monomial::var_pow(var, k as u16), c.clone())),
    );
    SigmaVdDecomposition {
        class: ProjectionClass::Proj,
        terms,
    }
    .checked(&target)
}

/// `x_1^d + ... + x_n^d` with `n (d + 1)` terms.
pub fn pow_sym_to_sigma_vd_proj(
    n: usize,
    d: usize,
    nodes: Option<&NodeSet>,
) -> Result<SigmaVdDecomposition, SigmaError> {
    if d == 0 {
        return Err(SigmaError::ZeroDegree);
    }
    let mut coeffs = vec![Rational::zero(); d + 1];
    coeffs[d] = Rational::one();
    let mut out = SigmaVdDecomposition::empty(ProjectionClass::Proj);
    for i in 0..n {
        out.terms.extend(univariate_to_sigma_vd_proj(&coeffs, nodes, i)?.terms);
    }
    out.checked(&crate::measures::power_symmetric(n, d as u32))
}

/// `(c_e, L_e)` over sign vectors `e` in `{+1, -1}^(d-1)` (lex, `+` first) with
/// `x_1 ... x_d = sum_e c_e L_e^d`, `L_e = x_1 + e_1 x_2 + ... + e_{d-1} x_d`
/// and `c_e = (prod e) / (2^(d-1) d!)`.
pub fn fischer_decomposition(d: usize) -> Result<Vec<(Rational, LinearForm)>, SigmaError> {
    if d == 0 {
        return Err(SigmaError::ZeroDegree);
    }
    Ok(fischer_for_slots(&(0..d).collect::<Vec<_>>()))
}

/// Fischer's identity with slot `i` holding variable `slots[i]`; slots may
/// repeat, which turns the product into a monomial with exponents. Forms that
/// cancel to zero are dropped.
fn fischer_for_slots(slots: &[usize]) -> Vec<(Rational, LinearForm)> {
    let d = slots.len();
    let denom: Rational = rat(1 << (d - 1)) * (1..=d as i64).map(rat).product::<Rational>();
    let mut out = Vec::with_capacity(1 << (d - 1));
    for mask in 0u32..(1 << (d - 1)) {
        let mut form = LinearForm::var(slots[0]);
        let mut sign = 1i64;
        for (bit, &v) in slots[1..].iter().enumerate() {
            let negative = mask >> (d - 2 - bit) & 1 == 1;
            let e = if negative { -1 } else { 1 };
            sign *= e;
            form = &form + &LinearForm::var(v).scale(&rat(e));
        }
        if !form.is_zero() {
            out.push((rat(sign) / &denom, form));
        }
    }
    out
}

/// Any polynomial as a combination of affine Vandermonde projections.
///
/// Constant terms use the size-one projection `VD(0) = 1` and linear
/// monomials `VD(x_i, 0) = x_i`. A monomial of degree `k >= 2` goes through
/// Fischer's identity, then each `L^k` through the univariate construction
/// with `x` replaced by `L`.
pub fn poly_to_sigma_vd_aff(f: &Polynomial, cap: u32) -> Result<SigmaVdDecomposition, SigmaError> {
    let mut out = SigmaVdDecomposition::empty(ProjectionClass::Aff);
    let aff = |entries: Vec<Entry>| VdProjectionDescriptor::new(ProjectionClass::Aff, entries).expect("valid");
    for (m, c) in f.terms().rev() {
        let k = m.degree();
        if k > cap {
            return Err(SigmaError::CapExceeded { degree: k, cap });
        }
        match k {
            0 => out.terms.push(SigmaTerm {
                alpha: c.clone(),
                descriptor: aff(vec![Entry::Const(Rational::zero())]),
            }),
            1 => {
                let i = m.support_len() - 1;
                out.terms.push(SigmaTerm {
                    alpha: c.clone(),
                    descriptor: aff(vec![Entry::Form(LinearForm::var(i)), Entry::Const(Rational::zero())]),
                });
            }
            _ => {
                let slots: Vec<usize> = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
                    .collect();
                let mut power = vec![Rational::zero(); k as usize + 1];
                power[k as usize] = Rational::one();
                let nodes = NodeSet::default_for(k as usize);
                for (ce, form) in fischer_for_slots(&slots) {
                    out.terms.extend(univariate_terms(
                        &power,
                        nodes.betas(),
                        &Entry::Form(form),
                        ProjectionClass::Aff,
                        &(c * &ce),
                    )?);
                }
            }
        }
    }
    out.checked(f)
}

/// A degree at which `f` has a nonzero homogeneous part that no `vd(n)` can
/// supply: `vd(n)` is homogeneous of degree `C(n, 2)`, so every combination
/// of plain Vandermonde polynomials (or of projections by homogeneous forms)
/// has all its homogeneous parts in degrees `0, 1, 3, 6, 10, ...`.
pub fn vd_degree_obstruction(f: &Polynomial) -> Option<u32> {
    let mut degrees: Vec<u32> = f.terms().map(|(m, _)| m.degree()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    degrees.into_iter().find(|&d| !is_vd_degree(d as usize))
}

/// Explanation printed by `decompose aff --explain`.
pub const HOMO_OBSTRUCTION_NOTE: &str = "\
Only combinations of affine projections are constructed. With homogeneous
entries, every difference l_i - l_j is a homogeneous linear form (or zero),
so VD(l_1, ..., l_m) is zero or homogeneous of degree C(m,2). A combination
of such terms therefore has nonzero homogeneous parts only in degrees
0, 1, 3, 6, 10, ... and cannot equal, for example, x1*x2 (degree 2). The
same degree count rules out plain Vandermonde polynomials.";
