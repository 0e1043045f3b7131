//! Factorization of products of linear forms by gradient peeling.
//!
//! Restrict `f` to a random rational line `a + t b`. If `f = c * prod l_k`, the
//! restriction splits into distinct rational linear factors in `t`, and at the
//! root belonging to `l_k` only that factor vanishes, so `grad f` there is a
//! multiple of the coefficient vector of `l_k`. The recovered forms are
//! accepted only if their product, times a constant, expands to `f`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::poly::{LinearForm, Polynomial};
use crate::scalar::{rat, Rational};
use crate::univariate::UniPoly;

pub const DEFAULT_LINE_BUDGET: usize = 64;

/// Lines whose restriction has a repeated root before the input is declared
/// not squarefree.
const REPEATED_ROOT_LINES: usize = 3;

/// Coordinates of line points and directions are drawn from `[-R, R]`.
const LINE_RANGE: i64 = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    Zero,
    #[error("not a product of linear forms over the rationals")]
    NotProductOfLinearForms,
    #[error("has a repeated factor")]
    NotSquarefree,
    #[error("no usable line found in {0} attempts")]
    Inconclusive(usize),
}

/// `constant * prod factors`, with every factor monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationResult {
    pub constant: Rational,
    pub factors: Vec<LinearForm>,
}

impl FactorizationResult {
    pub fn expand(&self, nvars: usize) -> Polynomial {
        crate::poly::product_of_forms(&self.factors, nvars).scale(&self.constant)
    }
}

/// `f` with denominators cleared and homogenized by a new variable `x_0`,
/// so that values and gradients at integer points stay in the integers.
struct IntegerImage {
    degree: u16,
    /// Coefficient and exponents `(e_0, e_1, ..., e_m)`.
    terms: Vec<(BigInt, Vec<u16>)>,
    max_exps: Vec<u16>,
}

impl IntegerImage {
    fn new(f: &Polynomial, m: usize) -> Self {
        let degree = f.degree() as u16;
        let lcm = f.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut max_exps = vec![0u16; m + 1];
        let terms = f
            .terms()
            .map(|(mono, c)| {
                let mut exps = vec![degree - mono.degree() as u16];
                exps.extend((0..m).map(|i| mono.exponent(i)));
                for (mx, &e) in max_exps.iter_mut().zip(&exps) {
                    *mx = (*mx).max(e);
                }
                ((c * Rational::from_integer(lcm.clone())).to_integer(), exps)
            })
            .collect();
        IntegerImage {
            degree,
            terms,
            max_exps,
        }
    }

    fn powers(&self, point: &[BigInt]) -> Vec<Vec<BigInt>> {
        point
            .iter()
            .zip(&self.max_exps)
            .map(|(x, &mx)| {
                let mut row = Vec::with_capacity(mx as usize + 1);
                row.push(BigInt::one());
                for e in 1..=mx as usize {
                    let next = &row[e - 1] * x;
                    row.push(next);
                }
                row
            })
            .collect()
    }

    fn value(&self, point: &[BigInt]) -> BigInt {
        let pw = self.powers(point);
        let mut acc = BigInt::zero();
        for (c, exps) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t *= &pw[i][e as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Gradient in `(x_0, x_1, ..., x_m)`.
    fn gradient(&self, point: &[BigInt]) -> Vec<BigInt> {
        let pw = self.powers(point);
        let k = point.len();
        let mut grad = vec![BigInt::zero(); k];
        let mut suffix = vec![BigInt::one(); k + 1];
        for (c, exps) in &self.terms {
            for i in (0..k).rev() {
                suffix[i] = &suffix[i + 1] * &pw[i][exps[i] as usize];
            }
            let mut prefix = c.clone();
            for i in 0..k {
                let e = exps[i] as usize;
                if e > 0 {
                    grad[i] += &prefix * &pw[i][e - 1] * &suffix[i + 1] * BigInt::from(e);
                    prefix *= &pw[i][e];
                }
            }
        }
        grad
    }
}

fn random_point<R: Rng>(rng: &mut R, m: usize) -> Vec<BigInt> {
    (0..m).map(|_| BigInt::from(rng.gen_range(-LINE_RANGE..=LINE_RANGE))).collect()
}

/// Factors a squarefree product of (affine) linear forms.
pub fn factor_linear_forms<R: Rng>(
    f: &Polynomial,
    rng: &mut R,
    budget: usize,
) -> Result<FactorizationResult, FactorError> {
    if f.is_zero() {
        return Err(FactorError::Zero);
    }
    let d = f.degree() as usize;
    if d == 0 {
        return Ok(FactorizationResult {
            constant: f.constant_term(),
            factors: Vec::new(),
        });
    }
    let m = f.nvars().max(f.used_nvars());
    let image = IntegerImage::new(f, m);
    let mut repeated = 0;
    for _ in 0..budget {
        let a = random_point(rng, m);
        let b = random_point(rng, m);
        let ts: Vec<Rational> = (0..=d as i64).map(rat).collect();
        let ys: Vec<Rational> = (0..=d as i64)
            .map(|t| {
                let mut p = vec![BigInt::one()];
                p.extend(a.iter().zip(&b).map(|(ai, bi)| ai + bi * t));
                Rational::from_integer(image.value(&p))
            })
            .collect();
        let g = UniPoly::interpolate(&ts, &ys);
        if g.degree() != d as i64 {
            continue;
        }
        let roots = match g.confirmed_numeric_roots() {
            Some(roots) => roots,
            None => {
                if !g.is_squarefree() {
                    repeated += 1;
                    if repeated >= REPEATED_ROOT_LINES {
                        return Err(FactorError::NotSquarefree);
                    }
                    continue;
                }
                match g.split_rational_roots() {
                    Ok(Some(roots)) => roots,
                    Ok(None) | Err(_) => return Err(FactorError::NotProductOfLinearForms),
                }
            }
        };
        let Some(forms) = forms_at_roots(&image, &roots, &a, &b) else {
            continue;
        };
        return gate(f, forms);
    }
    Err(FactorError::Inconclusive(budget))
}

/// The tangent form at each root, made monic. For `t = u / w` the point
/// `(w, w a + u b)` is integral and lies over `a + t b`; the gradient of the
/// homogenized image there is a multiple of `(constant, coefficients)`.
fn forms_at_roots(image: &IntegerImage, roots: &[Rational], a: &[BigInt], b: &[BigInt]) -> Option<Vec<LinearForm>> {
    debug_assert!(image.degree >= 1);
    let mut forms = Vec::with_capacity(roots.len());
    for t in roots {
        let (u, w) = (t.numer(), t.denom());
        let mut p = vec![w.clone()];
        p.extend(a.iter().zip(b).map(|(ai, bi)| ai * w + bi * u));
        let grad = image.gradient(&p);
        if grad[1..].iter().all(Zero::is_zero) {
            return None;
        }
        let coeffs = grad[1..].iter().map(|g| Rational::from_integer(g.clone())).collect();
        let (_, monic) = LinearForm::new(coeffs, Rational::from_integer(grad[0].clone())).canonicalize()?;
        forms.push(monic);
    }
    Some(forms)
}

/// Accepts the forms only if `c * prod forms` expands to `f` exactly.
fn gate(f: &Polynomial, forms: Vec<LinearForm>) -> Result<FactorizationResult, FactorError> {
    // Integer multiples of the forms keep the expansion free of fractions.
    let lcms: Vec<Rational> = forms
        .iter()
        .map(|l| {
            let dens = l.coeffs().iter().chain([l.constant()]).map(|c| c.denom().clone());
            Rational::from_integer(dens.fold(BigInt::one(), |acc, d| acc.lcm(&d)))
        })
        .collect();
    let integral: Vec<LinearForm> = forms.iter().zip(&lcms).map(|(l, s)| l.scale(s)).collect();
    let product = crate::poly::product_of_forms(&integral, f.nvars());
    let (mono, c) = f.leading_term().expect("nonzero");
    let pc = product.coefficient(mono);
    if pc.is_zero() {
        return Err(FactorError::NotProductOfLinearForms);
    }
    let ratio = c / pc;
    if &product.scale(&ratio) != f {
        return Err(FactorError::NotProductOfLinearForms);
    }
    Ok(FactorizationResult {
        constant: ratio * lcms.iter().product::<Rational>(),
        factors: forms,
    })
}
