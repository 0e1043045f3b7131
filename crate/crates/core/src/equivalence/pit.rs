//! Identity testing through the Vandermonde gadget, and a Schwartz-Zippel
//! zero test on evaluation oracles.

use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::poly::{Monomial, Polynomial};
use crate::scalar::{rat, Rational};
use crate::vandermonde::{vd, vd_degree, vd_evaluate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PitError {
    #[error("the gadget needs n >= 2")]
    TooFewVariables,
    #[error("sample range {range} must exceed the degree bound {degree}")]
    RangeTooSmall { range: u64, degree: u64 },
}

/// The black box `a -> a_1^(C(n,2)+1) f(a) + VD(a)`; one call to `f` per
/// evaluation. `g` equals `vd(n)` as a polynomial iff `f` is zero.
pub fn pit_gadget<'a, F>(f: F, n: usize) -> Result<impl Fn(&[Rational]) -> Rational + 'a, PitError>
where
    F: Fn(&[Rational]) -> Rational + 'a,
{
    if n < 2 {
        return Err(PitError::TooFewVariables);
    }
    let e = vd_degree(n) as u32 + 1;
    Ok(move |a: &[Rational]| {
        let x1 = num_traits::pow(a[0].clone(), e as usize);
        x1 * f(a) + vd_evaluate(&a[..n])
    })
}

/// The gadget as an explicit polynomial.
pub fn pit_gadget_polynomial(f: &Polynomial, n: usize) -> Result<Polynomial, PitError> {
    if n < 2 {
        return Err(PitError::TooFewVariables);
    }
    let e = vd_degree(n) as u16 + 1;
    let x1 = Polynomial::monomial(Monomial::var_pow(0, e), Rational::one(), n);
    Ok(&(&x1 * f) + &vd(n).expect("n >= 2"))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ZeroTest {
    /// Every sample vanished; a nonzero polynomial of degree `<= d` passes
    /// with probability at most `error_bound`.
    ProbablyZero { error_bound: f64 },
    NonzeroWitness {
        point: Vec<Rational>,
        value: Rational,
        /// 1-based index of the trial that found it.
        trial: usize,
    },
}

/// Samples points uniformly from `{0, ..., range-1}^n`.
pub fn schwartz_zippel_zero_test<F, R>(
    oracle: F,
    n: usize,
    degree: u64,
    trials: usize,
    range: u64,
    rng: &mut R,
) -> Result<ZeroTest, PitError>
where
    F: Fn(&[Rational]) -> Rational,
    R: Rng,
{
    if range <= degree {
        return Err(PitError::RangeTooSmall { range, degree });
    }
    for trial in 1..=trials {
        let point: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(0..range) as i64)).collect();
        let value = oracle(&point);
        if !value.is_zero() {
            return Ok(ZeroTest::NonzeroWitness { point, value, trial });
        }
    }
    Ok(ZeroTest::ProbablyZero {
        error_bound: (degree as f64 / range as f64).powi(trials as i32),
    })
}
