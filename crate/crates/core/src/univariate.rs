//! Dense univariate polynomials over the rationals, with Sturm-based real
//! root isolation and exact recovery of rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Rational;

/// Coefficients from the constant term up; the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn evaluate(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Lagrange interpolation through `(xs[i], ys[i])` in Newton form.
    ///
    /// Panics if two nodes coincide.
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<Rational> = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let denom = &xs[i] - &xs[i - level];
                assert!(!denom.is_zero(), "repeated interpolation node");
                dd[i] = (&dd[i] - &dd[i - 1]) / denom;
            }
        }
        // Horner on the Newton basis.
        let mut acc = UniPoly::zero();
        for i in (0..n).rev() {
            acc = acc.mul_linear(&-&xs[i]);
            acc = acc.add_constant(&dd[i]);
        }
        acc
    }

    fn mul_linear(&self, c: &Rational) -> UniPoly {
        // self * (t + c)
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[k + 1] += a;
            out[k] += a * c;
        }
        UniPoly::new(out)
    }

    fn add_constant(&self, c: &Rational) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        coeffs[0] += c;
        UniPoly::new(coeffs)
    }

    /// Remainder of division by a nonzero divisor.
    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        let lead = divisor.leading().expect("division by zero polynomial");
        let dd = divisor.coeffs.len();
        let mut r = self.coeffs.clone();
        while r.len() >= dd {
            let q = r.last().expect("nonempty") / lead;
            let shift = r.len() - dd;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                r[shift + k] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// True when there is no repeated complex root.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() <= 0
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            g = BigInt::one();
        }
        UniPoly::new(
            ints.into_iter()
                .map(|c| Rational::from_integer(c / &g))
                .collect(),
        )
    }

    /// Sturm sequence, each member reduced to a positive primitive multiple
    /// (positive scaling does not change sign variations).
    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.primitive(), self.derivative().primitive()];
        loop {
            let k = seq.len();
            if seq[k - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[k - 2].rem(&seq[k - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r.primitive());
        }
        seq
    }

    /// Bound on the absolute value of every root (Cauchy).
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().expect("nonzero polynomial").abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        max + Rational::one()
    }

    /// All rational roots, provided every real root is simple and the
    /// polynomial has `degree` real roots. Returns `Err` with the number of
    /// real roots otherwise, or `Ok(None)` when some real root is irrational.
    pub fn split_rational_roots(&self) -> Result<Option<Vec<Rational>>, usize> {
        let d = self.degree();
        assert!(d >= 1, "need a nonconstant polynomial");
        if let Some(roots) = self.confirmed_numeric_roots() {
            return Ok(Some(roots));
        }
        let sturm = Sturm::new(self);
        let bound = self.root_bound();
        let lo = -bound.clone();
        let total = sturm.count(&lo, &bound);
        if total != d as usize {
            return Err(total);
        }
        let prim = self.primitive();
        let lead = prim.leading().expect("nonzero").abs();
        let mut intervals = Vec::new();
        sturm.isolate(lo, bound, total, &mut intervals);
        let mut roots = Vec::with_capacity(intervals.len());
        for (a, b) in intervals {
            match narrow_to_rational(&prim, &lead, a, b) {
                Some(r) => roots.push(r),
                None => return Ok(None),
            }
        }
        Ok(Some(roots))
    }
}

impl UniPoly {
    /// Integer coefficients of the primitive part, constant term first.
    fn integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive().coeffs.iter().map(|c| c.to_integer()).collect()
    }

    /// Fast path for [`split_rational_roots`](Self::split_rational_roots):
    /// approximate the complex roots in floating point, turn each real
    /// approximation into a rational by continued fractions and confirm it
    /// exactly. Succeeds only when `degree` distinct roots are confirmed,
    /// which also shows the polynomial is squarefree.
    pub fn confirmed_numeric_roots(&self) -> Option<Vec<Rational>> {
        let ints = self.integer_coeffs();
        let approx = aberth(&ints)?;
        let mut roots: Vec<Rational> = Vec::with_capacity(approx.len());
        for z in approx {
            let r = continued_fraction_root(&ints, z.re)?;
            if roots.contains(&r) {
                return None;
            }
            roots.push(r);
        }
        Some(roots)
    }
}

/// `sum c_i u^i w^(d-i)`: the value at `u / w` times `w^d`.
fn homogeneous_value(ints: &[BigInt], u: &BigInt, w: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut wpow = BigInt::one();
    // Horner in u, picking up one more power of w per step.
    for c in ints.iter().rev() {
        acc = acc * u + c * &wpow;
        wpow *= w;
    }
    acc
}

/// Continued-fraction convergents of `x`, tested exactly as roots.
fn continued_fraction_root(ints: &[BigInt], x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        let ai = BigInt::from(a as i64);
        let h = &ai * &h1 + &h0;
        let k = &ai * &k1 + &k0;
        if homogeneous_value(ints, &h, &k).is_zero() {
            return Some(Rational::new(h, k));
        }
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = y - a;
        if frac.abs() < 1e-12 || k1.bits() > 40 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

/// Aberth-Ehrlich iteration on the integer polynomial, scaled into `f64`
/// range. `None` if it does not settle.
fn aberth(ints: &[BigInt]) -> Option<Vec<Complex64>> {
    let d = ints.len() - 1;
    let top = ints.iter().map(|c| c.bits()).max().unwrap_or(0);
    let shift = top.saturating_sub(900);
    let cs: Vec<f64> = ints
        .iter()
        .map(|c| (c >> shift).to_f64().unwrap_or(0.0))
        .collect();
    let lead = cs[d];
    if lead == 0.0 || !lead.is_finite() {
        return None;
    }
    let monic: Vec<f64> = cs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / d as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                return None;
            }
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    Some(z)
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

struct Sturm {
    seq: Vec<UniPoly>,
}

impl Sturm {
    fn new(p: &UniPoly) -> Self {
        Sturm {
            seq: p.sturm_sequence(),
        }
    }

    fn variations(&self, t: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.seq {
            let v = p.evaluate(t);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    fn isolate(&self, a: Rational, b: Rational, k: usize, out: &mut Vec<(Rational, Rational)>) {
        if k == 0 {
            return;
        }
        if k == 1 {
            out.push((a, b));
            return;
        }
        let mid = (&a + &b) / Rational::from_integer(2.into());
        let left = self.count(&a, &mid);
        self.isolate(a, mid.clone(), left, out);
        self.isolate(mid, b, k - left, out);
    }
}

/// Given an interval `(a, b]` holding exactly one simple root of the integer
/// polynomial `p`, finds that root if it is rational.
///
/// A rational root `u/v` in lowest terms has `v | lead`, so it lies on the
/// grid `Z / lead`; once the interval is narrower than `1/lead` at most one
/// grid point remains to test.
fn narrow_to_rational(p: &UniPoly, lead: &Rational, mut a: Rational, mut b: Rational) -> Option<Rational> {
    let fb = p.evaluate(&b);
    if fb.is_zero() {
        return Some(b);
    }
    let width = lead.recip();
    let two = Rational::from_integer(2.into());
    let sb = fb.is_positive();
    while &b - &a >= width {
        let mid = (&a + &b) / &two;
        let fm = p.evaluate(&mid);
        if fm.is_zero() {
            return Some(mid);
        }
        if fm.is_positive() == sb {
            b = mid;
        } else {
            a = mid;
        }
    }
    // The single grid point in (a, b], if any.
    let k = (&b * lead).floor();
    let cand = k / lead;
    (cand > a && p.evaluate(&cand).is_zero()).then_some(cand)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn up(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = up(&[2, -3, 1]);
        let xs: Vec<Rational> = (0..3).map(rat).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| p.evaluate(x)).collect();
        assert_eq!(UniPoly::interpolate(&xs, &ys), p);
    }

    #[test]
    fn rational_roots_found() {
        // (2t - 1)(t + 3)(3t - 7)
        let p = up(&[21, -44, 1, 6]);
        let mut roots = p.split_rational_roots().unwrap().unwrap();
        roots.sort();
        assert_eq!(roots, vec![rat(-3), ratio(1, 2), ratio(7, 3)]);
    }

    #[test]
    fn irrational_and_complex_roots() {
        // t^2 - 2
        assert_eq!(up(&[-2, 0, 1]).split_rational_roots(), Ok(None));
        // t^2 + 1
        assert_eq!(up(&[1, 0, 1]).split_rational_roots(), Err(0));
    }

    #[test]
    fn close_roots_are_separated() {
        // (1000 t - 1)(1001 t - 1)
        let p = up(&[1, -2001, 1_001_000]);
        let mut roots = p.split_rational_roots().unwrap().unwrap();
        roots.sort();
        assert_eq!(roots, vec![ratio(1, 1001), ratio(1, 1000)]);
    }

    #[test]
    fn squarefree_detection() {
        assert!(up(&[-1, 0, 1]).is_squarefree());
        assert!(!up(&[1, -2, 1]).is_squarefree());
    }
}
