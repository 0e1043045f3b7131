//! Exact scalars: big rationals, plus a word-sized prime field used to speed
//! up rank computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{pow, One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

/// The Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`; panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact `k`-th root of `q` when it exists in the rationals.
///
/// Negative inputs have a root only for odd `k`.
pub fn rational_nth_root(q: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    if q.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let num = q.numer().abs();
    let den = q.denom().clone();
    let rn = num.nth_root(k);
    let rd = den.nth_root(k);
    if pow(rn.clone(), k as usize) != num || pow(rd.clone(), k as usize) != den {
        return None;
    }
    let root = Rational::new(rn, rd);
    Some(if q.is_negative() { -root } else { root })
}

/// Which field a rank computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Field {
    /// Exact rationals; results are exact.
    #[default]
    Rational,
    /// Residues mod a prime. Ranks computed here are lower bounds for the
    /// rational rank (equal with overwhelming probability for small inputs).
    Prime(u64),
}

impl std::str::FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "rational" {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("prime") {
            let p = p.trim_start_matches(':');
            if p.is_empty() {
                return Ok(Field::Prime(DEFAULT_PRIME));
            }
            let p: u64 = p.parse().map_err(|_| format!("bad prime `{p}`"))?;
            if !PrimeField::is_prime(p) {
                return Err(format!("{p} is not prime"));
            }
            if p >= 1 << 62 {
                return Err(format!("{p} does not fit the single-word field"));
            }
            return Ok(Field::Prime(p));
        }
        Err(format!("unknown field `{s}` (expected rational or prime:P)"))
    }
}

/// Arithmetic in Z/pZ for a prime `p < 2^62`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(Self::is_prime(p));
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Deterministic Miller-Rabin for 64-bit inputs.
    pub fn is_prime(n: u64) -> bool {
        const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        if n < 2 {
            return false;
        }
        for &w in &WITNESSES {
            if n.is_multiple_of(w) {
                return n == w;
            }
        }
        let f = PrimeField { p: n };
        let mut d = n - 1;
        let mut s = 0;
        while d.is_multiple_of(2) {
            d /= 2;
            s += 1;
        }
        'witness: for &w in &WITNESSES {
            let mut x = f.pow(w, d);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = f.mul(x, x);
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }

    /// Image of a rational; `None` when the denominator vanishes mod p.
    pub fn reduce(&self, q: &Rational) -> Option<u64> {
        let den = self.reduce_int(q.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul(self.reduce_int(q.numer()), self.inv(den)))
    }
}

/// Parses `a`, `-a` or `a/b` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `a` for integers, `a/b` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nth_roots() {
        assert_eq!(rational_nth_root(&ratio(8, 27), 3), Some(ratio(2, 3)));
        assert_eq!(rational_nth_root(&ratio(-8, 27), 3), Some(ratio(-2, 3)));
        assert_eq!(rational_nth_root(&ratio(-4, 1), 2), None);
        assert_eq!(rational_nth_root(&ratio(1, 2), 3), None);
        assert_eq!(rational_nth_root(&rat(1), 28), Some(rat(1)));
    }

    #[test]
    fn prime_field_reduction() {
        let f = PrimeField::new(7);
        assert_eq!(f.reduce(&ratio(1, 2)), Some(4));
        assert_eq!(f.reduce(&ratio(-1, 1)), Some(6));
        assert_eq!(f.reduce(&ratio(1, 7)), None);
        assert_eq!(f.mul(f.inv(3), 3), 1);
    }

    #[test]
    fn field_parsing() {
        assert_eq!("rational".parse::<Field>(), Ok(Field::Rational));
        assert_eq!("prime:7".parse::<Field>(), Ok(Field::Prime(7)));
        assert_eq!("prime".parse::<Field>(), Ok(Field::Prime(DEFAULT_PRIME)));
        assert!("prime:8".parse::<Field>().is_err());
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&ratio(4, 2)), "2");
        assert_eq!(format_rational(&ratio(-1, 3)), "-1/3");
    }
}
