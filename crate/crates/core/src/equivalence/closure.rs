//! The difference closure on a factor set and witness reconstruction.
//!
//! Set membership ignores the sign of a form: `S` and `T` hold sign-normalized
//! representatives and `a + b`, `a - b` are compared after normalization.
//! Factors recovered by factorization, or written by hand, carry arbitrary
//! signs, and `-(L_i - L_j) = L_j - L_i` is still a difference of the same pair.

use std::collections::{HashMap, HashSet};

use num_traits::{Signed, Zero};

use crate::linalg::{span_dimension_forms, EchelonBasis};
use crate::poly::LinearForm;
use crate::scalar::Rational;
use crate::vandermonde::vd_size_for_factor_count;

use super::{EquivError, RejectReason};

/// `f` or `-f`, whichever has a positive leading coefficient.
pub fn sign_normalize(f: &LinearForm) -> LinearForm {
    let lead = f
        .coeffs()
        .iter()
        .find(|c| !c.is_zero())
        .unwrap_or_else(|| f.constant());
    if lead.is_negative() {
        -f
    } else {
        f.clone()
    }
}

fn validate(forms: &[LinearForm]) -> Result<(), EquivError> {
    for (i, f) in forms.iter().enumerate() {
        if f.is_zero() {
            return Err(EquivError::ZeroForm(i));
        }
        if !f.is_homogeneous() {
            return Err(EquivError::NotHomogeneous(i));
        }
    }
    Ok(())
}

/// Finds `n` with `p = C(n, 2)` factors spanning an `(n - 1)`-dimensional
/// space, with no two factors proportional.
pub fn precheck(forms: &[LinearForm]) -> Result<Result<usize, RejectReason>, EquivError> {
    validate(forms)?;
    let p = forms.len();
    let Some(n) = vd_size_for_factor_count(p) else {
        return Ok(Err(RejectReason::FactorCount { p }));
    };
    let mut seen = HashSet::new();
    for f in forms {
        let (_, monic) = f.canonicalize().expect("nonzero form");
        if !seen.insert(monic) {
            return Ok(Err(RejectReason::RepeatedFactor));
        }
    }
    let dim = span_dimension_forms(forms);
    if dim != n - 1 {
        return Ok(Err(RejectReason::SpanDimension {
            expected: n - 1,
            got: dim,
        }));
    }
    Ok(Ok(n))
}

/// State of the closure iteration.
#[derive(Debug, Clone)]
pub struct ClosureState {
    /// Sign-normalized factor set, in input order.
    pub s: Vec<LinearForm>,
    /// Current closure, in order of discovery; always a subset of `s`.
    pub t: Vec<LinearForm>,
    /// Size of `t` after each iteration, starting with the seed.
    pub history: Vec<usize>,
    pub iterations: usize,
    /// The independent seed, as given in the input.
    pub seed: Vec<LinearForm>,
}

impl ClosureState {
    pub fn accepted(&self) -> bool {
        self.t.len() == self.s.len()
    }

    /// Factors never reached by the closure.
    pub fn missing(&self) -> Vec<LinearForm> {
        let t: HashSet<&LinearForm> = self.t.iter().collect();
        self.s.iter().filter(|f| !t.contains(f)).cloned().collect()
    }
}

/// Greedy seed: keep each form that raises the span dimension, until `n - 1`
/// are kept.
pub fn greedy_seed(forms: &[LinearForm], n: usize) -> Vec<usize> {
    let width = forms.iter().map(LinearForm::nvars).max().unwrap_or(0);
    let mut basis = EchelonBasis::new(width);
    let mut picked = Vec::new();
    for (i, f) in forms.iter().enumerate() {
        if picked.len() + 1 == n {
            break;
        }
        if basis.insert(&f.coeff_vector(width)) {
            picked.push(i);
        }
    }
    picked
}

/// Runs the closure from the greedy seed.
pub fn difference_closure(forms: &[LinearForm], n: usize) -> ClosureState {
    difference_closure_from(forms, &greedy_seed(forms, n))
}

/// Runs the closure from the given seed (indices into `forms`).
pub fn difference_closure_from(forms: &[LinearForm], seed: &[usize]) -> ClosureState {
    let s: Vec<LinearForm> = forms.iter().map(sign_normalize).collect();
    let in_s: HashSet<&LinearForm> = s.iter().collect();
    let mut t: Vec<LinearForm> = Vec::new();
    let mut in_t: HashSet<LinearForm> = HashSet::new();
    for &i in seed {
        if in_t.insert(s[i].clone()) {
            t.push(s[i].clone());
        }
    }
    let mut history = vec![t.len()];
    let mut iterations = 0;
    while t.len() < s.len() {
        iterations += 1;
        let mut fresh = Vec::new();
        for (i, a) in t.iter().enumerate() {
            for b in &t[i + 1..] {
                for d in [a + b, a - b] {
                    let d = sign_normalize(&d);
                    if in_s.contains(&d) && !in_t.contains(&d) && !fresh.contains(&d) {
                        fresh.push(d);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        for d in fresh {
            in_t.insert(d.clone());
            t.push(d);
        }
        history.push(t.len());
    }
    ClosureState {
        s,
        t,
        history,
        iterations,
        seed: seed.iter().map(|&i| forms[i].clone()).collect(),
    }
}

/// `n - 1` factors `r_1, ..., r_{n-1}` with every `r_i` and every `r_i - r_j`
/// in the factor set up to sign: the differences `L_a - L_c` out of one
/// endpoint `a` of the first factor.
///
/// A form `t` shares an endpoint with `s0 = L_a - L_b` in the right
/// orientation exactly when `t - s0` is again a factor up to sign; such forms
/// fall into the two classes "`L_a - L_c`" and "`L_c - L_b`", and two of them
/// lie in the same class iff their difference is a factor up to sign.
pub fn derive_star(s: &[LinearForm], n: usize) -> Option<Vec<LinearForm>> {
    let s0 = s.first()?.clone();
    if n == 2 {
        return Some(vec![s0]);
    }
    let keys: HashSet<&LinearForm> = s.iter().collect();
    let member = |f: &LinearForm| !f.is_zero() && keys.contains(&sign_normalize(f));
    let neg0 = -&s0;
    let candidates: Vec<LinearForm> = s[1..]
        .iter()
        .flat_map(|f| [f.clone(), -f])
        .filter(|t| t != &s0 && t != &neg0 && member(&(t - &s0)))
        .collect();
    let first = candidates.first()?;
    let side: Vec<LinearForm> = candidates
        .iter()
        .filter(|t| *t == first || member(&(*t - first)))
        .cloned()
        .collect();
    if side.len() != n - 2 {
        return None;
    }
    let mut star = vec![s0];
    star.extend(side);
    Some(star)
}

/// Chooses `l` outside the span of `star`, preferring a variable unused by
/// every factor, and returns `(l, l - r_1, ..., l - r_{n-1})`.
pub fn witness_from_star(
    star: &[LinearForm],
    used_by_factors: usize,
    ambient: usize,
) -> Option<Vec<LinearForm>> {
    let mut basis = EchelonBasis::new(ambient);
    for r in star {
        basis.insert(&r.coeff_vector(ambient));
    }
    let fresh = (used_by_factors..ambient).chain(0..used_by_factors.min(ambient));
    let ell = fresh.map(LinearForm::var).find(|v| !basis.contains(&v.coeff_vector(ambient)))?;
    let mut forms = vec![ell.clone()];
    forms.extend(star.iter().map(|r| &ell - r));
    Some(forms)
}

/// Builds a candidate witness from an accepted closure. Verification is the
/// caller's job.
pub fn candidate_witness(
    state: &ClosureState,
    n: usize,
    ambient: usize,
) -> Result<Vec<LinearForm>, RejectReason> {
    if ambient < n {
        return Err(RejectReason::AmbientTooSmall { ambient, n });
    }
    let star = derive_star(&state.s, n).ok_or(RejectReason::NoStar)?;
    let used = state.s.iter().map(LinearForm::nvars).max().unwrap_or(0);
    witness_from_star(&star, used, ambient).ok_or(RejectReason::NoStar)
}

/// Multiset comparison by unique factorization: returns `c` with
/// `prod lhs = c * prod rhs` when both sides have the same monic factors.
pub fn factored_ratio(lhs: &[LinearForm], rhs: &[LinearForm]) -> Option<Rational> {
    fn tally(forms: &[LinearForm]) -> Option<(HashMap<LinearForm, usize>, Rational)> {
        let mut counts = HashMap::new();
        let mut scalar = Rational::from_integer(1.into());
        for f in forms {
            let (s, monic) = f.canonicalize()?;
            scalar *= s;
            *counts.entry(monic).or_insert(0) += 1;
        }
        Some((counts, scalar))
    }
    let (lc, ls) = tally(lhs)?;
    let (rc, rs) = tally(rhs)?;
    (lc == rc).then(|| ls / rs)
}
