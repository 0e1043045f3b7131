//! Testing whether a polynomial is `VD` applied to independent linear forms.
//!
//! Two entry points share one pipeline. [`equiv_vd_forms`] takes the factor
//! list directly; [`equiv_vd`] takes an expanded polynomial, factors it, and
//! fixes the scalars of the monic factors before running the same closure.
//! Nothing is accepted unless the reconstructed witness is verified.

mod closure;
mod factor;
mod instance;
mod pit;

use std::collections::VecDeque;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::poly::{product_of_forms, LinearForm, Polynomial};
use crate::scalar::{rat, rational_nth_root, Rational};
use crate::vandermonde::{pairwise_differences, vd_degree, vd_of_forms};

pub use closure::{
    candidate_witness, derive_star, difference_closure, difference_closure_from, factored_ratio,
    greedy_seed, precheck, sign_normalize, witness_from_star, ClosureState,
};
pub use factor::{factor_linear_forms, FactorError, FactorizationResult, DEFAULT_LINE_BUDGET};
pub use instance::{generate_instance, Instance, InstanceError, InstanceMode};
pub use pit::{pit_gadget, pit_gadget_polynomial, schwartz_zippel_zero_test, PitError, ZeroTest};

/// Above this many monomials in a dense expansion, exact verification of a
/// factor list compares factors instead of expanding.
pub const EXPANSION_LIMIT: u128 = 5_000;

/// Trials of the randomized verification.
pub const SZ_TRIALS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("factor {0} is the zero form")]
    ZeroForm(usize),
    #[error("factor {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("factorization inconclusive after {0} random lines")]
    Inconclusive(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    /// The number of factors is not `C(n, 2)` for any `n >= 2`.
    FactorCount { p: usize },
    SpanDimension { expected: usize, got: usize },
    RepeatedFactor,
    /// The closure stopped growing before covering the factor set.
    ClosureFixpoint { missing: usize },
    AmbientTooSmall { ambient: usize, n: usize },
    /// No `n - 1` factors sharing an endpoint could be picked out.
    NoStar,
    VerificationFailed,
    NotHomogeneous,
    NotProductOfLinearForms,
    NotSquarefree,
    /// The relative scalars of the factors could not be determined.
    UnresolvedScalar,
    /// The global scalar needs an irrational root; `VD(L) = scalar * f`
    /// holds for the reported forms when a witness is attached.
    NoRationalScalar { scalar: Rational },
}

impl RejectReason {
    pub fn code(&self) -> &'static str {
        match self {
            RejectReason::FactorCount { .. } => "factor_count",
            RejectReason::SpanDimension { .. } => "span_dimension",
            RejectReason::RepeatedFactor => "repeated_factor",
            RejectReason::ClosureFixpoint { .. } => "closure_fixpoint",
            RejectReason::AmbientTooSmall { .. } => "ambient_too_small",
            RejectReason::NoStar => "no_star",
            RejectReason::VerificationFailed => "verification_failed",
            RejectReason::NotHomogeneous => "not_homogeneous",
            RejectReason::NotProductOfLinearForms => "not_product_of_linear_forms",
            RejectReason::NotSquarefree => "not_squarefree",
            RejectReason::UnresolvedScalar => "unresolved_scalar",
            RejectReason::NoRationalScalar { .. } => "no_rational_scalar",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::FactorCount { p } => write!(f, "{p} factors is not C(n,2) for any n"),
            RejectReason::SpanDimension { expected, got } => {
                write!(f, "factors span dimension {got}, expected {expected}")
            }
            RejectReason::RepeatedFactor => f.write_str("two factors are proportional"),
            RejectReason::ClosureFixpoint { missing } => {
                write!(f, "closure stopped with {missing} factors unreached")
            }
            RejectReason::AmbientTooSmall { ambient, n } => {
                write!(f, "{n} independent forms do not fit in {ambient} variables")
            }
            RejectReason::NoStar => f.write_str("no factors sharing an endpoint"),
            RejectReason::VerificationFailed => f.write_str("witness failed verification"),
            RejectReason::NotHomogeneous => f.write_str("polynomial is not homogeneous"),
            RejectReason::NotProductOfLinearForms => f.write_str("not a product of linear forms"),
            RejectReason::NotSquarefree => f.write_str("has a repeated factor"),
            RejectReason::UnresolvedScalar => f.write_str("factor scalars could not be resolved"),
            RejectReason::NoRationalScalar { scalar } => write!(
                f,
                "global scalar {} has no rational root of the needed order",
                crate::scalar::format_rational(scalar)
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyStrategy {
    /// Exact: full expansion when small, factorwise comparison otherwise.
    #[default]
    Exact,
    /// Randomized evaluation, `SZ_TRIALS` points.
    SchwartzZippel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerificationMode {
    Expansion,
    Factorwise,
    SchwartzZippel,
}

impl VerificationMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerificationMode::Expansion => "expansion",
            VerificationMode::Factorwise => "factorwise",
            VerificationMode::SchwartzZippel => "schwartz_zippel",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessStatus {
    ExactEquivalence,
    ScalarEquivalence,
}

/// Forms `L` with `VD(L) = scalar * f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub forms: Vec<LinearForm>,
    pub scalar: Rational,
    pub status: WitnessStatus,
    pub verification: VerificationMode,
}

impl EquivalenceWitness {
    /// The coefficient matrix of the forms (rows), `n x ambient`.
    pub fn matrix(&self, ambient: usize) -> Matrix {
        Matrix::from_rows(self.forms.iter().map(|f| f.coeff_vector(ambient)).collect())
            .expect("rectangular")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ExactEquivalence,
    ScalarEquivalence,
    Reject,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ExactEquivalence => "exact_equivalence",
            Verdict::ScalarEquivalence => "scalar_equivalence",
            Verdict::Reject => "reject",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EquivReport {
    pub verdict: Verdict,
    pub n: Option<usize>,
    pub witness: Option<EquivalenceWitness>,
    pub reason: Option<RejectReason>,
    /// Closure iterations run (0 if the closure was not reached).
    pub iterations: usize,
    pub closure: Option<ClosureState>,
}

impl EquivReport {
    fn reject(n: Option<usize>, reason: RejectReason) -> Self {
        EquivReport {
            verdict: Verdict::Reject,
            n,
            witness: None,
            reason: Some(reason),
            iterations: 0,
            closure: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.verdict == Verdict::ExactEquivalence
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EquivOptions {
    pub verify: VerifyStrategy,
    pub line_budget: usize,
}

impl Default for EquivOptions {
    fn default() -> Self {
        EquivOptions {
            verify: VerifyStrategy::Exact,
            line_budget: DEFAULT_LINE_BUDGET,
        }
    }
}

/// What a witness must reproduce.
enum Target<'a> {
    Forms(&'a [LinearForm]),
    /// A polynomial together with a factorization already checked to expand
    /// to it.
    Poly(&'a Polynomial, &'a FactorizationResult),
}

impl Target<'_> {
    fn evaluate(&self, point: &[Rational]) -> Rational {
        match self {
            Target::Forms(fs) => fs.iter().map(|f| f.evaluate(point)).product(),
            Target::Poly(p, _) => p.evaluate(point).expect("point covers every variable"),
        }
    }
}

fn dense_size(degree: usize, nvars: usize) -> u128 {
    // C(degree + nvars - 1, nvars - 1)
    let (top, k) = ((degree + nvars).saturating_sub(1) as u128, nvars.saturating_sub(1) as u128);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(top - i) / (i + 1);
    }
    acc
}

/// Returns the sign `s` with `VD(forms) = s * target`, if any.
fn verify<R: Rng>(
    forms: &[LinearForm],
    target: &Target,
    ambient: usize,
    strategy: VerifyStrategy,
    rng: &mut R,
) -> Option<(i8, VerificationMode)> {
    let sign_of = |eq_pos: bool, eq_neg: bool| {
        if eq_pos {
            Some(1)
        } else if eq_neg {
            Some(-1)
        } else {
            None
        }
    };
    match strategy {
        VerifyStrategy::Exact => {
            let p = vd_degree(forms.len());
            match target {
                Target::Poly(f, _) if dense_size(p, ambient) <= EXPANSION_LIMIT => {
                    let lhs = vd_of_forms(forms);
                    sign_of(&lhs == *f, lhs == -*f).map(|s| (s, VerificationMode::Expansion))
                }
                Target::Poly(_, fact) => {
                    let ratio = factored_ratio(&pairwise_differences(forms), &fact.factors)? / &fact.constant;
                    sign_of(ratio.is_one(), ratio == -Rational::one())
                        .map(|s| (s, VerificationMode::Factorwise))
                }
                Target::Forms(fs) if dense_size(p, ambient) <= EXPANSION_LIMIT => {
                    let lhs = vd_of_forms(forms);
                    let rhs = product_of_forms(fs, ambient);
                    sign_of(lhs == rhs, lhs == -rhs).map(|s| (s, VerificationMode::Expansion))
                }
                Target::Forms(fs) => {
                    let ratio = factored_ratio(&pairwise_differences(forms), fs)?;
                    sign_of(ratio.is_one(), ratio == -Rational::one())
                        .map(|s| (s, VerificationMode::Factorwise))
                }
            }
        }
        VerifyStrategy::SchwartzZippel => {
            let p = vd_degree(forms.len()).max(1);
            let range = (2 * p * p).max(2) as i64;
            let mut sign: Option<i8> = None;
            let mut points = Vec::with_capacity(SZ_TRIALS);
            for _ in 0..SZ_TRIALS {
                let pt: Vec<Rational> = (0..ambient).map(|_| rat(rng.gen_range(0..range))).collect();
                let values: Vec<Rational> = forms.iter().map(|f| f.evaluate(&pt)).collect();
                let lhs = crate::vandermonde::vd_evaluate(&values);
                let rhs = target.evaluate(&pt);
                points.push((lhs, rhs));
            }
            for (lhs, rhs) in &points {
                if !rhs.is_zero() && sign.is_none() {
                    sign = Some(if lhs == rhs { 1 } else { -1 });
                }
            }
            let s = sign.unwrap_or(1);
            let ok = points.iter().all(|(lhs, rhs)| {
                if s == 1 {
                    lhs == rhs
                } else {
                    lhs == &-rhs
                }
            });
            ok.then_some((s, VerificationMode::SchwartzZippel))
        }
    }
}

/// Closure, reconstruction and verification on a factor list with fixed
/// scalars. `target` is what `VD(L)` must equal up to sign.
fn closure_pipeline<R: Rng>(
    forms: &[LinearForm],
    ambient: usize,
    target: &Target,
    opts: &EquivOptions,
    rng: &mut R,
) -> Result<EquivReport, EquivError> {
    let n = match precheck(forms)? {
        Ok(n) => n,
        Err(reason) => return Ok(EquivReport::reject(None, reason)),
    };
    let state = difference_closure(forms, n);
    let mut report = EquivReport::reject(Some(n), RejectReason::VerificationFailed);
    report.iterations = state.iterations;
    if !state.accepted() {
        report.reason = Some(RejectReason::ClosureFixpoint {
            missing: state.missing().len(),
        });
        report.closure = Some(state);
        return Ok(report);
    }
    match candidate_witness(&state, n, ambient) {
        Err(reason) => report.reason = Some(reason),
        Ok(mut l) => {
            if let Some((sign, mode)) = verify(&l, target, ambient, opts.verify, rng) {
                if sign < 0 {
                    l.swap(0, 1);
                }
                report.verdict = Verdict::ExactEquivalence;
                report.reason = None;
                report.witness = Some(EquivalenceWitness {
                    forms: l,
                    scalar: Rational::one(),
                    status: WitnessStatus::ExactEquivalence,
                    verification: mode,
                });
            }
        }
    }
    report.closure = Some(state);
    Ok(report)
}

/// Factor-list mode: is `prod forms` equal to `VD(L)` for independent `L` in
/// `ambient` variables?
pub fn equiv_vd_forms<R: Rng>(
    forms: &[LinearForm],
    ambient: usize,
    opts: &EquivOptions,
    rng: &mut R,
) -> Result<EquivReport, EquivError> {
    closure_pipeline(forms, ambient, &Target::Forms(forms), opts, rng)
}

/// Relative magnitudes `rho_k > 0` such that the forms `rho_k * m_k` satisfy
/// every linear relation among three monic factors with coefficients `±1`.
///
/// `rho_0 = 1`; `None` when the relations conflict or leave some factor
/// unconstrained.
pub fn resolve_relative_scalars(monic: &[LinearForm]) -> Option<Vec<Rational>> {
    let p = monic.len();
    if p == 0 {
        return Some(Vec::new());
    }
    let width = monic.iter().map(LinearForm::nvars).max().unwrap_or(0);
    let vecs: Vec<Vec<Rational>> = monic.iter().map(|f| f.coeff_vector(width)).collect();
    // Edges (i, j, rho_j / rho_i).
    let mut adj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); p];
    for a in 0..p {
        for b in a + 1..p {
            for c in b + 1..p {
                let Some((sa, sb)) = relation(&vecs[a], &vecs[b], &vecs[c]) else {
                    continue;
                };
                // sa m_a + sb m_b + m_c = 0 with rho-scaled forms having unit
                // coefficients: rho_k = |s_k| * rho_c.
                let (sa, sb) = (sa.abs(), sb.abs());
                adj[c].push((a, sa.clone()));
                adj[a].push((c, sa.recip()));
                adj[c].push((b, sb.clone()));
                adj[b].push((c, sb.recip()));
                adj[a].push((b, &sb / &sa));
                adj[b].push((a, &sa / &sb));
            }
        }
    }
    let mut rho: Vec<Option<Rational>> = vec![None; p];
    rho[0] = Some(Rational::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let ri = rho[i].clone().expect("assigned before queued");
        for (j, ratio) in &adj[i] {
            let want = &ri * ratio;
            match &rho[*j] {
                Some(rj) if rj != &want => return None,
                Some(_) => {}
                None => {
                    rho[*j] = Some(want);
                    queue.push_back(*j);
                }
            }
        }
    }
    rho.into_iter().collect()
}

/// `(s_a, s_b)` with `s_a a + s_b b + c = 0`, when `c` lies in `span{a, b}`.
fn relation(a: &[Rational], b: &[Rational], c: &[Rational]) -> Option<(Rational, Rational)> {
    let m = Matrix::from_rows(
        a.iter()
            .zip(b)
            .map(|(x, y)| vec![x.clone(), y.clone()])
            .collect(),
    )
    .ok()?;
    let rhs: Vec<Rational> = c.iter().map(|x| -x).collect();
    let s = m.solve(&rhs).ok()?;
    (!s[0].is_zero() && !s[1].is_zero()).then(|| (s[0].clone(), s[1].clone()))
}

/// Black-box mode: factor `f`, fix the factor scalars, then run the closure.
pub fn equiv_vd<R: Rng>(f: &Polynomial, opts: &EquivOptions, rng: &mut R) -> Result<EquivReport, EquivError> {
    if f.is_zero() {
        return Err(EquivError::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Ok(EquivReport::reject(None, RejectReason::NotHomogeneous));
    }
    let ambient = f.nvars().max(f.used_nvars());
    let fact = match factor_linear_forms(f, rng, opts.line_budget) {
        Ok(r) => r,
        Err(FactorError::Zero) => return Err(EquivError::ZeroPolynomial),
        Err(FactorError::Inconclusive(k)) => return Err(EquivError::Inconclusive(k)),
        Err(FactorError::NotProductOfLinearForms) => {
            return Ok(EquivReport::reject(None, RejectReason::NotProductOfLinearForms))
        }
        Err(FactorError::NotSquarefree) => {
            return Ok(EquivReport::reject(None, RejectReason::NotSquarefree))
        }
    };
    // Shape checks first, so that e.g. a repeated factor is reported as such.
    if let Err(reason) = precheck(&fact.factors)? {
        return Ok(EquivReport::reject(None, reason));
    }
    let Some(rho) = resolve_relative_scalars(&fact.factors) else {
        return Ok(EquivReport::reject(None, RejectReason::UnresolvedScalar));
    };
    let p = fact.factors.len() as u32;
    let rho_prod: Rational = rho.iter().product();
    let scaled = |lambda: &Rational| -> Vec<LinearForm> {
        fact.factors
            .iter()
            .zip(&rho)
            .map(|(m, r)| m.scale(&(lambda * r)))
            .collect()
    };
    match rational_nth_root(&(fact.constant.abs() / &rho_prod), p) {
        Some(lambda) => closure_pipeline(&scaled(&lambda), ambient, &Target::Poly(f, &fact), opts, rng),
        None => {
            // prod (rho_k m_k) = (rho_prod / constant) * f
            let scalar = &rho_prod / &fact.constant;
            let forms = scaled(&Rational::one());
            let mut report = closure_pipeline(&forms, ambient, &Target::Forms(&forms), opts, rng)?;
            if let Some(w) = report.witness.as_mut() {
                w.scalar = scalar.clone();
                w.status = WitnessStatus::ScalarEquivalence;
                report.verdict = Verdict::ScalarEquivalence;
            } else {
                report.verdict = Verdict::Reject;
            }
            report.reason = Some(RejectReason::NoRationalScalar { scalar });
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_linear_form, parse_polynomial};
    use crate::vandermonde::vd;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    fn forms(src: &[&str]) -> Vec<LinearForm> {
        src.iter().map(|s| parse_linear_form(s).unwrap()).collect()
    }

    #[test]
    fn forms_mode_accepts_vd_factors() {
        let fs = forms(&["x1 - x2", "x1 - x3", "x2 - x3"]);
        for ambient in [3, 4] {
            let r = equiv_vd_forms(&fs, ambient, &EquivOptions::default(), &mut rng()).unwrap();
            assert!(r.is_exact());
            let w = r.witness.unwrap();
            assert_eq!(vd_of_forms(&w.forms), vd(3).unwrap());
            assert_eq!(w.matrix(ambient).rank(), 3);
        }
        let r = equiv_vd_forms(&fs, 2, &EquivOptions::default(), &mut rng()).unwrap();
        assert_eq!(r.reason, Some(RejectReason::AmbientTooSmall { ambient: 2, n: 3 }));
    }

    #[test]
    fn black_box_vd4() {
        let r = equiv_vd(&vd(4).unwrap(), &EquivOptions::default(), &mut rng()).unwrap();
        assert!(r.is_exact());
        let w = r.witness.unwrap();
        assert_eq!(w.forms.len(), 4);
        assert_eq!(vd_of_forms(&w.forms), vd(4).unwrap());
    }

    #[test]
    fn black_box_rejections() {
        let opts = EquivOptions::default();
        let f = parse_polynomial("x1*x2 - x1*x4 - x2*x3 + x3*x4").unwrap();
        let r = equiv_vd(&f, &opts, &mut rng()).unwrap();
        assert_eq!(r.verdict, Verdict::Reject);

        let f = parse_polynomial("x1^2*x2 + 2*x1*x2^2").unwrap();
        let r = equiv_vd(&f, &opts, &mut rng()).unwrap();
        assert_eq!(r.verdict, Verdict::Reject);
        assert_eq!(r.reason, Some(RejectReason::NoRationalScalar { scalar: rat(2) }));
    }

    #[test]
    fn scaled_vd_gets_its_scalar_absorbed() {
        // 8 * vd(3): lambda = 2
        let f = vd(3).unwrap().scale(&rat(8));
        let r = equiv_vd(&f, &EquivOptions::default(), &mut rng()).unwrap();
        assert!(r.is_exact());
        assert_eq!(vd_of_forms(&r.witness.unwrap().forms), f);
    }

    #[test]
    fn randomized_verification() {
        let opts = EquivOptions {
            verify: VerifyStrategy::SchwartzZippel,
            ..EquivOptions::default()
        };
        let fs = forms(&["x2 - x1", "x1 - x3", "x2 - x3"]);
        let r = equiv_vd_forms(&fs, 3, &opts, &mut rng()).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.verification, VerificationMode::SchwartzZippel);
        assert_eq!(vd_of_forms(&w.forms), product_of_forms(&fs, 3));
    }

    #[test]
    fn relative_scalars() {
        let monic = forms(&["x1", "x2", "x1 + 2*x2"]);
        assert_eq!(resolve_relative_scalars(&monic), Some(vec![rat(1), rat(2), rat(1)]));
        let monic = forms(&["x1", "x2"]);
        assert_eq!(resolve_relative_scalars(&monic), None);
    }

    #[test]
    fn dense_sizes() {
        assert_eq!(dense_size(3, 3), 10);
        assert_eq!(dense_size(15, 6), 15504);
    }
}
