//! The Vandermonde polynomial, its projection classes and alternating tests.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::parse::{content_lines, parse_linear_form};
use crate::poly::{product_of_forms, LinearForm, Polynomial};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VdError {
    #[error("the Vandermonde polynomial needs at least one variable")]
    ZeroSize,
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
}

/// `prod_{i<j} (x_i - x_j)` over `n` variables; `vd(1) = 1`.
pub fn vd(n: usize) -> Result<Polynomial, VdError> {
    if n == 0 {
        return Err(VdError::ZeroSize);
    }
    let vars: Vec<LinearForm> = (0..n).map(LinearForm::var).collect();
    Ok(vd_of_forms(&vars).with_nvars(n))
}

/// The pairwise differences `L_i - L_j` for `i < j`, in row-major order.
pub fn pairwise_differences(forms: &[LinearForm]) -> Vec<LinearForm> {
    let mut out = Vec::with_capacity(forms.len() * forms.len().saturating_sub(1) / 2);
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            out.push(&forms[i] - &forms[j]);
        }
    }
    out
}

/// `VD(L_1, ..., L_m)` expanded.
pub fn vd_of_forms(forms: &[LinearForm]) -> Polynomial {
    let nvars = forms.iter().map(LinearForm::nvars).max().unwrap_or(0);
    product_of_forms(&pairwise_differences(forms), nvars)
}

/// `VD` evaluated at a point by the product formula.
pub fn vd_evaluate(point: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for i in 0..point.len() {
        for j in i + 1..point.len() {
            acc *= &point[i] - &point[j];
        }
    }
    acc
}

/// `C(n, 2)`, the degree of `vd(n)`.
pub fn vd_degree(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Whether `d` is the degree of some `vd(n)`, `n >= 1`: `0, 1, 3, 6, 10, ...`
pub fn is_vd_degree(d: usize) -> bool {
    (1..).map(vd_degree).take_while(|&v| v <= d).any(|v| v == d)
}

/// The `n` with `C(n, 2) = p`, if any (`n >= 2`).
pub fn vd_size_for_factor_count(p: usize) -> Option<usize> {
    (2..).map(|n| (n, vd_degree(n))).take_while(|&(_, v)| v <= p).find(|&(_, v)| v == p).map(|(n, _)| n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjectionClass {
    /// Entries are single variables or constants.
    Proj,
    /// Entries are homogeneous linear forms.
    Homo,
    /// Entries are affine forms.
    Aff,
}

impl fmt::Display for ProjectionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProjectionClass::Proj => "proj",
            ProjectionClass::Homo => "homo",
            ProjectionClass::Aff => "aff",
        })
    }
}

impl std::str::FromStr for ProjectionClass {
    type Err = VdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "proj" => Ok(ProjectionClass::Proj),
            "homo" => Ok(ProjectionClass::Homo),
            "aff" => Ok(ProjectionClass::Aff),
            other => Err(VdError::InvalidDescriptor(format!("unknown class `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    /// Zero-based variable index.
    Var(usize),
    Const(Rational),
    Form(LinearForm),
}

impl Entry {
    pub fn to_form(&self) -> LinearForm {
        match self {
            Entry::Var(i) => LinearForm::var(*i),
            Entry::Const(c) => LinearForm::constant_form(c.clone()),
            Entry::Form(f) => f.clone(),
        }
    }
}

/// A member of one of the projection classes: `VD(e_1, ..., e_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VdProjectionDescriptor {
    class: ProjectionClass,
    entries: Vec<Entry>,
}

impl VdProjectionDescriptor {
    pub fn new(class: ProjectionClass, entries: Vec<Entry>) -> Result<Self, VdError> {
        if entries.is_empty() {
            return Err(VdError::InvalidDescriptor("no entries".into()));
        }
        for (k, e) in entries.iter().enumerate() {
            let ok = match (class, e) {
                (ProjectionClass::Proj, Entry::Form(_)) => false,
                (ProjectionClass::Homo, Entry::Const(c)) => c.is_zero(),
                (ProjectionClass::Homo, Entry::Form(f)) => f.is_homogeneous(),
                _ => true,
            };
            if !ok {
                return Err(VdError::InvalidDescriptor(format!(
                    "entry {} is not allowed in class {class}",
                    k + 1
                )));
            }
        }
        Ok(VdProjectionDescriptor { class, entries })
    }

    pub fn proj(entries: Vec<Entry>) -> Result<Self, VdError> {
        Self::new(ProjectionClass::Proj, entries)
    }

    pub fn homo(forms: Vec<LinearForm>) -> Result<Self, VdError> {
        Self::new(ProjectionClass::Homo, forms.into_iter().map(Entry::Form).collect())
    }

    pub fn aff(forms: Vec<LinearForm>) -> Result<Self, VdError> {
        Self::new(ProjectionClass::Aff, forms.into_iter().map(Entry::Form).collect())
    }

    pub fn class(&self) -> ProjectionClass {
        self.class
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn forms(&self) -> Vec<LinearForm> {
        self.entries.iter().map(Entry::to_form).collect()
    }

    /// Number of entry pairs whose difference is a constant.
    pub fn constant_differences(&self) -> usize {
        pairwise_differences(&self.forms())
            .iter()
            .filter(|d| d.is_constant())
            .count()
    }

    pub fn parse(text: &str) -> Result<Self, VdError> {
        let mut lines = content_lines(text);
        let (_, header) = lines
            .next()
            .ok_or_else(|| VdError::InvalidDescriptor("empty descriptor".into()))?;
        let class: ProjectionClass = header
            .strip_prefix("class:")
            .ok_or_else(|| VdError::InvalidDescriptor("missing `class:` header".into()))?
            .parse()?;
        let mut entries = Vec::new();
        for (no, line) in lines {
            let bad = |msg: String| VdError::InvalidDescriptor(format!("line {no}: {msg}"));
            let entry = if let Some(rest) = line.strip_prefix("var ") {
                let i: usize = rest.trim().parse().map_err(|_| bad(format!("bad variable `{rest}`")))?;
                if i == 0 {
                    return Err(bad("variables are numbered from 1".into()));
                }
                Entry::Var(i - 1)
            } else if let Some(rest) = line.strip_prefix("const ") {
                Entry::Const(parse_rational(rest).ok_or_else(|| bad(format!("bad constant `{rest}`")))?)
            } else {
                Entry::Form(parse_linear_form(line).map_err(|e| bad(e.to_string()))?)
            };
            entries.push(entry);
        }
        Self::new(class, entries)
    }
}

impl fmt::Display for VdProjectionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "class: {}", self.class)?;
        for e in &self.entries {
            match e {
                Entry::Var(i) => writeln!(f, "var {}", i + 1)?,
                Entry::Const(c) => writeln!(f, "const {}", format_rational(c))?,
                Entry::Form(l) => writeln!(f, "{l}")?,
            }
        }
        Ok(())
    }
}

/// Substitutes the descriptor's entries into `vd(m)` and expands.
pub fn expand_projection(d: &VdProjectionDescriptor) -> Polynomial {
    vd_of_forms(&d.forms())
}

fn universe(f: &Polynomial) -> usize {
    f.nvars().max(f.used_nvars())
}

/// True iff every adjacent transposition negates `f`.
pub fn is_alternating(f: &Polynomial) -> bool {
    let n = universe(f);
    let neg = -f;
    (0..n.saturating_sub(1)).all(|i| f.swap_variables(i, i + 1) == neg)
}

/// Checks `f(x_sigma) = sgn(sigma) f` over all of `S_n`; for cross-checking
/// [`is_alternating`] on small `n`.
pub fn is_alternating_full(f: &Polynomial) -> bool {
    let n = universe(f);
    let neg = -f;
    crate::symmetry::permutations(n).iter().all(|perm| {
        let image = f.permute_variables(perm);
        if crate::symmetry::is_even(perm) {
            &image == f
        } else {
            image == neg
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a scalar multiple of vd({n}): {reason}")]
pub struct NotScalarMultiple {
    pub n: usize,
    pub reason: String,
}

/// The `alpha` with `f = alpha * vd(n)`.
pub fn alternating_scalar_of_vd(f: &Polynomial, n: usize) -> Result<Rational, NotScalarMultiple> {
    let fail = |reason: &str| NotScalarMultiple {
        n,
        reason: reason.to_string(),
    };
    let v = vd(n).map_err(|e| fail(&e.to_string()))?;
    if f.used_nvars() > n {
        return Err(fail("uses more than n variables"));
    }
    if f.is_zero() {
        return Ok(Rational::zero());
    }
    if !f.is_homogeneous() || f.degree() != vd_degree(n) as i64 {
        return Err(fail("wrong degree"));
    }
    if !is_alternating(&f.clone().with_nvars(n)) {
        return Err(fail("not alternating"));
    }
    let q = f.divide_exact(&v).map_err(|_| fail("not divisible"))?;
    if !q.is_constant() {
        return Err(fail("quotient is not constant"));
    }
    Ok(q.constant_term())
}
