//! Seeded random instances: `VD(L)` for random independent integer forms,
//! optionally with one factor replaced.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::poly::{product_of_forms, LinearForm, Polynomial};
use crate::vandermonde::pairwise_differences;

use super::closure::sign_normalize;

/// Entries of the sampled forms lie in `[-ENTRY, ENTRY]`.
const ENTRY: i64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceMode {
    Equivalent,
    /// One factor is replaced by a form in the span of the others that is
    /// not `±a ± b` for two remaining factors `a, b` and not proportional to
    /// any factor. Every `VD(L')` factor set contains each member as such a
    /// combination (for `n >= 3`), so the result is never equivalent.
    Perturbed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("instances need n >= 2")]
    TooSmall,
    #[error("perturbed instances need n >= 3")]
    PerturbedTooSmall,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub n: usize,
    /// The hidden forms `L_1, ..., L_n` (rows of an invertible matrix).
    pub hidden: Vec<LinearForm>,
    /// The factors `L_i - L_j`, `i < j` (one replaced when perturbed).
    pub factors: Vec<LinearForm>,
    pub mode: InstanceMode,
}

impl Instance {
    /// The expanded product; dense, so only practical for small `n`.
    pub fn polynomial(&self) -> Polynomial {
        product_of_forms(&self.factors, self.n).with_nvars(self.n)
    }
}

fn random_form<R: Rng>(rng: &mut R, n: usize) -> LinearForm {
    let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-ENTRY..=ENTRY)).collect();
    LinearForm::from_integers(&coeffs, 0)
}

pub fn generate_instance(n: usize, seed: u64, mode: InstanceMode) -> Result<Instance, InstanceError> {
    if n < 2 {
        return Err(InstanceError::TooSmall);
    }
    if mode == InstanceMode::Perturbed && n < 3 {
        return Err(InstanceError::PerturbedTooSmall);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hidden = loop {
        let forms: Vec<LinearForm> = (0..n).map(|_| random_form(&mut rng, n)).collect();
        let m = Matrix::from_rows(forms.iter().map(|f| f.coeff_vector(n)).collect()).expect("square");
        if m.rank() == n {
            break forms;
        }
    };
    let mut factors = pairwise_differences(&hidden);
    if mode == InstanceMode::Perturbed {
        let k = rng.gen_range(0..factors.len());
        let rest: Vec<LinearForm> = factors
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, f)| f.clone())
            .collect();
        let mut forbidden: HashSet<LinearForm> = HashSet::new();
        for (i, a) in rest.iter().enumerate() {
            for b in &rest[i + 1..] {
                forbidden.insert(sign_normalize(&(a + b)));
                forbidden.insert(sign_normalize(&(a - b)));
            }
        }
        let monic: HashSet<LinearForm> = factors
            .iter()
            .map(|f| f.canonicalize().expect("nonzero").1)
            .collect();
        let replacement = loop {
            let mut cand = LinearForm::homogeneous(Vec::new());
            for j in 1..n {
                let c = crate::scalar::rat(rng.gen_range(-3..=3));
                cand = &cand + &(&hidden[0] - &hidden[j]).scale(&c);
            }
            let Some((_, m)) = cand.canonicalize() else {
                continue;
            };
            if !monic.contains(&m) && !forbidden.contains(&sign_normalize(&cand)) {
                break cand;
            }
        };
        factors[k] = replacement;
    }
    Ok(Instance {
        n,
        hidden,
        factors,
        mode,
    })
}
