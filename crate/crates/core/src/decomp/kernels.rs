use serde::Serialize;

use super::DecompError;
use crate::crystal::window_floor;
use crate::linalg::rank;
use crate::rep::{act, b_decompose, divided_f, ker_e, AlgebraGen, Element, ModuleShape};

/// A vector of `Ker e` written as `f^(k) u` with `e' u = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelCertificate {
    pub weight: i64,
    pub k: u64,
    pub u: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub certificates: Vec<KernelCertificate>,
    /// Weights where no basis of the required form was found.
    pub failures: Vec<i64>,
    pub pass: bool,
}

/// Finds, weight by weight, a basis of `Ker e` made of vectors `f^(k) u` with `u ∈ Ker e'`.
pub fn verify_kernel_certificates(shape: &ModuleShape, window: u64) -> Result<KernelReport, DecompError> {
    let mut certificates = Vec::new();
    let mut failures = Vec::new();
    let Some(top) = shape.max_weight() else {
        return Ok(KernelReport { certificates, failures, pass: true });
    };
    for w in (window_floor(shape, window)..=top).rev() {
        let slots = shape.weight_slots(w);
        let kernel = ker_e(shape, w)?;
        if kernel.is_empty() {
            continue;
        }
        let mut chosen: Vec<Vec<_>> = Vec::new();
        let mut found = Vec::new();
        for x in &kernel {
            for (k, u) in b_decompose(x, shape)? {
                let piece = divided_f(&u, shape, k)?;
                if !act(AlgebraGen::E, &piece, shape)?.is_zero() {
                    continue;
                }
                let mut trial = chosen.clone();
                trial.push(piece.coords(&slots));
                if rank(trial.clone(), slots.len()) == trial.len() {
                    chosen = trial;
                    found.push(KernelCertificate { weight: w, k, u });
                }
            }
        }
        if found.len() != kernel.len() {
            failures.push(w);
        }
        certificates.extend(found);
    }
    let pass = failures.is_empty();
    Ok(KernelReport { certificates, failures, pass })
}
