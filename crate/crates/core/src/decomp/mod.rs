//! Recovering a decomposition into Verma modules and `T`-modules from a module given in a
//! twisted basis.

mod kernels;
mod decompose;
mod presentation;
mod verify;

pub use kernels::{verify_kernel_certificates, KernelReport, KernelCertificate};
pub use decompose::{decompose, CertificateEntry, DecomposeOptions, Decomposition, Summand};
pub use presentation::TwistedPresentation;
pub use verify::{
    completed_decomposition_lattice, decomposition_lattice, verify_decomposition, DecompositionReport, GeneratorCheck,
};

use crate::crystal::CrystalError;
use crate::rep::RepError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompError {
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("condition ({condition}) on the B_q-structure fails at weight {weight}")]
    Condition { condition: char, weight: i64 },
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error(transparent)]
    Rep(#[from] RepError),
}
