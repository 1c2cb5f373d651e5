//! Nikiforov–Uvarov solver for hypergeometric-type equations, applied to the
//! real, PT-symmetric and non-PT complex Woods–Saxon potentials.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`] — complex polynomials of low degree,
//! * [`nu_engine`] — the generic reduction (k candidates, π branches,
//!   quantization, weight function, Rodrigues polynomials),
//! * [`special_fn`] — Jacobi polynomials two ways, log-gamma, quadrature,
//! * [`woods_saxon`] — potentials, units, closed-form spectra, wavefunctions,
//! * [`verify`] — independent oracles for every closed-form result.

pub mod error;
pub mod nu_engine;
pub mod poly;
pub mod quadrature;
pub mod special_fn;
pub mod verify;
pub mod woods_saxon;

pub use error::{Error, Result};
pub use nu_engine::{BranchSign, HypergeometricForm, NuBranch, SpectralFamily, WeightSpec};
pub use num_complex::Complex64;
pub use poly::Poly;
pub use special_fn::JacobiParams;
pub use woods_saxon::{
    BoundStateWavefunction, DimensionlessParams, PhysicalParams, SpectrumEntry, Variant,
};
