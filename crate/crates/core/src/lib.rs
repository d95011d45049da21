//! Clifford analysis and representations of step-two nilpotent groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`clifford`]: the complexified Clifford algebra `Cl(0,n)`.
//! * [`cpoly`]: polynomials with multivector coefficients, the Dirac operator,
//!   Cauchy–Kovalevskaya extension and the monogenic basis `V_k`.
//! * [`numerics`]: Gauss–Hermite rules, Gaussian inner products and
//!   finite-difference operator stencils.
//! * [`oscillator`]: the Heisenberg group, Schrödinger packets, Hermite
//!   functions and the Segal–Bargmann model.
//! * [`monomodel`]: the monogenic Fock-type model `M²`.
//! * [`nilgroup`]: the group `Gⁿ`, its representation on `ℂⁿ`-valued
//!   functions and the associated wavelet transforms.
//! * [`framework`]: coherent states and reduced wavelet transforms for a
//!   generic group action.
//! * [`verify`]: check suites, reports and the function-spec evaluator.

pub mod clifford;
pub mod cpoly;
mod error;
pub mod framework;
pub mod monomodel;
mod multi_index;
pub mod nilgroup;
pub mod numerics;
pub mod oscillator;
pub mod verify;

pub use error::{Error, Result};
pub use multi_index::MultiIndex;
pub use num_complex::Complex64;
