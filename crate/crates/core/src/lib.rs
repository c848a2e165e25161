//! Exact symbolic calculus for the higher-order Courant and Dorfman brackets
//! on `TM ⊕ ∧ⁿT*M`, with seeded identity checks for the bracket axioms,
//! Nambu-Poisson tensors and multisymplectic forms.
//!
//! All coefficients are polynomials with rational coefficients, so every
//! identity is checked by demanding an exactly zero residual.

pub mod check;
pub mod courant;
pub mod dsl;
pub mod exterior;
pub mod linalg;
pub mod nambu;
pub mod plectic;
pub mod random;
pub mod rational;
pub mod scalar;

pub use courant::Section;
pub use exterior::{Context, Form, MultiIndex, MultiVec};
pub use scalar::{Poly, Rational};
