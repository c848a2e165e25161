//! Alternating tensors on a chart: differential forms, multivector fields and
//! the Cartan calculus relating them.

mod calculus;
mod index;
mod tensor;

pub use calculus::{
    apply_vector, contract_form_into_vec, contract_vec_into_form, ext_d, interior, lie_form,
    lie_multivec, pairing_full, vec_bracket,
};
pub use index::MultiIndex;
pub use tensor::{Alternating, Co, Contra, Form, MultiVec, Variance};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("invalid context: need 1 <= n <= m, got m = {m}, n = {n}")]
    InvalidContext { m: usize, n: usize },
    #[error("cannot contract a degree-{inner} tensor into a degree-{outer} tensor")]
    ContractionDegree { inner: usize, outer: usize },
    #[error("expected degree {expected}, got {got}")]
    Degree { expected: usize, got: usize },
    #[error("chart dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// Chart dimension `m` and bracket order `n` shared by every object of a
/// computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Context {
    m: usize,
    n: usize,
}

impl Context {
    pub fn new(m: usize, n: usize) -> Result<Self, ExteriorError> {
        if n == 0 || n > m {
            return Err(ExteriorError::InvalidContext { m, n });
        }
        Ok(Context { m, n })
    }

    /// Chart dimension.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Bracket order: sections pair vector fields with `n`-forms.
    pub fn n(&self) -> usize {
        self.n
    }
}
