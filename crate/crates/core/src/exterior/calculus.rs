//! Cartan calculus on forms and multivector fields.
//!
//! Contraction conventions used throughout the crate:
//!
//! * form into multivector contracts the leading slots, `⟨i_ξ P, η⟩ = ⟨P, ξ ∧ η⟩`;
//! * multivector into form is iterated, `i_{X∧Y} = i_Y ∘ i_X`;
//! * the basis pairing is `⟨dx^I, ∂_I⟩ = 1` with no factorial factors.

use crate::scalar::{Poly, PolySum};

use super::tensor::TensorSum;
use super::{ExteriorError, Form, MultiIndex, MultiVec};

/// `X(f) = Σ_j X^j ∂_j f`.
pub fn apply_vector(x: &MultiVec, f: &Poly) -> Poly {
    assert_eq!(x.degree(), 1, "apply_vector needs a vector field");
    let mut acc = PolySum::new(f.nvars());
    for (idx, xj) in x.terms() {
        acc.push_product(xj, &f.deriv(idx.as_slice()[0]), false);
    }
    acc.finish()
}

/// `i_ξ P` for a degree-`p` form and degree-`q` multivector, `p ≤ q`.
pub fn contract_form_into_vec(xi: &Form, p: &MultiVec) -> Result<MultiVec, ExteriorError> {
    if xi.degree() > p.degree() {
        return Err(ExteriorError::ContractionDegree {
            inner: xi.degree(),
            outer: p.degree(),
        });
    }
    assert_eq!(xi.dim(), p.dim(), "chart dimension mismatch");
    let mut out = TensorSum::new(p.dim(), p.degree() - xi.degree());
    for (j, f) in xi.terms() {
        for (k, g) in p.terms() {
            if let Some((odd, rest)) = leading_split(k, j) {
                out.push_product(rest, f, g, odd);
            }
        }
    }
    Ok(out.finish())
}

/// `i_P a` for a degree-`p` multivector and degree-`q` form, `p ≤ q`.
pub fn contract_vec_into_form(p: &MultiVec, a: &Form) -> Result<Form, ExteriorError> {
    if p.degree() > a.degree() {
        return Err(ExteriorError::ContractionDegree {
            inner: p.degree(),
            outer: a.degree(),
        });
    }
    assert_eq!(p.dim(), a.dim(), "chart dimension mismatch");
    let mut out = TensorSum::new(a.dim(), a.degree() - p.degree());
    for (k, g) in p.terms() {
        for (i, f) in a.terms() {
            if let Some((odd, rest)) = leading_split(i, k) {
                out.push_product(rest, f, g, odd);
            }
        }
    }
    Ok(out.finish())
}

/// Writes `e_outer = ± e_lead ∧ e_rest`, returning the sign and `rest`.
fn leading_split(outer: &MultiIndex, lead: &MultiIndex) -> Option<(bool, MultiIndex)> {
    let rest = outer.difference(lead)?;
    let (odd, _) = lead.merge(&rest)?;
    Some((odd, rest))
}

/// `⟨P, a⟩` for equal degrees, as a function.
pub fn pairing_full(p: &MultiVec, a: &Form) -> Poly {
    assert_eq!(p.degree(), a.degree(), "full contraction needs equal degrees");
    contract_vec_into_form(p, a)
        .expect("equal degrees")
        .scalar_part()
}

/// Interior product `i_X a` of a vector field; zero on functions.
pub fn interior(x: &MultiVec, a: &Form) -> Form {
    assert_eq!(x.degree(), 1, "interior product needs a vector field");
    if a.degree() == 0 {
        return Form::zero(a.dim(), 0);
    }
    contract_vec_into_form(x, a).expect("degree >= 1")
}

/// Coordinate exterior derivative `d(f dx^I) = Σ_i ∂_i f dx^i ∧ dx^I`.
pub fn ext_d(a: &Form) -> Form {
    let dim = a.dim();
    let mut out = TensorSum::new(dim, a.degree() + 1);
    for (idx, f) in a.terms() {
        for i in 0..dim {
            if idx.contains(i) {
                continue;
            }
            if let Some((odd, merged)) = MultiIndex::single(i).merge(idx) {
                out.push(merged, &f.deriv(i), odd);
            }
        }
    }
    out.finish()
}

/// Lie derivative of a form via the Cartan formula `L_X = i_X d + d i_X`.
pub fn lie_form(x: &MultiVec, a: &Form) -> Form {
    if a.degree() == 0 {
        return Form::scalar(apply_vector(x, &a.scalar_part())).with_degree_if_zero(0);
    }
    (interior(x, &ext_d(a)) + ext_d(&interior(x, a))).with_degree_if_zero(a.degree())
}

/// Lie derivative of a multivector field along a vector field.
///
/// `L_X(g ∂_K) = X(g) ∂_K + g Σ_s ∂_{k1} ∧ … ∧ [X, ∂_{ks}] ∧ … ∧ ∂_{kp}` with
/// `[X, ∂_k] = −Σ_i (∂_k X^i) ∂_i`.
pub fn lie_multivec(x: &MultiVec, p: &MultiVec) -> MultiVec {
    assert_eq!(x.degree(), 1, "Lie derivative along a vector field");
    let dim = p.dim();
    let mut out = TensorSum::new(dim, p.degree());
    for (k, g) in p.terms() {
        for (xi_idx, xi) in x.terms() {
            out.push_product(k.clone(), xi, &g.deriv(xi_idx.as_slice()[0]), false);
        }
        for (slot, &ks) in k.as_slice().iter().enumerate() {
            for (xi_idx, xi) in x.terms() {
                let dxi = xi.deriv(ks);
                if dxi.is_zero() {
                    continue;
                }
                let mut replaced = k.as_slice().to_vec();
                replaced[slot] = xi_idx.as_slice()[0];
                if let Some((odd, idx)) = MultiIndex::sort_signed(replaced) {
                    // the bracket contributes with a minus sign
                    out.push_product(idx, g, &dxi, !odd);
                }
            }
        }
    }
    out.finish()
}

/// Jacobi–Lie bracket `[X, Y]^i = Σ_j X^j ∂_j Y^i − Y^j ∂_j X^i`.
pub fn vec_bracket(x: &MultiVec, y: &MultiVec) -> MultiVec {
    assert_eq!(x.degree(), 1);
    assert_eq!(y.degree(), 1);
    let dim = x.dim();
    let components = (0..dim)
        .map(|i| apply_vector(x, &y.component(i)) - apply_vector(y, &x.component(i)))
        .collect();
    MultiVec::vector(components)
}
