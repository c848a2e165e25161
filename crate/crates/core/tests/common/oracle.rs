//! Reference implementations written directly from coordinate formulas,
//! sharing nothing with the library's Cartan-calculus code beyond the tensor
//! containers. Used to cross-check `lie_form` and `interior`.

use hcourant::exterior::apply_vector;
use hcourant::{Form, MultiVec, Poly};

/// `L_X(f dx^{j1}∧…∧dx^{jk}) = X(f) dx^J + f Σ_s dx^{j1}∧…∧d(X^{js})∧…∧dx^{jk}`
/// with `d(X^j) = Σ_i ∂_i X^j dx^i`.
pub fn lie_form_components(x: &MultiVec, a: &Form) -> Form {
    let m = a.dim();
    let mut out = Form::zero(m, a.degree());
    for (idx, f) in a.terms() {
        let j = idx.as_slice();
        out = out + Form::monomial(apply_vector(x, f), j);
        for s in 0..j.len() {
            let xs = x.component(j[s]);
            for i in 0..m {
                let dxs = xs.partial(i).expect("index in range");
                if dxs.is_zero() {
                    continue;
                }
                let mut replaced = j.to_vec();
                replaced[s] = i;
                out = out + Form::monomial(f * &dxs, &replaced);
            }
        }
    }
    out
}

/// `i_X(f dx^{j1}∧…∧dx^{jk}) = Σ_s (−1)^s X^{js} f dx^{J∖js}`.
pub fn interior_components(x: &MultiVec, a: &Form) -> Form {
    let m = a.dim();
    let mut out = Form::zero(m, a.degree().saturating_sub(1));
    for (idx, f) in a.terms() {
        let j = idx.as_slice();
        for s in 0..j.len() {
            let mut c: Poly = &x.component(j[s]) * f;
            if s % 2 == 1 {
                c = -c;
            }
            let rest: Vec<usize> = j.iter().enumerate().filter(|&(t, _)| t != s).map(|(_, &v)| v).collect();
            out = out + Form::monomial(c, &rest);
        }
    }
    out
}
