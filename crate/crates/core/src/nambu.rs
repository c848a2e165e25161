//! Nambu–Poisson tensors of order `n`: the map `π♯`, the fundamental-identity
//! criterion, closure of the graph of `π` under the Leibniz bracket, and the
//! brackets induced on `n`-forms and `(n−1)`-forms.

use num_traits::One;
use rand::Rng;
use thiserror::Error;

use crate::check::{CheckResult, Failure};
use crate::courant::{courant_bracket, dorfman_bracket, Section};
use crate::exterior::{
    apply_vector, contract_form_into_vec, ext_d, interior, lie_form, lie_multivec, pairing_full,
    vec_bracket, Context, Form, MultiIndex, MultiVec,
};
use crate::random::{random_form, random_poly};
use crate::scalar::{Monomial, Poly, Rational};

/// Default monomial degree bound for the fundamental-identity sweep.
pub const DEFAULT_MAX_DEGREE: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NambuError {
    #[error("{what} must have degree {expected}, got {got}")]
    Degree {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{what} lives on a chart of dimension {got}, expected {expected}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("monomial degree bound must be at least 1")]
    DegreeBound,
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("not a Nambu-Poisson tensor: L_(pi#(df)) pi = {residual} for f = {witness}")]
    NotNambuPoisson { witness: String, residual: String },
}

/// An `(n+1)`-vector field proposed as a Nambu–Poisson structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NambuCandidate {
    ctx: Context,
    pi: MultiVec,
}

impl NambuCandidate {
    pub fn new(ctx: Context, pi: MultiVec) -> Result<Self, NambuError> {
        if pi.dim() != ctx.m() {
            return Err(NambuError::Dimension {
                what: "pi",
                expected: ctx.m(),
                got: pi.dim(),
            });
        }
        if pi.degree() != ctx.n() + 1 && !pi.is_zero() {
            return Err(NambuError::Degree {
                what: "pi",
                expected: ctx.n() + 1,
                got: pi.degree(),
            });
        }
        Ok(NambuCandidate {
            ctx,
            pi: pi.with_degree_if_zero(ctx.n() + 1),
        })
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn pi(&self) -> &MultiVec {
        &self.pi
    }

    fn check_form(&self, what: &'static str, a: &Form, degree: usize) -> Result<(), NambuError> {
        if a.dim() != self.ctx.m() {
            return Err(NambuError::Dimension {
                what,
                expected: self.ctx.m(),
                got: a.dim(),
            });
        }
        if a.degree() != degree && !a.is_zero() {
            return Err(NambuError::Degree {
                what,
                expected: degree,
                got: a.degree(),
            });
        }
        Ok(())
    }

    fn sharp(&self, xi: &Form) -> MultiVec {
        let xi = xi.clone().with_degree_if_zero(self.ctx.n());
        contract_form_into_vec(&xi, &self.pi)
            .expect("n <= n + 1")
            .with_degree_if_zero(1)
    }
}

/// `π♯(ξ) = i_ξ π` for an `n`-form `ξ`.
pub fn pi_sharp(c: &NambuCandidate, xi: &Form) -> Result<MultiVec, NambuError> {
    c.check_form("xi", xi, c.ctx.n())?;
    Ok(c.sharp(xi))
}

/// `L_{π♯(df₁∧…∧dfₙ)} π`.
pub fn fundamental_residual(c: &NambuCandidate, fs: &[Poly]) -> MultiVec {
    assert_eq!(fs.len(), c.ctx.n(), "need n functions");
    let m = c.ctx.m();
    let df = fs
        .iter()
        .map(|f| ext_d(&Form::scalar(f.clone())).with_degree_if_zero(1))
        .reduce(|acc, d| acc.wedge(&d))
        .unwrap_or_else(|| Form::scalar(Poly::one(m)));
    lie_multivec(&c.sharp(&df), &c.pi)
}

/// Plain-text description of what the fundamental-identity sweep quantifies
/// over, for reports.
pub fn quantifier_scope(max_degree: u32) -> String {
    format!(
        "fundamental identity checked for all n-tuples of distinct non-constant monomials \
         of total degree <= {max_degree}; this is a finite partial verification, \
         not a proof for all smooth functions"
    )
}

/// All increasing `k`-combinations of `0..len`.
fn combinations(len: usize, k: usize) -> Vec<Vec<usize>> {
    MultiIndex::all(len, k)
        .into_iter()
        .map(|idx| idx.as_slice().to_vec())
        .collect()
}

/// Sweeps `L_{π♯(df₁∧…∧dfₙ)}π = 0` over every set of `n` distinct
/// non-constant monomials of degree `≤ D`. Constants and repeated entries are
/// skipped (they make `df₁∧…∧dfₙ` vanish) and order is irrelevant up to sign.
/// Witnesses appear in sorted tuple order.
pub fn np_fundamental_check(c: &NambuCandidate, max_degree: u32) -> Result<CheckResult, NambuError> {
    if max_degree == 0 {
        return Err(NambuError::DegreeBound);
    }
    let m = c.ctx.m();
    let monomials: Vec<Poly> = Monomial::all_up_to(m, max_degree)
        .into_iter()
        .filter(|mono| !mono.is_one())
        .map(|mono| Poly::term(mono, Rational::one()))
        .collect();
    let tuples = combinations(monomials.len(), c.ctx.n());
    Ok(CheckResult::over(
        "np-fundamental",
        "L_{pi#(df1^...^dfn)} pi = 0",
        &tuples,
        |tuple| {
            let fs: Vec<Poly> = tuple.iter().map(|&i| monomials[i].clone()).collect();
            let res = fundamental_residual(c, &fs);
            (!res.is_zero()).then(|| Failure::new(fs.iter().map(Poly::to_string).collect(), res))
        },
    ))
}

/// Whether `X + γ` lies on the graph `{π♯α + α}`: returns `X − π♯γ`.
fn off_graph(c: &NambuCandidate, e: &Section) -> MultiVec {
    e.vec() - &c.sharp(e.form())
}

fn graph_section(c: &NambuCandidate, a: &Form) -> Section {
    Section::new(c.ctx, c.sharp(a), a.clone()).expect("validated degrees")
}

/// Graph closure under a bracket: `α` runs over `x^a dx^I` with `|a| ≤ D` and
/// `β` over the constant basis (the residual is function-linear in `β`), then
/// seeded random pairs.
fn graph_closure_with<B>(
    c: &NambuCandidate,
    name: &str,
    statement: &str,
    bracket: B,
    seed: u64,
    salt: u32,
    samples: usize,
    max_degree: u32,
) -> CheckResult
where
    B: Fn(&Section, &Section) -> Section + Sync + Send,
{
    let (m, n) = (c.ctx.m(), c.ctx.n());
    let bases = MultiIndex::all(m, n);
    let mut pairs = Vec::new();
    for mono in Monomial::all_up_to(m, max_degree) {
        for i in &bases {
            let a = Form::monomial(Poly::term(mono.clone(), Rational::one()), i.as_slice());
            for j in &bases {
                pairs.push((a.clone(), Form::basis(m, j.as_slice())));
            }
        }
    }
    let case = |a: &Form, b: &Form| {
        let (e1, e2) = (graph_section(c, a), graph_section(c, b));
        let res = off_graph(c, &bracket(&e1, &e2));
        (!res.is_zero()).then(|| Failure::new(vec![e1.to_string(), e2.to_string()], res))
    };
    let swept = CheckResult::over(name, statement, &pairs, |(a, b)| case(a, b));
    let sampled = CheckResult::sampled(name, statement, seed, salt, samples, |rng| {
        let (a, b) = (random_form(rng, m, n), random_form(rng, m, n));
        case(&a, &b)
    });
    swept.merged(sampled)
}

/// Closure of the graph of `π` under the Leibniz (Dorfman) bracket.
pub fn graph_closure_check(
    c: &NambuCandidate,
    seed: u64,
    samples: usize,
    max_degree: u32,
) -> Result<CheckResult, NambuError> {
    if max_degree == 0 {
        return Err(NambuError::DegreeBound);
    }
    Ok(graph_closure_with(
        c,
        "graph-closure-dorfman",
        "[[pi#a + a, pi#b + b]] = pi#g + g for some n-form g",
        |e1, e2| dorfman_bracket(e1, e2).expect("shared context"),
        seed,
        41,
        samples,
        max_degree,
    ))
}

/// Closure of the graph of `π` under the skew (Courant) bracket.
pub fn graph_closure_courant_check(
    c: &NambuCandidate,
    seed: u64,
    samples: usize,
    max_degree: u32,
) -> Result<CheckResult, NambuError> {
    if max_degree == 0 {
        return Err(NambuError::DegreeBound);
    }
    Ok(graph_closure_with(
        c,
        "graph-closure-courant",
        "[pi#a + a, pi#b + b] = pi#g + g for some n-form g",
        |e1, e2| courant_bracket(e1, e2).expect("shared context"),
        seed,
        42,
        samples,
        max_degree,
    ))
}

/// `[α,β]_π = L_{π♯α}β − L_{π♯β}α + d i_{π♯β}α`.
pub fn nambu_form_bracket(c: &NambuCandidate, a: &Form, b: &Form) -> Result<Form, NambuError> {
    let n = c.ctx.n();
    c.check_form("alpha", a, n)?;
    c.check_form("beta", b, n)?;
    Ok(form_bracket(c, a, b))
}

fn form_bracket(c: &NambuCandidate, a: &Form, b: &Form) -> Form {
    let (pa, pb) = (c.sharp(a), c.sharp(b));
    let a = a.clone().with_degree_if_zero(c.ctx.n());
    (lie_form(&pa, b) - lie_form(&pb, &a) + ext_d(&interior(&pb, &a))).with_degree_if_zero(c.ctx.n())
}

/// `[α,β]^π = L_{π♯α}β + (−1)^{n+1} ⟨dα, π⟩ β`.
pub fn marrero_bracket(c: &NambuCandidate, a: &Form, b: &Form) -> Result<Form, NambuError> {
    let n = c.ctx.n();
    c.check_form("alpha", a, n)?;
    c.check_form("beta", b, n)?;
    let a = a.clone().with_degree_if_zero(n);
    let mut f = pairing_full(&c.pi, &ext_d(&a).with_degree_if_zero(n + 1));
    if n % 2 == 0 {
        f = -f;
    }
    Ok((lie_form(&c.sharp(&a), b) + b.scale_by(&f)).with_degree_if_zero(n))
}

/// `{ξ,η}_π = L_{π♯(dξ)}η` on `(n−1)`-forms.
pub fn leibniz_nm1_bracket(c: &NambuCandidate, xi: &Form, eta: &Form) -> Result<Form, NambuError> {
    let n = c.ctx.n();
    c.check_form("xi", xi, n - 1)?;
    c.check_form("eta", eta, n - 1)?;
    Ok(nm1_bracket(c, xi, eta))
}

fn nm1_bracket(c: &NambuCandidate, xi: &Form, eta: &Form) -> Form {
    let n = c.ctx.n();
    let xi = xi.clone().with_degree_if_zero(n - 1);
    let eta = eta.clone().with_degree_if_zero(n - 1);
    lie_form(&c.sharp(&ext_d(&xi)), &eta).with_degree_if_zero(n - 1)
}

fn form_failure(inputs: &[&Form], residual: &Form) -> Option<Failure> {
    (!residual.is_zero()).then(|| Failure::new(inputs.iter().map(|a| a.to_string()).collect(), residual))
}

fn vec_failure(inputs: &[&Form], residual: &MultiVec) -> Option<Failure> {
    (!residual.is_zero()).then(|| Failure::new(inputs.iter().map(|a| a.to_string()).collect(), residual))
}

fn forms(rng: &mut impl Rng, c: &NambuCandidate, k: usize, count: usize) -> Vec<Form> {
    (0..count).map(|_| random_form(rng, c.ctx.m(), k)).collect()
}

/// Checks the algebroid identities of `(∧ⁿT*M, [·,·]_π, π♯)`, the Leibniz
/// algebra `{·,·}_π` on `(n−1)`-forms, the comparison with `[·,·]^π`, and
/// the graph identities relating `π♯`, `L` and `d`. Refuses candidates that
/// fail the fundamental identity at the default degree bound.
pub fn check_nambu_leibniz_algebroid(
    c: &NambuCandidate,
    seed: u64,
    samples: usize,
) -> Result<Vec<CheckResult>, NambuError> {
    if samples == 0 {
        return Err(NambuError::NoSamples);
    }
    let pre = np_fundamental_check(c, DEFAULT_MAX_DEGREE)?;
    if let Some(f) = pre.failures.first() {
        return Err(NambuError::NotNambuPoisson {
            witness: f.inputs.join(", "),
            residual: f.residual.clone(),
        });
    }
    let n = c.ctx.n();
    let br = |a: &Form, b: &Form| form_bracket(c, a, b);
    let sign_n = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
    let full = |a: &Form| pairing_full(&c.pi, &ext_d(a).with_degree_if_zero(n + 1));
    let mut out = Vec::new();

    out.push(CheckResult::sampled(
        "nambu-leibniz",
        "[a,[b,g]]_pi = [[a,b]_pi,g]_pi + [b,[a,g]_pi]_pi",
        seed,
        51,
        samples,
        |rng| {
            let f = forms(rng, c, n, 3);
            let res = br(&f[0], &br(&f[1], &f[2])) - (br(&br(&f[0], &f[1]), &f[2]) + br(&f[1], &br(&f[0], &f[2])));
            form_failure(&[&f[0], &f[1], &f[2]], &res)
        },
    ));
    out.push(CheckResult::sampled(
        "nambu-anchor",
        "pi#[a,b]_pi = [pi#a, pi#b]",
        seed,
        52,
        samples,
        |rng| {
            let f = forms(rng, c, n, 2);
            let res = c.sharp(&br(&f[0], &f[1])) - vec_bracket(&c.sharp(&f[0]), &c.sharp(&f[1]));
            vec_failure(&[&f[0], &f[1]], &res)
        },
    ));
    out.push(CheckResult::sampled(
        "nambu-scalar-rule",
        "[a, f b]_pi = f [a,b]_pi + (pi#a)(f) b",
        seed,
        53,
        samples,
        |rng| {
            let fs = forms(rng, c, n, 2);
            let f = random_poly(rng, c.ctx.m());
            let lhs = br(&fs[0], &fs[1].scale_by(&f));
            let rhs = br(&fs[0], &fs[1]).scale_by(&f) + fs[1].scale_by(&apply_vector(&c.sharp(&fs[0]), &f));
            let mut fail = form_failure(&[&fs[0], &fs[1]], &(lhs - rhs));
            if let Some(w) = fail.as_mut() {
                w.inputs.push(f.to_string());
            }
            fail
        },
    ));
    out.push(CheckResult::sampled(
        "nm1-leibniz-algebra",
        "{x,{y,z}}_pi = {{x,y}_pi,z}_pi + {y,{x,z}_pi}_pi",
        seed,
        54,
        samples,
        |rng| {
            let f = forms(rng, c, n - 1, 3);
            let b = |x: &Form, y: &Form| nm1_bracket(c, x, y);
            let res = b(&f[0], &b(&f[1], &f[2])) - (b(&b(&f[0], &f[1]), &f[2]) + b(&f[1], &b(&f[0], &f[2])));
            form_failure(&[&f[0], &f[1], &f[2]], &res)
        },
    ));
    out.push(CheckResult::sampled(
        "nm1-exactness",
        "[dx, dy]_pi = d{x,y}_pi",
        seed,
        55,
        samples,
        |rng| {
            let f = forms(rng, c, n - 1, 2);
            let (d0, d1) = (ext_d(&f[0]).with_degree_if_zero(n), ext_d(&f[1]).with_degree_if_zero(n));
            let res = br(&d0, &d1) - ext_d(&nm1_bracket(c, &f[0], &f[1]));
            form_failure(&[&f[0], &f[1]], &res)
        },
    ));
    out.push(CheckResult::sampled(
        "marrero-comparison",
        "pi#([a,b]_pi - [a,b]^pi) = 0 and pi#[a,b]^pi = [pi#a, pi#b]",
        seed,
        56,
        samples,
        |rng| {
            let f = forms(rng, c, n, 2);
            let other = marrero_bracket(c, &f[0], &f[1]).expect("degree n");
            let diff = c.sharp(&(br(&f[0], &f[1]) - other.clone()));
            let anchor = c.sharp(&other) - vec_bracket(&c.sharp(&f[0]), &c.sharp(&f[1]));
            let res = if diff.is_zero() { anchor } else { diff };
            vec_failure(&[&f[0], &f[1]], &res)
        },
    ));
    out.push(CheckResult::sampled(
        "sharp-lie-identity",
        "pi#(L_{pi#a} b) = [pi#a, pi#b] + (-1)^n <da, pi> pi#b",
        seed,
        57,
        samples,
        |rng| {
            let f = forms(rng, c, n, 2);
            let (pa, pb) = (c.sharp(&f[0]), c.sharp(&f[1]));
            let rhs = vec_bracket(&pa, &pb) + pb.scale_by(&full(&f[0])).scale(&sign_n);
            vec_failure(&[&f[0], &f[1]], &(c.sharp(&lie_form(&pa, &f[1])) - rhs))
        },
    ));
    out.push(CheckResult::sampled(
        "sharp-interior-identity",
        "pi#(i_{pi#a} db) = (-1)^n <db, pi> pi#a",
        seed,
        58,
        samples,
        |rng| {
            let f = forms(rng, c, n, 2);
            let pa = c.sharp(&f[0]);
            let lhs = c.sharp(&interior(&pa, &ext_d(&f[1])));
            let rhs = pa.scale_by(&full(&f[1])).scale(&sign_n);
            vec_failure(&[&f[0], &f[1]], &(lhs - rhs))
        },
    ));
    Ok(out)
}
