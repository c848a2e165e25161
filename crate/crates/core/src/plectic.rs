//! Multisymplectic structures: an `(n+1)`-form `ω`, its flat map `X ↦ i_X ω`,
//! closure of its graph, admissible `n`-forms with their Lie algebroid, and
//! Hamiltonian `(n−1)`-forms with the hemi- and semi-brackets.

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::check::{CheckResult, Failure};
use crate::courant::{deformed_dorfman, dorfman_bracket, gauge, pairing, Section};
use crate::exterior::{
    apply_vector, ext_d, interior, lie_form, vec_bracket, Context, Form, MultiIndex, MultiVec,
};
use crate::linalg::Matrix;
use crate::random::{random_constant_vector, random_form, random_point, random_poly, random_vector, rng_for};
use crate::scalar::{Monomial, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlecticError {
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
    #[error("at least one evaluation point is required")]
    NoPoints,
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("omega is not closed: d omega = {residual}")]
    NotClosed { residual: String },
    #[error("{form} is not in the image of X -> i_X omega")]
    NotAdmissible { form: String },
    #[error("{form} is not Hamiltonian: d of it is not i_X omega for any X")]
    NotHamiltonian { form: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{what} does not satisfy its defining equation; residual {residual}")]
    InvalidPair { what: &'static str, residual: String },
    #[error("bracket violates X_[a,b] = [X_a, X_b]; residual {residual}")]
    InconsistentCandidate { residual: String },
}

/// An `(n+1)`-form proposed as a (pre-)`n`-plectic structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlecticCandidate {
    ctx: Context,
    omega: Form,
}

impl PlecticCandidate {
    pub fn new(ctx: Context, omega: Form) -> Result<Self, PlecticError> {
        check_form("omega", ctx, &omega, ctx.n() + 1)?;
        Ok(PlecticCandidate {
            ctx,
            omega: omega.with_degree_if_zero(ctx.n() + 1),
        })
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn is_closed(&self) -> bool {
        ext_d(&self.omega).is_zero()
    }

    fn flat(&self, x: &MultiVec) -> Form {
        interior(x, &self.omega).with_degree_if_zero(self.ctx.n())
    }

    fn require_closed(&self) -> Result<(), PlecticError> {
        let d = ext_d(&self.omega);
        if d.is_zero() {
            Ok(())
        } else {
            Err(PlecticError::NotClosed { residual: d.to_string() })
        }
    }
}

fn check_form(what: &'static str, ctx: Context, a: &Form, degree: usize) -> Result<(), PlecticError> {
    if a.dim() != ctx.m() {
        return Err(PlecticError::Dimension {
            what,
            expected: ctx.m(),
            got: a.dim(),
        });
    }
    if a.degree() != degree && !a.is_zero() {
        return Err(PlecticError::Degree {
            what,
            expected: degree,
            got: a.degree(),
        });
    }
    Ok(())
}

fn check_vector(what: &'static str, ctx: Context, x: &MultiVec) -> Result<(), PlecticError> {
    if x.dim() != ctx.m() {
        return Err(PlecticError::Dimension {
            what,
            expected: ctx.m(),
            got: x.dim(),
        });
    }
    if x.degree() != 1 && !x.is_zero() {
        return Err(PlecticError::Degree {
            what,
            expected: 1,
            got: x.degree(),
        });
    }
    Ok(())
}

/// An admissible `n`-form together with its vector field, `α = i_{X_α} ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissiblePair {
    alpha: Form,
    x_alpha: MultiVec,
}

impl AdmissiblePair {
    pub fn new(c: &PlecticCandidate, alpha: Form, x_alpha: MultiVec) -> Result<Self, PlecticError> {
        let n = c.ctx.n();
        check_form("alpha", c.ctx, &alpha, n)?;
        check_vector("X_alpha", c.ctx, &x_alpha)?;
        let (alpha, x_alpha) = (alpha.with_degree_if_zero(n), x_alpha.with_degree_if_zero(1));
        let residual = c.flat(&x_alpha) - alpha.clone();
        if !residual.is_zero() {
            return Err(PlecticError::InvalidPair {
                what: "admissible pair",
                residual: residual.to_string(),
            });
        }
        Ok(AdmissiblePair { alpha, x_alpha })
    }

    /// `(i_X ω, X)`, admissible by construction.
    pub fn from_vector(c: &PlecticCandidate, x: MultiVec) -> Self {
        let x = x.with_degree_if_zero(1);
        AdmissiblePair { alpha: c.flat(&x), x_alpha: x }
    }

    pub fn alpha(&self) -> &Form {
        &self.alpha
    }

    pub fn x_alpha(&self) -> &MultiVec {
        &self.x_alpha
    }
}

/// A Hamiltonian `(n−1)`-form with its vector field, `dξ = i_{X_ξ} ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianPair {
    xi: Form,
    x_xi: MultiVec,
}

impl HamiltonianPair {
    pub fn new(c: &PlecticCandidate, xi: Form, x_xi: MultiVec) -> Result<Self, PlecticError> {
        let n = c.ctx.n();
        check_form("xi", c.ctx, &xi, n - 1)?;
        check_vector("X_xi", c.ctx, &x_xi)?;
        let (xi, x_xi) = (xi.with_degree_if_zero(n - 1), x_xi.with_degree_if_zero(1));
        let residual = c.flat(&x_xi) - ext_d(&xi).with_degree_if_zero(n);
        if !residual.is_zero() {
            return Err(PlecticError::InvalidPair {
                what: "Hamiltonian pair",
                residual: residual.to_string(),
            });
        }
        Ok(HamiltonianPair { xi, x_xi })
    }

    pub fn xi(&self) -> &Form {
        &self.xi
    }

    pub fn x_xi(&self) -> &MultiVec {
        &self.x_xi
    }

    /// The admissible pair `(dξ, X_ξ)`.
    pub fn exact(&self) -> AdmissiblePair {
        let n = self.xi.degree() + 1;
        AdmissiblePair {
            alpha: ext_d(&self.xi).with_degree_if_zero(n),
            x_alpha: self.x_xi.clone(),
        }
    }
}

/// `ω♭(X) = i_X ω`.
pub fn omega_flat(c: &PlecticCandidate, x: &MultiVec) -> Result<Form, PlecticError> {
    check_vector("X", c.ctx, x)?;
    Ok(c.flat(&x.clone().with_degree_if_zero(1)))
}

/// Matrix of `X ↦ i_X ω` in the bases `∂_j` and `dx^I`, coefficients
/// evaluated by `eval`.
fn flat_matrix(c: &PlecticCandidate, eval: impl Fn(&Poly) -> Rational) -> Matrix {
    let (m, n) = (c.ctx.m(), c.ctx.n());
    let rows = MultiIndex::all(m, n);
    let mut a = Matrix::zeros(rows.len(), m);
    for j in 0..m {
        let col = c.flat(&MultiVec::basis(m, &[j]));
        for (r, idx) in rows.iter().enumerate() {
            a.set(r, j, eval(&col.coeff(idx)));
        }
    }
    a
}

fn kernel_text(m: usize, k: Vec<Rational>) -> String {
    MultiVec::vector(k.into_iter().map(|v| Poly::constant(m, v)).collect()).to_string()
}

fn point_text(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// `count` seeded rational points for pointwise rank checks.
pub fn sample_points(m: usize, seed: u64, count: usize) -> Vec<Vec<Rational>> {
    (0..count as u64)
        .map(|i| random_point(&mut rng_for(seed, (90u64 << 32) | i), m))
        .collect()
}

/// `i_X ω = 0 ⇒ X = 0`. Constant `ω` gets an exact rank verdict
/// (`nondegenerate-exact`); otherwise the rank is computed at each point
/// (`nondegenerate-sampled`), where a deficient point is a definitive witness
/// but full rank everywhere only certifies the sampled points.
pub fn nondegeneracy_check(c: &PlecticCandidate, points: &[Vec<Rational>]) -> Result<CheckResult, PlecticError> {
    if points.is_empty() {
        return Err(PlecticError::NoPoints);
    }
    let m = c.ctx.m();
    if let Some(p) = points.iter().find(|p| p.len() != m) {
        return Err(PlecticError::PointLength { expected: m, got: p.len() });
    }
    if c.omega.is_constant() {
        let a = flat_matrix(c, Poly::constant_term);
        let witness = a
            .kernel_vector()
            .map(|k| Failure::new(vec![c.omega.to_string()], kernel_text(m, k)));
        return Ok(CheckResult::verdict(
            "nondegenerate-exact",
            "i_X omega = 0 => X = 0 (exact rank of X -> i_X omega)",
            witness,
        ));
    }
    Ok(CheckResult::over(
        "nondegenerate-sampled",
        "i_X omega = 0 => X = 0 at each sampled point",
        points,
        |p| {
            let a = flat_matrix(c, |f| f.eval(p).expect("point length checked"));
            a.kernel_vector()
                .map(|k| Failure::new(vec![c.omega.to_string(), point_text(p)], kernel_text(m, k)))
        },
    ))
}

fn graph_section(c: &PlecticCandidate, x: &MultiVec) -> Section {
    Section::new(c.ctx, x.clone(), c.flat(x)).expect("validated degrees")
}

/// Pairs of graph generators: every ordered pair of coordinate fields (the
/// closure residual is tensorial in `X`, `Y`) plus seeded random fields.
fn graph_checks<B>(
    c: &PlecticCandidate,
    prefix: &str,
    statement: &str,
    bracket: B,
    seed: u64,
    salt: u32,
    samples: usize,
) -> Vec<CheckResult>
where
    B: Fn(&Section, &Section) -> Section + Sync + Send,
{
    let m = c.ctx.m();
    let coords: Vec<(MultiVec, MultiVec)> = (0..m)
        .flat_map(|i| (0..m).map(move |j| (MultiVec::basis(m, &[i]), MultiVec::basis(m, &[j]))))
        .collect();
    let closure = |x: &MultiVec, y: &MultiVec| {
        let (e1, e2) = (graph_section(c, x), graph_section(c, y));
        let br = bracket(&e1, &e2);
        let res = br.form() - &c.flat(br.vec());
        (!res.is_zero()).then(|| Failure::new(vec![e1.to_string(), e2.to_string()], res))
    };
    let isotropy = |x: &MultiVec, y: &MultiVec| {
        let (e1, e2) = (graph_section(c, x), graph_section(c, y));
        let res = pairing(&e1, &e2).expect("shared context");
        (!res.is_zero()).then(|| Failure::new(vec![e1.to_string(), e2.to_string()], res))
    };
    let name = format!("{prefix}graph-closure");
    let closed = CheckResult::over(&name, statement, &coords, |(x, y)| closure(x, y)).merged(
        CheckResult::sampled(&name, statement, seed, salt, samples, |rng| {
            closure(&random_vector(rng, m), &random_vector(rng, m))
        }),
    );
    let name = format!("{prefix}graph-isotropy");
    let iso_statement = "<X + i_X omega, Y + i_Y omega> = 0";
    let isotropic = CheckResult::over(&name, iso_statement, &coords, |(x, y)| isotropy(x, y)).merged(
        CheckResult::sampled(&name, iso_statement, seed, salt + 1, samples, |rng| {
            isotropy(&random_vector(rng, m), &random_vector(rng, m))
        }),
    );
    vec![closed, isotropic]
}

/// `dω = 0`, closure of the graph `{X + i_X ω}` under the Leibniz bracket,
/// and isotropy of the graph.
pub fn graph_closure_omega(c: &PlecticCandidate, seed: u64, samples: usize) -> Result<Vec<CheckResult>, PlecticError> {
    if samples == 0 {
        return Err(PlecticError::NoSamples);
    }
    let d = ext_d(&c.omega);
    let mut out = vec![CheckResult::verdict(
        "omega-closed",
        "d omega = 0",
        (!d.is_zero()).then(|| Failure::new(vec![c.omega.to_string()], &d)),
    )];
    out.extend(graph_checks(
        c,
        "omega-",
        "[[X + i_X omega, Y + i_Y omega]] = [X,Y] + i_[X,Y] omega",
        |a, b| dorfman_bracket(a, b).expect("shared context"),
        seed,
        61,
        samples,
    ));
    Ok(out)
}

/// `dω + Θ = 0` against closure of the graph under the `Θ`-twisted bracket;
/// when the former holds, also that `e^{−ω}` intertwines the twisted and
/// untwisted brackets.
pub fn deformed_graph_check(
    c: &PlecticCandidate,
    theta: &Form,
    seed: u64,
    samples: usize,
) -> Result<Vec<CheckResult>, PlecticError> {
    if samples == 0 {
        return Err(PlecticError::NoSamples);
    }
    let n = c.ctx.n();
    check_form("theta", c.ctx, theta, n + 2)?;
    let theta = theta.clone().with_degree_if_zero(n + 2);
    let sum = ext_d(&c.omega) + theta.clone();
    let mut out = vec![CheckResult::verdict(
        "deformed-closed",
        "d omega + Theta = 0",
        (!sum.is_zero()).then(|| Failure::new(vec![c.omega.to_string(), theta.to_string()], &sum)),
    )];
    out.extend(graph_checks(
        c,
        "deformed-",
        "[[X + i_X omega, Y + i_Y omega]]_Theta = [X,Y] + i_[X,Y] omega",
        |a, b| deformed_dorfman(a, b, &theta).expect("checked degree"),
        seed,
        63,
        samples,
    ));
    if sum.is_zero() {
        let minus = -c.omega.clone();
        let shear = |e: &Section| gauge(&minus, e).expect("degree n + 1");
        let ctx = c.ctx;
        out.push(CheckResult::sampled(
            "gauge-untwists",
            "e^{-omega} [[e1,e2]]_Theta = [[e^{-omega} e1, e^{-omega} e2]]",
            seed,
            65,
            samples,
            |rng| {
                let (e1, e2) = (Section::random(ctx, rng), Section::random(ctx, rng));
                let lhs = shear(&deformed_dorfman(&e1, &e2, &theta).expect("checked degree"));
                let rhs = dorfman_bracket(&shear(&e1), &shear(&e2)).expect("shared context");
                let res = lhs.sub(&rhs);
                (!res.is_zero()).then(|| Failure::new(vec![e1.to_string(), e2.to_string()], res))
            },
        ));
    }
    Ok(out)
}

/// Solves `α = i_X ω` for constant `ω`, one linear system per monomial of
/// `α`. Free directions of a degenerate `ω` are set to zero.
pub fn solve_admissible(c: &PlecticCandidate, alpha: &Form) -> Result<AdmissiblePair, PlecticError> {
    let (m, n) = (c.ctx.m(), c.ctx.n());
    check_form("alpha", c.ctx, alpha, n)?;
    if !c.omega.is_constant() {
        return Err(PlecticError::Unsupported(
            "solving i_X omega = alpha needs constant-coefficient omega; supply X and verify instead".into(),
        ));
    }
    let alpha = alpha.clone().with_degree_if_zero(n);
    let a = flat_matrix(c, Poly::constant_term);
    let rows = MultiIndex::all(m, n);
    let mut monomials: Vec<Monomial> = alpha
        .terms()
        .flat_map(|(_, f)| f.terms().map(|(mono, _)| mono.clone()))
        .collect();
    monomials.sort();
    monomials.dedup();
    let rhs: Vec<Vec<Rational>> = monomials
        .iter()
        .map(|mono| rows.iter().map(|idx| alpha.coeff(idx).coeff(mono)).collect())
        .collect();
    let solutions = a.solve_many(&rhs).ok_or_else(|| PlecticError::NotAdmissible {
        form: alpha.to_string(),
    })?;
    let mut components = vec![Poly::zero(m); m];
    for (mono, sol) in monomials.iter().zip(solutions) {
        for (j, v) in sol.into_iter().enumerate() {
            if !v.is_zero() {
                components[j] = &components[j] + &Poly::term(mono.clone(), v);
            }
        }
    }
    AdmissiblePair::new(c, alpha, MultiVec::vector(components))
}

/// Finds `X_ξ` with `dξ = i_{X_ξ} ω` for constant `ω`.
pub fn solve_hamiltonian(c: &PlecticCandidate, xi: &Form) -> Result<HamiltonianPair, PlecticError> {
    let n = c.ctx.n();
    check_form("xi", c.ctx, xi, n - 1)?;
    let xi = xi.clone().with_degree_if_zero(n - 1);
    let pair = solve_admissible(c, &ext_d(&xi).with_degree_if_zero(n)).map_err(|e| match e {
        PlecticError::NotAdmissible { .. } => PlecticError::NotHamiltonian { form: xi.to_string() },
        other => other,
    })?;
    HamiltonianPair::new(c, xi, pair.x_alpha)
}

/// `L_{X_α}β − L_{X_β}α − d i_{X_α} i_{X_β} ω` and `[X_α, X_β]`.
fn raw_bracket(c: &PlecticCandidate, a: &AdmissiblePair, b: &AdmissiblePair) -> (Form, MultiVec) {
    let n = c.ctx.n();
    let (xa, xb) = (&a.x_alpha, &b.x_alpha);
    let inner = interior(xa, &c.flat(xb));
    let form = lie_form(xa, &b.alpha) - lie_form(xb, &a.alpha) - ext_d(&inner);
    (form.with_degree_if_zero(n), vec_bracket(xa, xb))
}

/// Bracket of admissible forms. Requires `dω = 0`; the result is checked to
/// satisfy `[α,β]_ω = i_{[X_α,X_β]} ω`.
pub fn admissible_bracket(
    c: &PlecticCandidate,
    a: &AdmissiblePair,
    b: &AdmissiblePair,
) -> Result<AdmissiblePair, PlecticError> {
    c.require_closed()?;
    let (form, x) = raw_bracket(c, a, b);
    let residual = c.flat(&x) - form.clone();
    if !residual.is_zero() {
        return Err(PlecticError::InconsistentCandidate {
            residual: residual.to_string(),
        });
    }
    Ok(AdmissiblePair { alpha: form, x_alpha: x })
}

fn pair_text(p: &AdmissiblePair) -> String {
    format!("({} ; {})", p.x_alpha, p.alpha)
}

fn admissible_failure(inputs: &[&AdmissiblePair], residual: &Form) -> Option<Failure> {
    (!residual.is_zero()).then(|| Failure::new(inputs.iter().map(|p| pair_text(p)).collect(), residual))
}

fn random_admissible(c: &PlecticCandidate, rng: &mut impl Rng) -> AdmissiblePair {
    AdmissiblePair::from_vector(c, random_vector(rng, c.ctx.m()))
}

/// Lie algebroid identities of `(A, [·,·]_ω, ω♮)` on sampled admissible forms
/// `α = i_X ω`. Refuses a non-closed `ω`.
pub fn check_admissible_lie_algebroid(
    c: &PlecticCandidate,
    seed: u64,
    samples: usize,
) -> Result<Vec<CheckResult>, PlecticError> {
    c.require_closed()?;
    if samples == 0 {
        return Err(PlecticError::NoSamples);
    }
    let br = |a: &AdmissiblePair, b: &AdmissiblePair| {
        let (alpha, x_alpha) = raw_bracket(c, a, b);
        AdmissiblePair { alpha, x_alpha }
    };
    let mut out = Vec::new();
    out.push(CheckResult::sampled(
        "admissible-skew",
        "[a,b]_omega + [b,a]_omega = 0",
        seed,
        71,
        samples,
        |rng| {
            let (a, b) = (random_admissible(c, rng), random_admissible(c, rng));
            admissible_failure(&[&a, &b], &(br(&a, &b).alpha + br(&b, &a).alpha))
        },
    ));
    out.push(CheckResult::sampled(
        "admissible-jacobi",
        "[a,[b,g]]_omega + [b,[g,a]]_omega + [g,[a,b]]_omega = 0",
        seed,
        72,
        samples,
        |rng| {
            let (a, b, g) = (random_admissible(c, rng), random_admissible(c, rng), random_admissible(c, rng));
            let res = br(&a, &br(&b, &g)).alpha + br(&b, &br(&g, &a)).alpha + br(&g, &br(&a, &b)).alpha;
            admissible_failure(&[&a, &b, &g], &res)
        },
    ));
    out.push(CheckResult::sampled(
        "admissible-anchor",
        "[a,b]_omega = i_{[X_a, X_b]} omega",
        seed,
        73,
        samples,
        |rng| {
            let (a, b) = (random_admissible(c, rng), random_admissible(c, rng));
            let p = br(&a, &b);
            admissible_failure(&[&a, &b], &(p.alpha - c.flat(&vec_bracket(&a.x_alpha, &b.x_alpha))))
        },
    ));
    out.push(CheckResult::sampled(
        "admissible-scalar-rule",
        "[a, f b]_omega = f [a,b]_omega + X_a(f) b",
        seed,
        74,
        samples,
        |rng| {
            let (a, b) = (random_admissible(c, rng), random_admissible(c, rng));
            let f = random_poly(rng, c.ctx.m());
            let fb = AdmissiblePair {
                alpha: b.alpha.scale_by(&f),
                x_alpha: b.x_alpha.scale_by(&f),
            };
            let rhs = br(&a, &b).alpha.scale_by(&f) + b.alpha.scale_by(&apply_vector(&a.x_alpha, &f));
            let mut fail = admissible_failure(&[&a, &b], &(br(&a, &fb).alpha - rhs));
            if let Some(w) = fail.as_mut() {
                w.inputs.push(f.to_string());
            }
            fail
        },
    ));
    Ok(out)
}

/// `{ξ,η}_h = L_{X_ξ} η`.
pub fn hemi_bracket(c: &PlecticCandidate, p: &HamiltonianPair, q: &HamiltonianPair) -> Form {
    lie_form(&p.x_xi, &q.xi).with_degree_if_zero(c.ctx.n() - 1)
}

/// `{ξ,η}_s = i_{X_ξ} i_{X_η} ω`.
pub fn semi_bracket(c: &PlecticCandidate, p: &HamiltonianPair, q: &HamiltonianPair) -> Form {
    interior(&p.x_xi, &c.flat(&q.x_xi)).with_degree_if_zero(c.ctx.n() - 1)
}

/// A Hamiltonian pair for constant `ω`, generated backwards. A random
/// `(n−1)`-form is tried first; if it is not Hamiltonian, a constant `X` is
/// drawn and `ξ` is the primitive `Σ_I b_I x_{i₁} dx^{I∖i₁}` of
/// `i_X ω = Σ_I b_I dx^I`, plus an exact term.
pub fn random_hamiltonian(c: &PlecticCandidate, rng: &mut impl Rng) -> Result<HamiltonianPair, PlecticError> {
    let (m, n) = (c.ctx.m(), c.ctx.n());
    if !c.omega.is_constant() {
        return Err(PlecticError::Unsupported(
            "backward Hamiltonian generation needs constant-coefficient omega".into(),
        ));
    }
    let candidate = random_form(rng, m, n - 1);
    match solve_hamiltonian(c, &candidate) {
        Ok(pair) => return Ok(pair),
        Err(PlecticError::NotHamiltonian { .. }) => {}
        Err(e) => return Err(e),
    }
    let x = random_constant_vector(rng, m);
    let beta = c.flat(&x);
    let mut xi = Form::zero(m, n - 1);
    for (idx, b) in beta.terms() {
        let lead = idx.as_slice()[0];
        let rest: Vec<usize> = idx.as_slice()[1..].to_vec();
        xi = xi + Form::monomial(b * &Poly::var(m, lead), &rest);
    }
    let exact = if n >= 2 {
        ext_d(&random_form(rng, m, n - 2))
    } else {
        Form::scalar(Poly::from_int(m, rng.gen_range(-3..=3)))
    };
    HamiltonianPair::new(c, xi + exact, x)
}

fn ham_failure(inputs: &[&HamiltonianPair], residual: &Form) -> Option<Failure> {
    (!residual.is_zero()).then(|| {
        Failure::new(
            inputs.iter().map(|p| format!("({} ; {})", p.x_xi, p.xi)).collect(),
            residual,
        )
    })
}

/// Identities of the hemi- and semi-brackets on backward-generated Hamiltonian
/// pairs; needs constant-coefficient `ω`.
pub fn check_hamiltonian_identities(
    c: &PlecticCandidate,
    seed: u64,
    samples: usize,
) -> Result<Vec<CheckResult>, PlecticError> {
    c.require_closed()?;
    if samples == 0 {
        return Err(PlecticError::NoSamples);
    }
    if !c.omega.is_constant() {
        return Err(PlecticError::Unsupported(
            "Hamiltonian identities are sampled for constant-coefficient omega only".into(),
        ));
    }
    let pairs = |rng: &mut rand_chacha::ChaCha8Rng| {
        let p = random_hamiltonian(c, rng).expect("constant omega");
        let q = random_hamiltonian(c, rng).expect("constant omega");
        (p, q)
    };
    let exact_bracket = |p: &HamiltonianPair, q: &HamiltonianPair| raw_bracket(c, &p.exact(), &q.exact()).0;
    Ok(vec![
        CheckResult::sampled("hemi-exactness", "d{x,y}_h = [dx, dy]_omega", seed, 81, samples, |rng| {
            let (p, q) = pairs(rng);
            ham_failure(&[&p, &q], &(ext_d(&hemi_bracket(c, &p, &q)) - exact_bracket(&p, &q)))
        }),
        CheckResult::sampled(
            "semi-hemi-relation",
            "{x,y}_s = {x,y}_h - d i_{X_x} y",
            seed,
            82,
            samples,
            |rng| {
                let (p, q) = pairs(rng);
                let rhs = hemi_bracket(c, &p, &q) - ext_d(&interior(&p.x_xi, &q.xi));
                ham_failure(&[&p, &q], &(semi_bracket(c, &p, &q) - rhs))
            },
        ),
        CheckResult::sampled(
            "hemi-symmetrization",
            "{x,y}_h + {y,x}_h = d(i_{X_x} y + i_{X_y} x)",
            seed,
            83,
            samples,
            |rng| {
                let (p, q) = pairs(rng);
                let lhs = hemi_bracket(c, &p, &q) + hemi_bracket(c, &q, &p);
                let rhs = ext_d(&(interior(&p.x_xi, &q.xi) + interior(&q.x_xi, &p.xi)));
                ham_failure(&[&p, &q], &(lhs - rhs))
            },
        ),
        CheckResult::sampled(
            "exact-admissible-bracket",
            "[dx, dy]_omega = d L_{X_x} y",
            seed,
            84,
            samples,
            |rng| {
                let (p, q) = pairs(rng);
                let rhs = ext_d(&lie_form(&p.x_xi, &q.xi));
                ham_failure(&[&p, &q], &(exact_bracket(&p, &q) - rhs))
            },
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn ctx(m: usize, n: usize) -> Context {
        Context::new(m, n).unwrap()
    }

    fn x(m: usize, i: usize) -> Poly {
        Poly::var(m, i)
    }

    fn volume3() -> PlecticCandidate {
        PlecticCandidate::new(ctx(3, 2), Form::basis(3, &[0, 1, 2])).unwrap()
    }

    fn symplectic4() -> PlecticCandidate {
        let omega = Form::basis(4, &[0, 1]) + Form::basis(4, &[2, 3]);
        PlecticCandidate::new(ctx(4, 1), omega).unwrap()
    }

    fn d(m: usize, i: usize) -> MultiVec {
        MultiVec::basis(m, &[i])
    }

    #[test]
    fn flat_examples() {
        let c = volume3();
        assert_eq!(omega_flat(&c, &d(3, 0)).unwrap(), Form::basis(3, &[1, 2]));
        assert_eq!(omega_flat(&c, &d(3, 1)).unwrap(), -Form::basis(3, &[0, 2]));
        assert!(omega_flat(&c, &MultiVec::zero(3, 1)).unwrap().is_zero());
        assert!(PlecticCandidate::new(ctx(3, 2), Form::basis(3, &[0, 1])).is_err());
    }

    #[test]
    fn nondegeneracy_examples() {
        let pts = sample_points(3, 0, 3);
        let r = nondegeneracy_check(&volume3(), &pts).unwrap();
        assert!(r.passed && r.name == "nondegenerate-exact");

        let c = PlecticCandidate::new(ctx(3, 1), Form::basis(3, &[0, 1])).unwrap();
        let r = nondegeneracy_check(&c, &pts).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failures[0].residual, "@3");

        let r = nondegeneracy_check(&symplectic4(), &sample_points(4, 0, 2)).unwrap();
        assert!(r.passed);

        assert_eq!(nondegeneracy_check(&c, &[]), Err(PlecticError::NoPoints));
    }

    #[test]
    fn pointwise_nondegeneracy() {
        // x1 dx1^dx2 + dx3^dx4 degenerates exactly on x1 = 0
        let omega = Form::monomial(x(4, 0), &[0, 1]) + Form::basis(4, &[2, 3]);
        let c = PlecticCandidate::new(ctx(4, 1), omega).unwrap();
        let good = vec![vec![int(2), int(0), int(1), int(1)]];
        let r = nondegeneracy_check(&c, &good).unwrap();
        assert!(r.passed && r.name == "nondegenerate-sampled");
        let bad = vec![good[0].clone(), vec![int(0), int(5), int(1), int(1)]];
        let r = nondegeneracy_check(&c, &bad).unwrap();
        assert!(!r.passed && r.cases == 2);
        assert_eq!(r.failures[0].inputs[1], "(0, 5, 1, 1)");
    }

    #[test]
    fn graph_closure_examples() {
        for r in graph_closure_omega(&volume3(), 0, 5).unwrap() {
            assert!(r.passed, "{}", r.name);
        }
        let c = PlecticCandidate::new(ctx(3, 1), Form::monomial(x(3, 0), &[1, 2])).unwrap();
        assert_eq!(ext_d(c.omega()), Form::basis(3, &[0, 1, 2]));
        let r = graph_closure_omega(&c, 0, 5).unwrap();
        assert!(!r[0].passed && !r[1].passed && !r[1].failures.is_empty());
        assert!(r[2].passed, "isotropy holds regardless of closedness");
        let zero = PlecticCandidate::new(ctx(3, 1), Form::zero(3, 2)).unwrap();
        assert!(graph_closure_omega(&zero, 0, 5).unwrap().iter().all(|r| r.passed));
    }

    #[test]
    fn deformed_examples() {
        let c = PlecticCandidate::new(ctx(3, 1), Form::monomial(x(3, 0), &[1, 2])).unwrap();
        let theta = -Form::basis(3, &[0, 1, 2]);
        let r = deformed_graph_check(&c, &theta, 0, 5).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|r| r.passed), "{r:?}");
        let r = deformed_graph_check(&c, &Form::zero(3, 3), 0, 5).unwrap();
        assert!(!r[0].passed && !r[1].passed);
        let r = deformed_graph_check(&volume3(), &Form::zero(3, 4), 0, 5).unwrap();
        assert!(r.iter().all(|r| r.passed));
        assert!(deformed_graph_check(&c, &Form::basis(3, &[0, 1]), 0, 5).is_err());
    }

    #[test]
    fn solve_admissible_examples() {
        let c = volume3();
        let p = solve_admissible(&c, &Form::basis(3, &[1, 2])).unwrap();
        assert_eq!(p.x_alpha(), &d(3, 0));
        let p = solve_admissible(&c, &Form::monomial(x(3, 0), &[1, 2])).unwrap();
        assert_eq!(p.x_alpha(), &MultiVec::monomial(x(3, 0), &[0]));
        let deg = PlecticCandidate::new(ctx(3, 1), Form::basis(3, &[0, 1])).unwrap();
        assert!(matches!(
            solve_admissible(&deg, &Form::basis(3, &[2])),
            Err(PlecticError::NotAdmissible { .. })
        ));
        let curved = PlecticCandidate::new(ctx(3, 1), Form::monomial(x(3, 0), &[1, 2])).unwrap();
        assert!(matches!(
            solve_admissible(&curved, &Form::basis(3, &[1])),
            Err(PlecticError::Unsupported(_))
        ));
        // verification path for non-constant omega
        assert!(AdmissiblePair::new(&curved, Form::monomial(x(3, 0), &[2]), d(3, 1)).is_ok());
        assert!(AdmissiblePair::new(&curved, Form::basis(3, &[2]), d(3, 1)).is_err());
    }

    #[test]
    fn admissible_bracket_examples() {
        let c = volume3();
        let a = AdmissiblePair::new(&c, Form::basis(3, &[1, 2]), d(3, 0)).unwrap();
        let b = AdmissiblePair::new(&c, -Form::basis(3, &[0, 2]), d(3, 1)).unwrap();
        let r = admissible_bracket(&c, &a, &b).unwrap();
        assert!(r.alpha().is_zero() && r.x_alpha().is_zero());
        assert!(admissible_bracket(&c, &a, &a).unwrap().alpha().is_zero());

        let s = symplectic4();
        let a = AdmissiblePair::from_vector(&s, MultiVec::monomial(x(4, 1), &[0]));
        let b = AdmissiblePair::from_vector(&s, d(4, 1));
        let r = admissible_bracket(&s, &a, &b).unwrap();
        assert_eq!(r.x_alpha(), &-d(4, 0));
        assert_eq!(r.alpha(), &omega_flat(&s, &-d(4, 0)).unwrap());

        let open = PlecticCandidate::new(ctx(3, 1), Form::monomial(x(3, 0), &[1, 2])).unwrap();
        let a = AdmissiblePair::from_vector(&open, d(3, 1));
        assert!(matches!(
            admissible_bracket(&open, &a, &a),
            Err(PlecticError::NotClosed { .. })
        ));
    }

    #[test]
    fn admissible_algebroid_checks() {
        for c in [volume3(), symplectic4()] {
            for r in check_admissible_lie_algebroid(&c, 1, 6).unwrap() {
                assert!(r.passed, "{}: {:?}", r.name, r.failures);
            }
        }
        let open = PlecticCandidate::new(ctx(3, 1), Form::monomial(x(3, 0), &[1, 2])).unwrap();
        assert!(check_admissible_lie_algebroid(&open, 0, 3).is_err());
    }

    #[test]
    fn hemi_and_semi_examples() {
        let c = volume3();
        let p = solve_hamiltonian(&c, &Form::monomial(x(3, 2), &[1])).unwrap();
        let q = solve_hamiltonian(&c, &Form::monomial(x(3, 0), &[2])).unwrap();
        assert_eq!(p.x_xi(), &-d(3, 0));
        assert_eq!(q.x_xi(), &-d(3, 1));
        assert_eq!(hemi_bracket(&c, &p, &q), -Form::basis(3, &[2]));
        assert_eq!(semi_bracket(&c, &p, &q), -Form::basis(3, &[2]));
        assert!(semi_bracket(&c, &p, &p).is_zero());
    }

    #[test]
    fn hamiltonian_iff_exact_admissible() {
        let deg = PlecticCandidate::new(ctx(3, 1), Form::basis(3, &[0, 1])).unwrap();
        for (xi, hamiltonian) in [(x(3, 0), true), (x(3, 2), false), (x(3, 0) * x(3, 1), true), (Poly::one(3), true)] {
            let xi = Form::scalar(xi);
            let admissible = solve_admissible(&deg, &ext_d(&xi)).is_ok();
            assert_eq!(admissible, hamiltonian, "{xi}");
            assert_eq!(solve_hamiltonian(&deg, &xi).is_ok(), hamiltonian);
        }
        let p = solve_hamiltonian(&deg, &Form::scalar(x(3, 0))).unwrap();
        assert_eq!(p.x_xi(), &-d(3, 1));
    }

    #[test]
    fn hamiltonian_identities_hold() {
        let degenerate = PlecticCandidate::new(ctx(4, 2), Form::basis(4, &[0, 1, 2])).unwrap();
        for c in [volume3(), symplectic4(), degenerate] {
            for r in check_hamiltonian_identities(&c, 2, 6).unwrap() {
                assert!(r.passed, "{}: {:?}", r.name, r.failures);
            }
        }
    }

    #[test]
    fn backward_generation_falls_back_to_primitives() {
        // on a degenerate omega random 1-forms are rarely Hamiltonian
        let c = PlecticCandidate::new(ctx(4, 2), Form::basis(4, &[0, 1, 2])).unwrap();
        for s in 0..10 {
            let p = random_hamiltonian(&c, &mut rng_for(5, s)).unwrap();
            assert_eq!(c.flat(p.x_xi()), ext_d(p.xi()));
        }
    }
}
