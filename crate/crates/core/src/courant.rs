//! Sections of `TM ⊕ ∧ⁿT*M`, the higher-order Courant and Dorfman brackets,
//! their deformations by `(n+2)`-forms, and gauge shears `e^Φ`.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::check::{CheckResult, Failure};
use crate::exterior::{
    apply_vector, contract_vec_into_form, ext_d, interior, lie_form, vec_bracket, Context, Form,
    MultiVec,
};
use crate::random::{random_form, random_poly, random_vector};
use crate::scalar::{rational, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CourantError {
    #[error("context mismatch between operands")]
    ContextMismatch,
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
    #[error("sample count must be at least 1")]
    NoSamples,
}

/// A section `X + α` with `X` a vector field and `α` an `n`-form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Section {
    ctx: Context,
    vec: MultiVec,
    form: Form,
}

impl Section {
    pub fn new(ctx: Context, vec: MultiVec, form: Form) -> Result<Self, CourantError> {
        check_tensor("vector part", ctx, vec.dim(), vec.degree(), 1, vec.is_zero())?;
        check_tensor("form part", ctx, form.dim(), form.degree(), ctx.n(), form.is_zero())?;
        Ok(Self::raw(ctx, vec, form))
    }

    fn raw(ctx: Context, vec: MultiVec, form: Form) -> Self {
        Section {
            ctx,
            vec: vec.with_degree_if_zero(1),
            form: form.with_degree_if_zero(ctx.n()),
        }
    }

    pub fn zero(ctx: Context) -> Self {
        Self::raw(ctx, MultiVec::zero(ctx.m(), 1), Form::zero(ctx.m(), ctx.n()))
    }

    pub fn from_vector(ctx: Context, vec: MultiVec) -> Result<Self, CourantError> {
        Self::new(ctx, vec, Form::zero(ctx.m(), ctx.n()))
    }

    pub fn from_form(ctx: Context, form: Form) -> Result<Self, CourantError> {
        Self::new(ctx, MultiVec::zero(ctx.m(), 1), form)
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn vec(&self) -> &MultiVec {
        &self.vec
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero() && self.form.is_zero()
    }

    /// `f · (X + α) = fX + fα`.
    pub fn scale_by(&self, f: &Poly) -> Section {
        Self::raw(self.ctx, self.vec.scale_by(f), self.form.scale_by(f))
    }

    /// Adds an `n`-form to the form part.
    pub fn plus_form(&self, a: &Form) -> Section {
        Self::raw(self.ctx, self.vec.clone(), &self.form + a)
    }

    pub fn add(&self, other: &Section) -> Section {
        debug_assert_eq!(self.ctx, other.ctx);
        Self::raw(self.ctx, &self.vec + &other.vec, &self.form + &other.form)
    }

    pub fn sub(&self, other: &Section) -> Section {
        debug_assert_eq!(self.ctx, other.ctx);
        Self::raw(self.ctx, &self.vec - &other.vec, &self.form - &other.form)
    }

    /// Random section drawn with the crate-wide coefficient generator.
    pub fn random(ctx: Context, rng: &mut impl Rng) -> Section {
        let vec = random_vector(rng, ctx.m());
        let form = random_form(rng, ctx.m(), ctx.n());
        Self::raw(ctx, vec, form)
    }

    /// Constant basis sections: every `∂_i` and every `dx^I` of degree `n`.
    pub fn basis(ctx: Context) -> Vec<Section> {
        let m = ctx.m();
        let mut out: Vec<Section> = (0..m)
            .map(|i| Self::raw(ctx, MultiVec::basis(m, &[i]), Form::zero(m, ctx.n())))
            .collect();
        out.extend(
            crate::exterior::MultiIndex::all(m, ctx.n())
                .into_iter()
                .map(|idx| Self::raw(ctx, MultiVec::zero(m, 1), Form::basis(m, idx.as_slice()))),
        );
        out
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ; {})", self.vec, self.form)
    }
}

fn check_tensor(
    what: &'static str,
    ctx: Context,
    dim: usize,
    degree: usize,
    expected: usize,
    is_zero: bool,
) -> Result<(), CourantError> {
    if dim != ctx.m() {
        return Err(CourantError::Dimension {
            what,
            expected: ctx.m(),
            got: dim,
        });
    }
    if degree != expected && !is_zero {
        return Err(CourantError::Degree {
            what,
            expected,
            got: degree,
        });
    }
    Ok(())
}

fn same_ctx(a: &Section, b: &Section) -> Result<Context, CourantError> {
    if a.ctx == b.ctx {
        Ok(a.ctx)
    } else {
        Err(CourantError::ContextMismatch)
    }
}

/// `⟨X+α, Y+β⟩ = ½(i_X β + i_Y α)`, an `(n−1)`-form.
pub fn pairing(e1: &Section, e2: &Section) -> Result<Form, CourantError> {
    let ctx = same_ctx(e1, e2)?;
    let sum = interior(&e1.vec, &e2.form) + interior(&e2.vec, &e1.form);
    Ok(sum.scale(&rational(1, 2)).with_degree_if_zero(ctx.n() - 1))
}

/// Skew bracket `[X,Y] + L_X β − L_Y α + ½(d i_Y α − d i_X β)`.
pub fn courant_bracket(e1: &Section, e2: &Section) -> Result<Section, CourantError> {
    let ctx = same_ctx(e1, e2)?;
    let (x, a) = (&e1.vec, &e1.form);
    let (y, b) = (&e2.vec, &e2.form);
    let exact = ext_d(&interior(y, a)) - ext_d(&interior(x, b));
    let form = lie_form(x, b) - lie_form(y, a) + exact.scale(&rational(1, 2));
    Ok(Section::raw(ctx, vec_bracket(x, y), form))
}

/// Leibniz bracket `[X,Y] + L_X β − L_Y α + d i_Y α`.
pub fn dorfman_bracket(e1: &Section, e2: &Section) -> Result<Section, CourantError> {
    let ctx = same_ctx(e1, e2)?;
    let (x, a) = (&e1.vec, &e1.form);
    let (y, b) = (&e2.vec, &e2.form);
    let form = lie_form(x, b) - lie_form(y, a) + ext_d(&interior(y, a));
    Ok(Section::raw(ctx, vec_bracket(x, y), form))
}

/// The Leibniz bracket built as the skew bracket plus `d⟨e1, e2⟩`.
pub fn dorfman_from_courant(e1: &Section, e2: &Section) -> Result<Section, CourantError> {
    Ok(courant_bracket(e1, e2)?.plus_form(&ext_d(&pairing(e1, e2)?)))
}

/// `T(e1,e2,e3) = −⅓(⟨⟦e1,e2⟧, e3⟩ + c.p.)` for the skew bracket.
pub fn t_map(e1: &Section, e2: &Section, e3: &Section) -> Result<Form, CourantError> {
    let ctx = same_ctx(e1, e2)?;
    same_ctx(e2, e3)?;
    let sum = pairing(&courant_bracket(e1, e2)?, e3)?
        + pairing(&courant_bracket(e2, e3)?, e1)?
        + pairing(&courant_bracket(e3, e1)?, e2)?;
    Ok(sum.scale(&rational(-1, 3)).with_degree_if_zero(ctx.n() - 1))
}

/// Projection `X + α ↦ X`.
pub fn anchor(e: &Section) -> MultiVec {
    e.vec.clone()
}

/// Leibniz bracket twisted by an `(n+2)`-form: adds `i_{X∧Y} Θ`.
pub fn deformed_dorfman(e1: &Section, e2: &Section, theta: &Form) -> Result<Section, CourantError> {
    let ctx = same_ctx(e1, e2)?;
    check_tensor("deformation form", ctx, theta.dim(), theta.degree(), ctx.n() + 2, false)?;
    let base = dorfman_bracket(e1, e2)?;
    let xy = e1.vec.wedge(&e2.vec);
    let twist = if ctx.n() + 2 > ctx.m() {
        Form::zero(ctx.m(), ctx.n())
    } else {
        contract_vec_into_form(&xy, theta).expect("2 <= n + 2")
    };
    Ok(base.plus_form(&twist))
}

/// Gauge shear `e^Φ(X + α) = X + α + i_X Φ` by an `(n+1)`-form.
pub fn gauge(phi: &Form, e: &Section) -> Result<Section, CourantError> {
    let ctx = e.ctx;
    check_tensor("gauge form", ctx, phi.dim(), phi.degree(), ctx.n() + 1, false)?;
    Ok(e.plus_form(&interior(&e.vec, phi)))
}

fn section_failure(inputs: &[&Section], extra: &[String], residual: &Section) -> Option<Failure> {
    if residual.is_zero() {
        return None;
    }
    let mut text: Vec<String> = inputs.iter().map(|s| s.to_string()).collect();
    text.extend_from_slice(extra);
    Some(Failure::new(text, residual))
}

fn form_failure(inputs: &[&Section], residual: &Form) -> Option<Failure> {
    if residual.is_zero() {
        return None;
    }
    Some(Failure::new(
        inputs.iter().map(|s| s.to_string()).collect(),
        residual,
    ))
}

fn vec_failure(inputs: &[&Section], residual: &MultiVec) -> Option<Failure> {
    if residual.is_zero() {
        return None;
    }
    Some(Failure::new(
        inputs.iter().map(|s| s.to_string()).collect(),
        residual,
    ))
}

fn sections3(ctx: Context, rng: &mut impl Rng) -> (Section, Section, Section) {
    (
        Section::random(ctx, rng),
        Section::random(ctx, rng),
        Section::random(ctx, rng),
    )
}

/// Residual of the Leibniz identity for an arbitrary bracket.
pub fn leibniz_residual<B>(bracket: B, e1: &Section, e2: &Section, e3: &Section) -> Section
where
    B: Fn(&Section, &Section) -> Section,
{
    let lhs = bracket(e1, &bracket(e2, e3));
    let rhs = bracket(&bracket(e1, e2), e3).add(&bracket(e2, &bracket(e1, e3)));
    lhs.sub(&rhs)
}

fn dorf(a: &Section, b: &Section) -> Section {
    dorfman_bracket(a, b).expect("shared context")
}

fn cour(a: &Section, b: &Section) -> Section {
    courant_bracket(a, b).expect("shared context")
}

fn pair(a: &Section, b: &Section) -> Form {
    pairing(a, b).expect("shared context")
}

/// Seeded verification of the skew-bracket identities: Jacobiator equals
/// `dT`, the scalar rule, the anchor morphism, and pairing compatibility.
pub fn check_courant_axioms(ctx: Context, seed: u64, samples: usize) -> Result<Vec<CheckResult>, CourantError> {
    if samples == 0 {
        return Err(CourantError::NoSamples);
    }
    let jacobiator = CheckResult::sampled(
        "courant-jacobiator",
        "[[e1,[[e2,e3]]]] + c.p. = d T(e1,e2,e3), T = -1/3 (<[[e1,e2]],e3> + c.p.)",
        seed,
        1,
        samples,
        |rng| {
            let (e1, e2, e3) = sections3(ctx, rng);
            let jac = cour(&e1, &cour(&e2, &e3))
                .add(&cour(&e2, &cour(&e3, &e1)))
                .add(&cour(&e3, &cour(&e1, &e2)));
            let dt = ext_d(&t_map(&e1, &e2, &e3).expect("shared context"));
            section_failure(&[&e1, &e2, &e3], &[], &jac.plus_form(&-dt))
        },
    );
    let scalar = CheckResult::sampled(
        "courant-scalar-rule",
        "[[e1, f e2]] = f [[e1,e2]] + rho(e1)(f) e2 - df ^ <e1,e2>",
        seed,
        2,
        samples,
        |rng| {
            let (e1, e2) = (Section::random(ctx, rng), Section::random(ctx, rng));
            let f = random_poly(rng, ctx.m());
            let lhs = cour(&e1, &e2.scale_by(&f));
            let rhs = cour(&e1, &e2)
                .scale_by(&f)
                .add(&e2.scale_by(&apply_vector(&e1.vec, &f)))
                .plus_form(&-ext_d(&Form::scalar(f.clone())).wedge(&pair(&e1, &e2)));
            section_failure(&[&e1, &e2], &[f.to_string()], &lhs.sub(&rhs))
        },
    );
    let anchor_check = CheckResult::sampled(
        "courant-anchor",
        "rho[[e1,e2]] = [rho(e1), rho(e2)]",
        seed,
        3,
        samples,
        |rng| {
            let (e1, e2) = (Section::random(ctx, rng), Section::random(ctx, rng));
            let res = anchor(&cour(&e1, &e2)) - vec_bracket(&anchor(&e1), &anchor(&e2));
            vec_failure(&[&e1, &e2], &res)
        },
    );
    let compat = CheckResult::sampled(
        "courant-pairing-compat",
        "L_rho(e1) <e2,e3> = <[[e1,e2]] + d<e1,e2>, e3> + <e2, [[e1,e3]] + d<e1,e3>>",
        seed,
        4,
        samples,
        |rng| {
            let (e1, e2, e3) = sections3(ctx, rng);
            let lhs = lie_form(&e1.vec, &pair(&e2, &e3));
            let b12 = cour(&e1, &e2).plus_form(&ext_d(&pair(&e1, &e2)));
            let b13 = cour(&e1, &e3).plus_form(&ext_d(&pair(&e1, &e3)));
            let rhs = pair(&b12, &e3) + pair(&e2, &b13);
            form_failure(&[&e1, &e2, &e3], &(lhs - rhs))
        },
    );
    Ok(vec![jacobiator, scalar, anchor_check, compat])
}

/// Seeded verification of the Leibniz algebroid axioms of the Dorfman
/// bracket together with its pairing compatibility.
pub fn check_dorfman_axioms(ctx: Context, seed: u64, samples: usize) -> Result<Vec<CheckResult>, CourantError> {
    if samples == 0 {
        return Err(CourantError::NoSamples);
    }
    let leibniz = CheckResult::sampled(
        "dorfman-leibniz",
        "[[e1,[[e2,e3]]]] = [[[[e1,e2]],e3]] + [[e2,[[e1,e3]]]]",
        seed,
        11,
        samples,
        |rng| {
            let (e1, e2, e3) = sections3(ctx, rng);
            section_failure(&[&e1, &e2, &e3], &[], &leibniz_residual(dorf, &e1, &e2, &e3))
        },
    );
    let right = CheckResult::sampled(
        "dorfman-scalar-right",
        "[[e1, f e2]] = f [[e1,e2]] + rho(e1)(f) e2",
        seed,
        12,
        samples,
        |rng| {
            let (e1, e2) = (Section::random(ctx, rng), Section::random(ctx, rng));
            let f = random_poly(rng, ctx.m());
            let lhs = dorf(&e1, &e2.scale_by(&f));
            let rhs = dorf(&e1, &e2)
                .scale_by(&f)
                .add(&e2.scale_by(&apply_vector(&e1.vec, &f)));
            section_failure(&[&e1, &e2], &[f.to_string()], &lhs.sub(&rhs))
        },
    );
    let left = CheckResult::sampled(
        "dorfman-scalar-left",
        "[[f e1, e2]] = f [[e1,e2]] - rho(e2)(f) e1 + df ^ 2<e1,e2>",
        seed,
        13,
        samples,
        |rng| {
            let (e1, e2) = (Section::random(ctx, rng), Section::random(ctx, rng));
            let f = random_poly(rng, ctx.m());
            let lhs = dorf(&e1.scale_by(&f), &e2);
            let df = ext_d(&Form::scalar(f.clone()));
            let rhs = dorf(&e1, &e2)
                .scale_by(&f)
                .sub(&e1.scale_by(&apply_vector(&e2.vec, &f)))
                .plus_form(&df.wedge(&pair(&e1, &e2)).scale(&rational(2, 1)));
            section_failure(&[&e1, &e2], &[f.to_string()], &lhs.sub(&rhs))
        },
    );
    let compat = CheckResult::sampled(
        "dorfman-pairing-compat",
        "L_rho(e1) <e2,e3> = <[[e1,e2]], e3> + <e2, [[e1,e3]]>",
        seed,
        14,
        samples,
        |rng| {
            let (e1, e2, e3) = sections3(ctx, rng);
            let lhs = lie_form(&e1.vec, &pair(&e2, &e3));
            let rhs = pair(&dorf(&e1, &e2), &e3) + pair(&e2, &dorf(&e1, &e3));
            form_failure(&[&e1, &e2, &e3], &(lhs - rhs))
        },
    );
    let anchor_check = CheckResult::sampled(
        "dorfman-anchor",
        "rho[[e1,e2]] = [rho(e1), rho(e2)]",
        seed,
        15,
        samples,
        |rng| {
            let (e1, e2) = (Section::random(ctx, rng), Section::random(ctx, rng));
            let res = anchor(&dorf(&e1, &e2)) - vec_bracket(&anchor(&e1), &anchor(&e2));
            vec_failure(&[&e1, &e2], &res)
        },
    );
    Ok(vec![leibniz, right, left, compat, anchor_check])
}

/// Closedness of `Θ` and the Leibniz identity of the `Θ`-twisted bracket,
/// sampled and over every ordered triple of coordinate vector fields.
pub fn check_deformation(ctx: Context, theta: &Form, seed: u64, samples: usize) -> Result<Vec<CheckResult>, CourantError> {
    check_tensor("deformation form", ctx, theta.dim(), theta.degree(), ctx.n() + 2, false)?;
    let d_theta = ext_d(theta);
    let closed = CheckResult::verdict(
        "theta-closed",
        "d Theta = 0",
        (!d_theta.is_zero()).then(|| Failure::new(vec![theta.to_string()], &d_theta)),
    );
    let twisted = |a: &Section, b: &Section| deformed_dorfman(a, b, theta).expect("checked degree");
    let statement = "[[e1,[[e2,e3]]_T]]_T = [[[[e1,e2]]_T,e3]]_T + [[e2,[[e1,e3]]_T]]_T";
    let sampled = CheckResult::sampled("deformed-leibniz", statement, seed, 21, samples, |rng| {
        let (e1, e2, e3) = sections3(ctx, rng);
        section_failure(&[&e1, &e2, &e3], &[], &leibniz_residual(twisted, &e1, &e2, &e3))
    });
    let m = ctx.m();
    let triples: Vec<[usize; 3]> = (0..m)
        .flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| [i, j, k])))
        .collect();
    let coord = |i: usize| Section::raw(ctx, MultiVec::basis(m, &[i]), Form::zero(m, ctx.n()));
    let exhaustive = CheckResult::over("deformed-leibniz", statement, &triples, |&[i, j, k]| {
        let (e1, e2, e3) = (coord(i), coord(j), coord(k));
        section_failure(&[&e1, &e2, &e3], &[], &leibniz_residual(twisted, &e1, &e2, &e3))
    });
    Ok(vec![closed, sampled.merged(exhaustive)])
}

/// `e^Φ ⟦e1,e2⟧_{dΦ} = ⟦e^Φ e1, e^Φ e2⟧` on sampled pairs, and when `Φ` is
/// closed, that `e^Φ` preserves the untwisted bracket.
pub fn check_gauge_isomorphism(ctx: Context, phi: &Form, seed: u64, samples: usize) -> Result<Vec<CheckResult>, CourantError> {
    check_tensor("gauge form", ctx, phi.dim(), phi.degree(), ctx.n() + 1, false)?;
    let phi = phi.clone().with_degree_if_zero(ctx.n() + 1);
    let d_phi = ext_d(&phi);
    let shear = |e: &Section| gauge(&phi, e).expect("checked degree");
    let extra = [phi.to_string()];
    let mut out = vec![CheckResult::sampled(
        "gauge-intertwines-twist",
        "e^Phi [[e1,e2]]_{dPhi} = [[e^Phi e1, e^Phi e2]]",
        seed,
        31,
        samples,
        |rng| {
            let (e1, e2) = (Section::random(ctx, rng), Section::random(ctx, rng));
            let lhs = shear(&twisted_or_plain(&e1, &e2, &d_phi));
            let rhs = dorf(&shear(&e1), &shear(&e2));
            section_failure(&[&e1, &e2], &extra, &lhs.sub(&rhs))
        },
    )];
    if d_phi.is_zero() {
        out.push(CheckResult::sampled(
            "gauge-automorphism",
            "d Phi = 0 => e^Phi [[e1,e2]] = [[e^Phi e1, e^Phi e2]]",
            seed,
            32,
            samples,
            |rng| {
                let (e1, e2) = (Section::random(ctx, rng), Section::random(ctx, rng));
                let lhs = shear(&dorf(&e1, &e2));
                let rhs = dorf(&shear(&e1), &shear(&e2));
                section_failure(&[&e1, &e2], &extra, &lhs.sub(&rhs))
            },
        ));
    }
    Ok(out)
}

/// `⟦e1,e2⟧_Θ`, treating a form of degree above the chart as zero.
fn twisted_or_plain(e1: &Section, e2: &Section, theta: &Form) -> Section {
    let theta = theta.clone().with_degree_if_zero(e1.ctx.n() + 2);
    deformed_dorfman(e1, e2, &theta).expect("degree n + 2")
}
