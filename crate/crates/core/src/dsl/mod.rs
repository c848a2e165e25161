//! Text syntax for scalars, forms, multivector fields and sections.
//!
//! `x3` is a coordinate function, `dx3` a basis covector, `@3` the coordinate
//! vector field `∂/∂x3`; `*` multiplies by a scalar, `^` wedges, and
//! `(X ; α)` builds a section. Printing is canonical and re-parses to the
//! same value.

mod lexer;
mod parser;
mod print;

use std::fmt;

use thiserror::Error;

use crate::courant::Section;
use crate::exterior::{Alternating, Context, Form, MultiVec, Variance};
use crate::scalar::Poly;

pub use parser::{parse_expr, Expr, ExprKind};

/// Byte range in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("lex error at {pos}: {message}")]
    Lex { pos: usize, message: String },
    #[error("parse error at {pos}: expected {expected}, found {found}")]
    Parse {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("grading error at {}..{}: {message}", span.start, span.end)]
    Grading { span: Span, message: String },
}

impl DslError {
    /// Byte offset the error points at.
    pub fn position(&self) -> usize {
        match self {
            DslError::Lex { pos, .. } | DslError::Parse { pos, .. } => *pos,
            DslError::Grading { span, .. } => span.start,
        }
    }

    /// Multi-line diagnostic with a caret under the offending position.
    pub fn render(&self, source: &str) -> String {
        let pos = self.position().min(source.len());
        format!("{self}\n  {source}\n  {}^", " ".repeat(source[..pos].chars().count()))
    }
}

/// What a piece of text is expected to denote.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Scalar,
    Form(usize),
    MultiVec(usize),
    Section,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Scalar => write!(f, "scalar"),
            Kind::Form(k) => write!(f, "{k}-form"),
            Kind::MultiVec(k) => write!(f, "{k}-vector field"),
            Kind::Section => write!(f, "section"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(Poly),
    Form(Form),
    MultiVec(MultiVec),
    Section(Section),
}

impl Value {
    pub fn kind(&self) -> Kind {
        match self {
            Value::Scalar(_) => Kind::Scalar,
            Value::Form(a) => Kind::Form(a.degree()),
            Value::MultiVec(p) => Kind::MultiVec(p.degree()),
            Value::Section(_) => Kind::Section,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(p) => p.fmt(f),
            Value::Form(a) => a.fmt(f),
            Value::MultiVec(p) => p.fmt(f),
            Value::Section(s) => s.fmt(f),
        }
    }
}

/// Canonical text of a value.
pub fn print(value: &Value) -> String {
    value.to_string()
}

/// Parses, grades against `expected`, and elaborates `text` on the chart of `ctx`.
pub fn parse(text: &str, ctx: Context, expected: Kind) -> Result<Value, DslError> {
    let expr = parse_expr(text)?;
    let elab = Elaborator { ctx };
    let val = elab.eval(&expr, true)?;
    elab.coerce(val, expected, expr.span)
}

pub fn parse_scalar(text: &str, ctx: Context) -> Result<Poly, DslError> {
    match parse(text, ctx, Kind::Scalar)? {
        Value::Scalar(p) => Ok(p),
        _ => unreachable!("coerce returns the expected kind"),
    }
}

pub fn parse_form(text: &str, ctx: Context, degree: usize) -> Result<Form, DslError> {
    match parse(text, ctx, Kind::Form(degree))? {
        Value::Form(a) => Ok(a),
        _ => unreachable!("coerce returns the expected kind"),
    }
}

pub fn parse_multivec(text: &str, ctx: Context, degree: usize) -> Result<MultiVec, DslError> {
    match parse(text, ctx, Kind::MultiVec(degree))? {
        Value::MultiVec(p) => Ok(p),
        _ => unreachable!("coerce returns the expected kind"),
    }
}

pub fn parse_section(text: &str, ctx: Context) -> Result<Section, DslError> {
    match parse(text, ctx, Kind::Section)? {
        Value::Section(s) => Ok(s),
        _ => unreachable!("coerce returns the expected kind"),
    }
}

/// Parses a differential form whose degree is read off the text; a scalar is
/// a 0-form and a literal `0` is the zero function.
pub fn parse_form_any(text: &str, ctx: Context) -> Result<Form, DslError> {
    let expr = parse_expr(text)?;
    let elab = Elaborator { ctx };
    match elab.eval(&expr, true)? {
        Val::Zero => Ok(Form::zero(ctx.m(), 0)),
        Val::Scalar(p) => Ok(Form::scalar(p)),
        Val::Form(a) => Ok(a),
        other => Err(grading(expr.span, format!("expected a form, got {}", other.describe()))),
    }
}

/// Parses a multivector field whose degree is read off the text.
pub fn parse_multivec_any(text: &str, ctx: Context) -> Result<MultiVec, DslError> {
    let expr = parse_expr(text)?;
    let elab = Elaborator { ctx };
    match elab.eval(&expr, true)? {
        Val::Zero => Ok(MultiVec::zero(ctx.m(), 0)),
        Val::Scalar(p) => Ok(MultiVec::scalar(p)),
        Val::Vec(p) => Ok(p),
        other => Err(grading(
            expr.span,
            format!("expected a multivector field, got {}", other.describe()),
        )),
    }
}

/// Intermediate values; `Zero` is a literal zero, which fits any kind.
#[derive(Debug, Clone)]
enum Val {
    Zero,
    Scalar(Poly),
    Form(Form),
    Vec(MultiVec),
    Section(Section),
}

impl Val {
    fn describe(&self) -> String {
        match self {
            Val::Zero => "zero".into(),
            Val::Scalar(_) => "scalar".into(),
            Val::Form(a) => format!("{}-form", a.degree()),
            Val::Vec(p) => format!("{}-vector field", p.degree()),
            Val::Section(_) => "section".into(),
        }
    }
}

struct Elaborator {
    ctx: Context,
}

fn grading(span: Span, message: impl Into<String>) -> DslError {
    DslError::Grading {
        span,
        message: message.into(),
    }
}

impl Elaborator {
    fn m(&self) -> usize {
        self.ctx.m()
    }

    fn coord(&self, i: usize, span: Span) -> Result<usize, DslError> {
        if i == 0 || i > self.m() {
            return Err(grading(
                span,
                format!("coordinate index {i} outside 1..={}", self.m()),
            ));
        }
        Ok(i - 1)
    }

    fn eval(&self, e: &Expr, top: bool) -> Result<Val, DslError> {
        let m = self.m();
        Ok(match &e.kind {
            ExprKind::Number(r) if num_traits::Zero::is_zero(r) => Val::Zero,
            ExprKind::Number(r) => Val::Scalar(Poly::constant(m, r.clone())),
            ExprKind::Var(i) => Val::Scalar(Poly::var(m, self.coord(*i, e.span)?)),
            ExprKind::Covec(i) => Val::Form(Form::basis(m, &[self.coord(*i, e.span)?])),
            ExprKind::Vec(i) => Val::Vec(MultiVec::basis(m, &[self.coord(*i, e.span)?])),
            ExprKind::Neg(a) => match self.eval(a, false)? {
                Val::Zero => Val::Zero,
                Val::Scalar(p) => Val::Scalar(-p),
                Val::Form(a) => Val::Form(-a),
                Val::Vec(p) => Val::Vec(-p),
                Val::Section(_) => unreachable!("sections only at top level"),
            },
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                let negate = matches!(e.kind, ExprKind::Sub(..));
                let (x, y) = (self.eval(a, false)?, self.eval(b, false)?);
                self.sum(x, y, negate, e.span)?
            }
            ExprKind::Mul(a, b) => {
                let (x, y) = (self.eval(a, false)?, self.eval(b, false)?);
                match (x, y) {
                    (Val::Zero, _) | (_, Val::Zero) => Val::Zero,
                    (Val::Scalar(f), Val::Scalar(g)) => Val::Scalar(f * g),
                    (Val::Scalar(f), Val::Form(a)) | (Val::Form(a), Val::Scalar(f)) => Val::Form(a.scale_by(&f)),
                    (Val::Scalar(f), Val::Vec(p)) | (Val::Vec(p), Val::Scalar(f)) => Val::Vec(p.scale_by(&f)),
                    (x, y) => {
                        return Err(grading(
                            e.span,
                            format!(
                                "'*' needs a scalar operand, got {} and {}; use '^' for tensors",
                                x.describe(),
                                y.describe()
                            ),
                        ))
                    }
                }
            }
            ExprKind::Wedge(a, b) => {
                let (x, y) = (self.eval(a, false)?, self.eval(b, false)?);
                match (x, y) {
                    (Val::Zero, _) | (_, Val::Zero) => Val::Zero,
                    (Val::Scalar(f), Val::Scalar(g)) => Val::Scalar(f * g),
                    (Val::Scalar(f), Val::Form(a)) | (Val::Form(a), Val::Scalar(f)) => Val::Form(a.scale_by(&f)),
                    (Val::Scalar(f), Val::Vec(p)) | (Val::Vec(p), Val::Scalar(f)) => Val::Vec(p.scale_by(&f)),
                    (Val::Form(a), Val::Form(b)) => Val::Form(a.wedge(&b)),
                    (Val::Vec(p), Val::Vec(q)) => Val::Vec(p.wedge(&q)),
                    (x, y) => {
                        return Err(grading(
                            e.span,
                            format!("'^' mixes variance: {} and {}", x.describe(), y.describe()),
                        ))
                    }
                }
            }
            ExprKind::Pair(a, b) => {
                if !top {
                    return Err(grading(e.span, "a section may only appear as the whole expression"));
                }
                let vec = match self.eval(a, false)? {
                    Val::Zero => MultiVec::zero(m, 1),
                    Val::Vec(p) if p.degree() == 1 => p,
                    other => {
                        return Err(grading(
                            a.span,
                            format!("section vector part must be a vector field, got {}", other.describe()),
                        ))
                    }
                };
                let n = self.ctx.n();
                let form = match self.eval(b, false)? {
                    Val::Zero => Form::zero(m, n),
                    Val::Form(f) if f.degree() == n => f,
                    other => {
                        return Err(grading(
                            b.span,
                            format!("section form part must be a {n}-form, got {}", other.describe()),
                        ))
                    }
                };
                Val::Section(Section::new(self.ctx, vec, form).expect("graded above"))
            }
        })
    }

    fn sum(&self, x: Val, y: Val, negate: bool, span: Span) -> Result<Val, DslError> {
        fn add<V: Variance>(a: Alternating<V>, b: Alternating<V>, negate: bool) -> Alternating<V> {
            if negate {
                a - b
            } else {
                a + b
            }
        }
        Ok(match (x, y) {
            (x, Val::Zero) => x,
            (Val::Zero, y) if negate => negated(y),
            (Val::Zero, y) => y,
            (Val::Scalar(f), Val::Scalar(g)) => Val::Scalar(if negate { f - g } else { f + g }),
            (Val::Form(a), Val::Form(b)) if a.degree() == b.degree() => Val::Form(add(a, b, negate)),
            (Val::Vec(a), Val::Vec(b)) if a.degree() == b.degree() => Val::Vec(add(a, b, negate)),
            (x, y) => {
                return Err(grading(
                    span,
                    format!("cannot add {} and {}", x.describe(), y.describe()),
                ))
            }
        })
    }

    fn coerce(&self, val: Val, expected: Kind, span: Span) -> Result<Value, DslError> {
        let m = self.m();
        let mismatch = |got: String| grading(span, format!("expected {expected}, got {got}"));
        Ok(match (val, expected) {
            (Val::Zero, Kind::Scalar) => Value::Scalar(Poly::zero(m)),
            (Val::Zero, Kind::Form(k)) => Value::Form(Form::zero(m, k)),
            (Val::Zero, Kind::MultiVec(k)) => Value::MultiVec(MultiVec::zero(m, k)),
            (Val::Zero, Kind::Section) => Value::Section(Section::zero(self.ctx)),
            (Val::Scalar(p), Kind::Scalar) => Value::Scalar(p),
            (Val::Scalar(p), Kind::Form(0)) => Value::Form(Form::scalar(p)),
            (Val::Scalar(p), Kind::MultiVec(0)) => Value::MultiVec(MultiVec::scalar(p)),
            (Val::Form(a), Kind::Form(k)) if a.degree() == k => Value::Form(a),
            (Val::Vec(p), Kind::MultiVec(k)) if p.degree() == k => Value::MultiVec(p),
            (Val::Section(s), Kind::Section) => Value::Section(s),
            (other, _) => return Err(mismatch(other.describe())),
        })
    }
}

fn negated(v: Val) -> Val {
    match v {
        Val::Zero => Val::Zero,
        Val::Scalar(p) => Val::Scalar(-p),
        Val::Form(a) => Val::Form(-a),
        Val::Vec(p) => Val::Vec(-p),
        Val::Section(s) => Val::Section(s),
    }
}
