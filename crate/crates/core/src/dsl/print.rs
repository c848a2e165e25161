//! Canonical text form. Terms appear basis element by basis element (indices
//! ascending), monomials in descending graded-lex order, `1*` suppressed.

use std::fmt::{self, Write};

use num_traits::One;

use crate::exterior::{Alternating, MultiIndex, Variance};
use crate::scalar::{Monomial, Poly, Rational};

fn write_rational(out: &mut String, c: &Rational) {
    if c.is_integer() {
        write!(out, "{}", c.numer()).unwrap();
    } else {
        write!(out, "{}/{}", c.numer(), c.denom()).unwrap();
    }
}

/// Body of a term with a nonnegative coefficient, `None` when it is just `1`.
fn scalar_body(abs: &Rational, mono: &Monomial) -> Option<String> {
    let mut out = String::new();
    match (abs.is_one(), mono.is_one()) {
        (true, true) => return None,
        (true, false) => write!(out, "{mono}").unwrap(),
        (false, true) => write_rational(&mut out, abs),
        (false, false) => {
            write_rational(&mut out, abs);
            write!(out, "*{mono}").unwrap();
        }
    }
    Some(out)
}

fn basis_text<V: Variance>(idx: &MultiIndex) -> String {
    idx.as_slice()
        .iter()
        .map(|i| format!("{}{}", V::PREFIX, i + 1))
        .collect::<Vec<_>>()
        .join("^")
}

/// Joins signed terms as `a - b + c`.
fn join_terms(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (bool, String)>) -> fmt::Result {
    let mut first = true;
    for (negative, body) in terms {
        match (first, negative) {
            (true, true) => write!(f, "-{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, " - {body}")?,
            (false, false) => write!(f, " + {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn poly_terms(p: &Poly) -> impl Iterator<Item = (bool, &Monomial, Rational)> + '_ {
    p.terms().rev().map(|(m, c)| (c.is_negative(), m, c.abs()))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join_terms(
            f,
            poly_terms(self).map(|(neg, m, c)| (neg, scalar_body(&c, m).unwrap_or_else(|| "1".into()))),
        )
    }
}

impl<V: Variance> fmt::Display for Alternating<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms().flat_map(|(idx, p)| {
            let basis = basis_text::<V>(idx);
            poly_terms(p)
                .map(move |(neg, m, c)| {
                    let body = match (scalar_body(&c, m), basis.is_empty()) {
                        (None, true) => "1".to_string(),
                        (None, false) => basis.clone(),
                        (Some(s), true) => s,
                        (Some(s), false) => format!("{s}*{basis}"),
                    };
                    (neg, body)
                })
                .collect::<Vec<_>>()
        });
        join_terms(f, terms)
    }
}
