//! Exact multivariate polynomials over the rationals.
//!
//! A [`Poly`] stands in for a smooth function on a coordinate chart. All
//! arithmetic is exact so that every identity check downstream can demand a
//! residual of literally zero.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use smallvec::{smallvec, SmallVec};
use num_traits::{One, Zero};
use thiserror::Error;

pub use crate::rational::Rational;

/// Builds the rational `num/den`.
///
/// # Panics
/// Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_i64(value)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("chart dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("coordinate index {index} out of range for chart dimension {nvars}")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
}

/// Exponent vector of a monomial, ordered graded-lexicographically.
///
/// The total degree is cached and the exponents live inline for charts of
/// up to eight coordinates: monomials are the keys of every polynomial map,
/// so comparisons and copies are the inner loop of all arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: smallvec![0; nvars],
        }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps: SmallVec::from_vec(exps),
        }
    }

    /// The monomial `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Divides by `x_i`; the caller guarantees the exponent is positive.
    fn lowered(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.degree -= 1;
        m
    }

    /// All monomials in `nvars` variables of total degree at most `max_degree`,
    /// in ascending graded-lex order.
    pub fn all_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        fn fill(acc: &mut Vec<Monomial>, cur: &mut Vec<u32>, pos: usize, left: u32) {
            if pos == cur.len() {
                acc.push(Monomial::from_exponents(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[pos] = e;
                fill(acc, cur, pos + 1, left - e);
            }
            cur[pos] = 0;
        }
        let mut acc = Vec::new();
        fill(&mut acc, &mut vec![0; nvars], 0, max_degree);
        acc.sort();
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Unreduced sum of polynomial terms: pushes are appends, and like terms
/// are combined once in [`PolySum::finish`]. Sums of many products are the
/// shape of every contraction.
#[derive(Debug, Clone)]
pub(crate) struct PolySum {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl PolySum {
    pub(crate) fn new(nvars: usize) -> Self {
        PolySum {
            nvars,
            terms: Vec::new(),
        }
    }

    /// Adds `± f·g`.
    pub(crate) fn push_product(&mut self, f: &Poly, g: &Poly, negate: bool) {
        assert_eq!(f.nvars, g.nvars, "chart dimension mismatch");
        self.terms.reserve(f.terms.len() * g.terms.len());
        for (ma, ca) in &f.terms {
            for (mb, cb) in &g.terms {
                let c = ca * cb;
                self.terms.push((ma.mul(mb), if negate { -c } else { c }));
            }
        }
    }

    /// Adds `± f`.
    pub(crate) fn push(&mut self, f: &Poly, negate: bool) {
        self.terms
            .extend(f.terms.iter().map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })));
    }

    pub(crate) fn finish(mut self) -> Poly {
        self.terms.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms {
            match out.last_mut() {
                Some((last, acc)) if *last == m => *acc += c,
                _ => {
                    if out.last().is_some_and(|(_, acc)| acc.is_zero()) {
                        out.pop();
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|(_, acc)| acc.is_zero()) {
            out.pop();
        }
        Poly {
            nvars: self.nvars,
            terms: out.into_iter().collect(),
        }
    }
}

/// Sparse polynomial in `nvars` variables with rational coefficients.
///
/// Canonical: no zero coefficient is ever stored, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, int(c))
    }

    /// The coordinate function `x_i` (0-based).
    ///
    /// # Panics
    /// Panics if `i >= nvars`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars}");
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(mono: Monomial, c: Rational) -> Self {
        let nvars = mono.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<(), ScalarError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(ScalarError::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    /// Merge-joins the two sorted term lists; `negate` subtracts `other`.
    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let rhs = |c: &Rational| if negate { -c } else { c.clone() };
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some((ma, _)), Some((mb, _))) => ma.cmp(mb),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match next {
                Ordering::Less => {
                    let (m, c) = a.next().unwrap();
                    out.push((m.clone(), c.clone()));
                }
                Ordering::Greater => {
                    let (m, c) = b.next().unwrap();
                    out.push((m.clone(), rhs(c)));
                }
                Ordering::Equal => {
                    let (m, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((m.clone(), c));
                    }
                }
            }
        }
        // sorted input: the map is bulk-built in linear time
        Poly {
            nvars: self.nvars,
            terms: out.into_iter().collect(),
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, ScalarError> {
        self.check_dim(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, ScalarError> {
        self.check_dim(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, ScalarError> {
        self.check_dim(other)?;
        let mut sum = PolySum::new(self.nvars);
        sum.push_product(self, other, false);
        Ok(sum.finish())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to `x_i` (0-based).
    pub fn partial(&self, i: usize) -> Result<Poly, ScalarError> {
        if i >= self.nvars {
            return Err(ScalarError::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        Ok(self.deriv(i))
    }

    pub(crate) fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            out.add_term(m.lowered(i), c * int(i64::from(e)));
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, ScalarError> {
        if point.len() != self.nvars {
            return Err(ScalarError::PointLength {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `true` iff every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Largest absolute coefficient; zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(Rational::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Monomial {
    /// `x1*x1*x2` style; the unit monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                if !first {
                    write!(f, "*")?;
                }
                write!(f, "x{}", i + 1)?;
                first = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    fn c(v: i64) -> Poly {
        Poly::from_int(3, v)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&(x(0) + c(1)) + &c(-1), x(0));
        assert_eq!(Poly::zero(3) + &x(1) * &x(1), &x(1) * &x(1));
        let x1x2 = &x(0) * &x(1);
        let doubled = &x1x2 + &x1x2;
        // coefficient-addition oracle on the raw term map
        let mono = Monomial::from_exponents(vec![1, 1, 0]);
        assert_eq!(doubled.num_terms(), 1);
        assert_eq!(doubled.coeff(&mono), int(2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&x(0) * &c(1), x(0));
        let lhs = (&x(0) + &x(1)) * (&x(0) - &x(1));
        let expected = Poly::from_terms(
            3,
            [
                (Monomial::from_exponents(vec![2, 0, 0]), int(1)),
                (Monomial::from_exponents(vec![0, 2, 0]), int(-1)),
            ],
        );
        assert_eq!(lhs, expected);
        assert!((Poly::zero(3) * &x(2)).is_zero());
    }

    #[test]
    fn partial_examples() {
        let p = &(&x(0) * &x(0)) * &x(1);
        assert_eq!(p.partial(0).unwrap(), (&x(0) * &x(1)).scale(&int(2)));
        assert!(x(0).partial(1).unwrap().is_zero());
        assert!(c(7).partial(0).unwrap().is_zero());
        assert_eq!(
            x(0).partial(3),
            Err(ScalarError::IndexOutOfRange { index: 3, nvars: 3 })
        );
    }

    #[test]
    fn eval_examples() {
        let pt = [int(1), int(2), int(0)];
        assert_eq!((x(0) + x(1)).eval(&pt).unwrap(), int(3));
        assert_eq!((&x(0) * &x(1)).eval(&[int(0), int(5), int(1)]).unwrap(), int(0));
        assert_eq!(
            (&x(0) * &x(0)).eval(&[rational(2, 3), int(0), int(0)]).unwrap(),
            rational(4, 9)
        );
        assert_eq!(
            x(0).eval(&[int(1)]),
            Err(ScalarError::PointLength { expected: 3, got: 1 })
        );
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Poly::var(2, 0);
        let b = Poly::var(3, 0);
        assert_eq!(
            a.checked_add(&b),
            Err(ScalarError::DimensionMismatch { left: 2, right: 3 })
        );
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn rationals_are_canonical() {
        let r = rational(4, -6);
        assert_eq!(r.numer(), BigInt::from(-2));
        assert_eq!(r.denom(), BigInt::from(3));
        assert_eq!(rational(0, 5), Rational::zero());
        assert_eq!(Rational::zero().denom(), BigInt::from(1));
    }

    #[test]
    fn monomial_enumeration_is_grlex() {
        let all = Monomial::all_up_to(2, 2);
        assert_eq!(all.len(), 6);
        assert!(all[0].is_one());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(Monomial::var(2, 0) > Monomial::var(2, 1));
    }
}
