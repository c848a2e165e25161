//! Exact rationals with an inline `i64` fast path.
//!
//! Nearly every coefficient an identity check produces is a small integer, and
//! going through `BigRational` for those spends most of the time in bignum
//! gcds and allocation. Values that fit are kept as a reduced `i64` pair;
//! anything else falls back to `BigRational`. The representation is
//! canonical (a value is `Small` whenever it fits), so derived equality and
//! hashing are mathematical.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// `num/den` in lowest terms, `den > 0`, `num != i64::MIN`.
    Small(i64, i64),
    /// Only for values that do not fit `Small`.
    Big(BigRational),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn fits(v: i128) -> Option<i64> {
    i64::try_from(v).ok().filter(|&v| v != i64::MIN)
}

impl Rational {
    fn small(num: i64, den: i64) -> Self {
        Rational(Repr::Small(num, den))
    }

    /// Reduces `num/den` (`den > 0`) computed in 128 bits.
    fn from_wide(num: i128, den: i128) -> Self {
        debug_assert!(den > 0);
        let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
        let (num, den) = if g > 1 { (num / g, den / g) } else { (num, den) };
        match (fits(num), fits(den)) {
            (Some(n), Some(d)) => Self::small(n, d),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(num), BigInt::from(den)))),
        }
    }

    /// Demotes a reduced big rational when it fits.
    fn from_reduced_big(r: BigRational) -> Self {
        let small = r
            .numer()
            .to_i64()
            .filter(|&n| n != i64::MIN)
            .zip(r.denom().to_i64());
        match small {
            Some((n, d)) => Self::small(n, d),
            None => Rational(Repr::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    /// `num/den` in lowest terms.
    ///
    /// # Panics
    /// Panics if `den` is zero.
    pub fn new(num: BigInt, den: BigInt) -> Self {
        Self::from_reduced_big(BigRational::new(num, den))
    }

    pub fn from_integer(n: BigInt) -> Self {
        Self::from_reduced_big(BigRational::from_integer(n))
    }

    pub fn from_i64(n: i64) -> Self {
        if n == i64::MIN {
            Self::from_integer(BigInt::from(n))
        } else {
            Self::small(n, 1)
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    fn add_ref(&self, other: &Rational) -> Rational {
        match (&self.0, &other.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) if s != i64::MIN => Self::small(s, 1),
                _ => Self::from_wide(i128::from(*a) + i128::from(*c), 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (i128::from(*a), i128::from(*b), i128::from(*c), i128::from(*d));
                Self::from_wide(a * d + c * b, b * d)
            }
            _ => Self::from_reduced_big(self.to_big() + other.to_big()),
        }
    }

    fn mul_ref(&self, other: &Rational) -> Rational {
        match (&self.0, &other.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_mul(*c) {
                Some(p) if p != i64::MIN => Self::small(p, 1),
                _ => Self::from_wide(i128::from(*a) * i128::from(*c), 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                // cross-cancel so the product is already reduced
                let g1 = gcd_u64(a.unsigned_abs(), *d as u64).max(1) as i64;
                let g2 = gcd_u64(c.unsigned_abs(), *b as u64).max(1) as i64;
                let num = i128::from(a / g1) * i128::from(c / g2);
                let den = i128::from(b / g2) * i128::from(d / g1);
                match (fits(num), fits(den)) {
                    (Some(n), Some(d)) => Self::small(n, d),
                    _ => Self::from_wide(num, den),
                }
            }
            _ => Self::from_reduced_big(self.to_big() * other.to_big()),
        }
    }

    fn recip(&self) -> Rational {
        match &self.0 {
            Repr::Small(0, _) => panic!("division by zero"),
            Repr::Small(n, d) if *n < 0 => Self::small(-d, -n),
            Repr::Small(n, d) => Self::small(*d, *n),
            Repr::Big(r) => Self::from_reduced_big(r.recip()),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Self::small(0, 1)
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Self::small(1, 1)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Self::from_reduced_big(r)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (i128::from(*a) * i128::from(*d)).cmp(&(i128::from(*c) * i128::from(*b)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational::small(-n, *d),
            Repr::Big(r) => Rational::from_reduced_big(-r),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, $b: &Rational) -> Rational {
                let $a = self;
                $body
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $assign_tr<&Rational> for Rational {
            fn $assign(&mut self, rhs: &Rational) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $assign_tr<Rational> for Rational {
            fn $assign(&mut self, rhs: Rational) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, |a, b| a.add_ref(b));
binop!(Sub, sub, SubAssign, sub_assign, |a, b| a.add_ref(&-b));
binop!(Mul, mul, MulAssign, mul_assign, |a, b| a.mul_ref(b));
binop!(Div, div, DivAssign, div_assign, |a, b| a.mul_ref(&b.recip()));

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}
