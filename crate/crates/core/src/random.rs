//! Seeded generators for randomized identity checks.
//!
//! Every generator is a pure function of a [`ChaCha8Rng`] state; checks derive
//! one stream per sample from `(seed, sample index)` so results do not depend
//! on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Form, MultiIndex, MultiVec};
use crate::scalar::{int, Monomial, Poly};

/// Total degree bound of generated coefficients.
pub const MAX_DEGREE: u32 = 2;
/// Generated integer coefficients lie in `[-COEFF_BOUND, COEFF_BOUND]`.
pub const COEFF_BOUND: i64 = 3;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_poly(rng: &mut impl Rng, m: usize) -> Poly {
    Poly::from_terms(
        m,
        Monomial::all_up_to(m, MAX_DEGREE)
            .into_iter()
            .map(|mono| (mono, int(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)))),
    )
}

pub fn random_form(rng: &mut impl Rng, m: usize, k: usize) -> Form {
    Form::from_terms(
        m,
        k,
        MultiIndex::all(m, k)
            .into_iter()
            .map(|idx| (idx, random_poly(rng, m)))
            .collect::<Vec<_>>(),
    )
}

pub fn random_multivec(rng: &mut impl Rng, m: usize, k: usize) -> MultiVec {
    MultiVec::from_terms(
        m,
        k,
        MultiIndex::all(m, k)
            .into_iter()
            .map(|idx| (idx, random_poly(rng, m)))
            .collect::<Vec<_>>(),
    )
}

pub fn random_vector(rng: &mut impl Rng, m: usize) -> MultiVec {
    random_multivec(rng, m, 1)
}

/// Constant vector field with integer components in the coefficient range.
pub fn random_constant_vector(rng: &mut impl Rng, m: usize) -> MultiVec {
    MultiVec::vector(
        (0..m)
            .map(|_| Poly::from_int(m, rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)))
            .collect(),
    )
}

/// Random point with small rational coordinates.
pub fn random_point(rng: &mut impl Rng, m: usize) -> Vec<crate::scalar::Rational> {
    (0..m)
        .map(|_| crate::scalar::rational(rng.gen_range(-7..=7), rng.gen_range(1..=4)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic_and_bounded() {
        let a = random_form(&mut rng_for(7, 3), 3, 2);
        let b = random_form(&mut rng_for(7, 3), 3, 2);
        assert_eq!(a, b);
        assert_ne!(a, random_form(&mut rng_for(7, 4), 3, 2));
        for (_, f) in a.terms() {
            assert!(f.total_degree().unwrap() <= MAX_DEGREE);
            assert!(f.has_integer_coeffs());
            assert!(f.max_abs_coeff() <= int(COEFF_BOUND));
        }
    }
}
