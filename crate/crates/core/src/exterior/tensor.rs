use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use crate::scalar::{Poly, PolySum, Rational};

use super::MultiIndex;

/// Marker for covariant (form) versus contravariant (multivector) tensors.
pub trait Variance: Debug + Clone + Copy + PartialEq + Eq + Hash + Default + Send + Sync + 'static {
    /// Basis prefix in the text syntax: `dx` or `@`.
    const PREFIX: &'static str;
    const NAME: &'static str;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Co;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Contra;

impl Variance for Co {
    const PREFIX: &'static str = "dx";
    const NAME: &'static str = "form";
}

impl Variance for Contra {
    const PREFIX: &'static str = "@";
    const NAME: &'static str = "multivector";
}

/// Sparse alternating tensor of fixed degree with polynomial coefficients.
///
/// Only basis elements with nonzero coefficients are stored, keyed by strictly
/// increasing multi-indices, so `==` is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alternating<V: Variance> {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, Poly>,
    _variance: PhantomData<V>,
}

/// Accumulates `Σ ± f·g e_I` and combines like terms once at the end.
pub(crate) struct TensorSum {
    dim: usize,
    degree: usize,
    sums: BTreeMap<MultiIndex, PolySum>,
}

impl TensorSum {
    pub(crate) fn new(dim: usize, degree: usize) -> Self {
        TensorSum {
            dim,
            degree,
            sums: BTreeMap::new(),
        }
    }

    fn slot(&mut self, idx: MultiIndex) -> &mut PolySum {
        let dim = self.dim;
        self.sums.entry(idx).or_insert_with(|| PolySum::new(dim))
    }

    pub(crate) fn push_product(&mut self, idx: MultiIndex, f: &Poly, g: &Poly, negate: bool) {
        if !f.is_zero() && !g.is_zero() {
            self.slot(idx).push_product(f, g, negate);
        }
    }

    pub(crate) fn push(&mut self, idx: MultiIndex, f: &Poly, negate: bool) {
        if !f.is_zero() {
            self.slot(idx).push(f, negate);
        }
    }

    pub(crate) fn finish<V: Variance>(self) -> Alternating<V> {
        let mut out = Alternating::zero(self.dim, self.degree);
        for (idx, sum) in self.sums {
            let f = sum.finish();
            if !f.is_zero() {
                out.coeffs.insert(idx, f);
            }
        }
        out
    }
}

/// Differential form.
pub type Form = Alternating<Co>;
/// Multivector field; degree 1 is a vector field.
pub type MultiVec = Alternating<Contra>;

impl<V: Variance> Alternating<V> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Alternating {
            dim,
            degree,
            coeffs: BTreeMap::new(),
            _variance: PhantomData,
        }
    }

    /// Degree-0 tensor with the given coefficient.
    pub fn scalar(f: Poly) -> Self {
        let mut t = Self::zero(f.nvars(), 0);
        t.add_term(MultiIndex::empty(), f);
        t
    }

    /// `f · e_{i1} ∧ … ∧ e_{ik}` for an arbitrary (unsorted) 0-based index list.
    ///
    /// # Panics
    /// Panics if an index is out of range for the chart.
    pub fn monomial(f: Poly, indices: &[usize]) -> Self {
        let dim = f.nvars();
        assert!(
            indices.iter().all(|&i| i < dim),
            "basis index out of range for chart dimension {dim}"
        );
        let mut t = Self::zero(dim, indices.len());
        if let Some((odd, idx)) = MultiIndex::sort_signed(indices.to_vec()) {
            t.add_term(idx, if odd { -f } else { f });
        }
        t
    }

    /// Constant basis element `e_{i1} ∧ … ∧ e_{ik}`.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        Self::monomial(Poly::one(dim), indices)
    }

    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (MultiIndex, Poly)>) -> Self {
        let mut t = Self::zero(dim, degree);
        for (idx, f) in terms {
            assert_eq!(idx.len(), degree, "multi-index length must equal degree");
            t.add_term(idx, f);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Poly {
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.dim))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Poly)> + '_ {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of a degree-0 tensor.
    ///
    /// # Panics
    /// Panics if the degree is not 0.
    pub fn scalar_part(&self) -> Poly {
        assert_eq!(self.degree, 0, "scalar_part of a degree-{} tensor", self.degree);
        self.coeff(&MultiIndex::empty())
    }

    /// `true` when every coefficient is a constant polynomial.
    pub fn is_constant(&self) -> bool {
        self.coeffs.values().all(Poly::is_constant)
    }

    pub(crate) fn add_term(&mut self, idx: MultiIndex, f: Poly) {
        if f.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.dim, other.dim, "chart dimension mismatch");
        // a zero tensor is degree-agnostic; anything else must match
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        assert_eq!(
            self.degree, other.degree,
            "cannot add {}s of degrees {} and {}",
            V::NAME, self.degree, other.degree
        );
        let mut out = self.clone();
        for (idx, f) in &other.coeffs {
            out.add_term(idx.clone(), if negate { -f } else { f.clone() });
        }
        out
    }

    /// Coefficient-wise product with a function.
    pub fn scale_by(&self, f: &Poly) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, g) in &self.coeffs {
            out.add_term(idx.clone(), f * g);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, g) in &self.coeffs {
            out.add_term(idx.clone(), g.scale(c));
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Poly) -> Poly) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, g) in &self.coeffs {
            out.add_term(idx.clone(), f(g));
        }
        out
    }

    /// Exterior product with Koszul sign; degree `p + q`, zero when it
    /// exceeds the chart dimension.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "chart dimension mismatch");
        let mut out = TensorSum::new(self.dim, self.degree + other.degree);
        for (a, f) in &self.coeffs {
            for (b, g) in &other.coeffs {
                if let Some((odd, idx)) = a.merge(b) {
                    out.push_product(idx, f, g, odd);
                }
            }
        }
        out.finish()
    }

    /// Returns the same tensor relabelled at another degree when it is zero.
    pub(crate) fn with_degree_if_zero(mut self, degree: usize) -> Self {
        if self.is_zero() {
            self.degree = degree;
        }
        self
    }
}

impl MultiVec {
    /// Vector field `Σ components[i] ∂_i`.
    pub fn vector(components: Vec<Poly>) -> Self {
        let dim = components.len();
        Self::from_terms(
            dim,
            1,
            components
                .into_iter()
                .enumerate()
                .map(|(i, f)| (MultiIndex::single(i), f)),
        )
    }

    /// `i`-th component of a vector field.
    pub fn component(&self, i: usize) -> Poly {
        debug_assert_eq!(self.degree, 1);
        self.coeff(&MultiIndex::single(i))
    }
}

impl<V: Variance> Add for &Alternating<V> {
    type Output = Alternating<V>;
    fn add(self, rhs: Self) -> Alternating<V> {
        self.combine(rhs, false)
    }
}

impl<V: Variance> Add for Alternating<V> {
    type Output = Alternating<V>;
    fn add(self, rhs: Self) -> Alternating<V> {
        self.combine(&rhs, false)
    }
}

impl<V: Variance> Sub for &Alternating<V> {
    type Output = Alternating<V>;
    fn sub(self, rhs: Self) -> Alternating<V> {
        self.combine(rhs, true)
    }
}

impl<V: Variance> Sub for Alternating<V> {
    type Output = Alternating<V>;
    fn sub(self, rhs: Self) -> Alternating<V> {
        self.combine(&rhs, true)
    }
}

impl<V: Variance> Neg for &Alternating<V> {
    type Output = Alternating<V>;
    fn neg(self) -> Alternating<V> {
        self.map_coeffs(|f| -f)
    }
}

impl<V: Variance> Neg for Alternating<V> {
    type Output = Alternating<V>;
    fn neg(self) -> Alternating<V> {
        -&self
    }
}
