//! Persistence bars and barcodes.

use crate::{value_cmp, Scalar};
use std::cmp::Ordering;

/// One persistence interval in a fixed homology degree.
///
/// `birth_vertex` (and, for finite bars, `death_vertex`) is the domain index
/// attaining the filtration value of the cell that created (destroyed) the
/// feature; engines break ties toward the smallest index. Essential bars have
/// `death == +inf` and no death vertex. Zero-length bars are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Bar<T> {
    pub degree: usize,
    pub birth: T,
    pub death: T,
    pub birth_vertex: usize,
    pub death_vertex: Option<usize>,
}

impl<T: Scalar> Bar<T> {
    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    /// `death - birth`; infinite for essential bars.
    pub fn length(&self) -> T {
        self.death - self.birth
    }

    pub(crate) fn sort_key(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| value_cmp(self.birth, other.birth))
            .then_with(|| value_cmp(self.death, other.death))
            .then_with(|| self.birth_vertex.cmp(&other.birth_vertex))
            .then_with(|| self.death_vertex.cmp(&other.death_vertex))
    }
}

/// A multiset of bars, finite and essential kept separately, each sorted by
/// `(degree, birth, death, birth_vertex, death_vertex)` so that equality is
/// multiset equality.
#[derive(Debug, Clone, PartialEq)]
pub struct Barcode<T> {
    finite: Vec<Bar<T>>,
    essential: Vec<Bar<T>>,
}

impl<T: Scalar> Barcode<T> {
    pub fn new(mut finite: Vec<Bar<T>>, mut essential: Vec<Bar<T>>) -> Self {
        debug_assert!(finite
            .iter()
            .all(|b| b.birth < b.death && b.death.is_finite()));
        debug_assert!(essential.iter().all(|b| b.is_essential()));
        finite.sort_by(|a, b| a.sort_key(b));
        essential.sort_by(|a, b| a.sort_key(b));
        Barcode { finite, essential }
    }

    pub fn empty() -> Self {
        Barcode {
            finite: Vec::new(),
            essential: Vec::new(),
        }
    }

    /// All finite bars, ascending by degree.
    pub fn finite(&self) -> &[Bar<T>] {
        &self.finite
    }

    /// All essential bars, ascending by degree.
    pub fn essential(&self) -> &[Bar<T>] {
        &self.essential
    }

    pub fn finite_in(&self, degree: usize) -> impl Iterator<Item = &Bar<T>> {
        self.finite.iter().filter(move |b| b.degree == degree)
    }

    pub fn essential_in(&self, degree: usize) -> impl Iterator<Item = &Bar<T>> {
        self.essential.iter().filter(move |b| b.degree == degree)
    }

    /// Largest degree carrying any bar, or `None` for the empty barcode.
    pub fn max_degree(&self) -> Option<usize> {
        self.finite
            .iter()
            .chain(&self.essential)
            .map(|b| b.degree)
            .max()
    }

    /// Sorted `(birth, death)` pairs of the finite bars in one degree;
    /// the value-only view used for interval-multiset comparisons.
    pub fn intervals(&self, degree: usize) -> Vec<(T, T)> {
        let mut out: Vec<(T, T)> = self.finite_in(degree).map(|b| (b.birth, b.death)).collect();
        out.sort_by(|a, b| value_cmp(a.0, b.0).then_with(|| value_cmp(a.1, b.1)));
        out
    }

    /// Number of bars (finite and essential) alive at threshold `alpha` in
    /// the given degree: `birth <= alpha < death`.
    pub fn alive_at(&self, degree: usize, alpha: T) -> usize {
        self.finite_in(degree)
            .chain(self.essential_in(degree))
            .filter(|b| b.birth <= alpha && alpha < b.death)
            .count()
    }
}
