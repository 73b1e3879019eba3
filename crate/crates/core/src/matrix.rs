//! Dense symmetric filtration matrices for flag complexes.

use crate::{Error, GraphField, Result, Scalar};

/// Symmetric matrix encoding a vertex-and-edge filtration of a graph.
///
/// Diagonal entries are finite vertex filtration values. An off-diagonal entry
/// is the filtration value of that edge, or `+inf` when the edge is absent.
/// Finite off-diagonal entries are never below either endpoint's diagonal
/// value, so sublevel sets are genuine subcomplexes. A simplex of the flag
/// complex enters the filtration at the maximum over its vertices' diagonal
/// entries and its edges' off-diagonal entries; edge values may strictly
/// exceed both endpoints, so this is more general than a lower-star
/// filtration.
#[derive(Debug, Clone, PartialEq)]
pub struct FiltrationMatrix<T> {
    size: usize,
    entries: Vec<T>,
}

impl<T: Scalar> FiltrationMatrix<T> {
    /// Validates and wraps a row-major `size * size` entry buffer.
    pub fn new(size: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::MatrixShape {
                got: entries.len(),
                size,
            });
        }
        for i in 0..size {
            let d = entries[i * size + i];
            if !d.is_finite() {
                return Err(Error::DiagonalNotFinite(i));
            }
        }
        for i in 0..size {
            for j in (i + 1)..size {
                let e = entries[i * size + j];
                if e.is_nan() {
                    return Err(Error::MatrixNan { i, j });
                }
                if e != entries[j * size + i] {
                    return Err(Error::Asymmetric { i, j });
                }
                if e.is_finite() && (e < entries[i * size + i] || e < entries[j * size + j]) {
                    return Err(Error::EdgeBelowEndpoint { i, j });
                }
            }
        }
        Ok(FiltrationMatrix { size, entries })
    }

    /// Lower-star filtration of a graph: diagonal carries the vertex values,
    /// each edge enters at the max of its endpoints, absent edges are `+inf`.
    pub fn from_vertex_function(graph: &GraphField<T>) -> Self {
        let n = graph.vertex_count();
        let vals = graph.values();
        let mut entries = vec![T::infinity(); n * n];
        for i in 0..n {
            entries[i * n + i] = vals[i];
        }
        for &(i, j) in graph.edges() {
            let (i, j) = (i as usize, j as usize);
            let v = vals[i].max(vals[j]);
            entries[i * n + j] = v;
            entries[j * n + i] = v;
        }
        FiltrationMatrix { size: n, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.size + j]
    }

    /// Diagonal (vertex) entry.
    #[inline]
    pub fn vertex_value(&self, i: usize) -> T {
        self.get(i, i)
    }

    /// Smallest finite entry; the first simplex of the filtration enters here.
    pub fn min_entry(&self) -> T {
        let mut best = self.vertex_value(0);
        for i in 1..self.size {
            let v = self.vertex_value(i);
            if v < best {
                best = v;
            }
        }
        best
    }

    /// Filtration value of the simplex on `verts` (sorted vertex indices):
    /// the max over diagonal entries and pairwise edge entries. `+inf` when
    /// some pair is not an edge.
    pub fn simplex_value(&self, verts: &[usize]) -> T {
        let mut v = T::neg_infinity();
        for (a, &i) in verts.iter().enumerate() {
            v = v.max(self.get(i, i));
            for &j in &verts[a + 1..] {
                v = v.max(self.get(i, j));
            }
        }
        v
    }
}
