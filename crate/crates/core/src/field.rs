//! Scalar functions on lattices and graphs.

use crate::{Error, Result, Scalar};

/// A scalar function sampled on an n-dimensional lattice, stored row-major
/// (C order). Shapes have at least one axis and every extent is >= 1; all
/// samples are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField<T> {
    shape: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> ScalarField<T> {
    /// Validates shape/values and builds a field.
    pub fn new(shape: Vec<usize>, values: Vec<T>) -> Result<Self> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(Error::InvalidShape);
        }
        let want: usize = shape.iter().product();
        if values.len() != want {
            return Err(Error::LengthMismatch {
                got: values.len(),
                want,
            });
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        Ok(ScalarField { shape, values })
    }

    /// Constant field of the given shape.
    pub fn constant(shape: Vec<usize>, value: T) -> Result<Self> {
        let len: usize = shape.iter().product();
        ScalarField::new(shape, vec![value; len])
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Number of lattice axes.
    pub fn ndim(&self) -> usize {
        self.shape.len()
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Row-major strides of the lattice.
    pub fn strides(&self) -> Vec<usize> {
        strides_of(&self.shape)
    }

    /// Linear (C-order) index of a coordinate tuple.
    pub fn linear_index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.shape.len());
        coords.iter().zip(self.strides()).map(|(&c, s)| c * s).sum()
    }

    /// Coordinate tuple of a linear index.
    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.shape.len()];
        for (axis, &stride) in self.strides().iter().enumerate() {
            out[axis] = index / stride;
            index %= stride;
        }
        out
    }

    /// True when both fields live on the same lattice.
    pub fn same_shape(&self, other: &Self) -> bool {
        self.shape == other.shape
    }
}

/// Row-major strides for a shape.
pub(crate) fn strides_of(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; shape.len()];
    for axis in (0..shape.len().saturating_sub(1)).rev() {
        strides[axis] = strides[axis + 1] * shape[axis + 1];
    }
    strides
}

/// A scalar function on the vertices of an undirected graph.
///
/// Edges are normalized to `i < j`, sorted, and deduplicated; self-loops are
/// rejected. Vertex values are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphField<T> {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
    values: Vec<T>,
}

impl<T: Scalar> GraphField<T> {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)], values: Vec<T>) -> Result<Self> {
        if values.len() != vertex_count {
            return Err(Error::LengthMismatch {
                got: values.len(),
                want: vertex_count,
            });
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i >= vertex_count || j >= vertex_count {
                return Err(Error::EdgeOutOfRange {
                    i,
                    j,
                    vertices: vertex_count,
                });
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            normalized.push((i.min(j) as u32, i.max(j) as u32));
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(GraphField {
            vertex_count,
            edges: normalized,
            values,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Normalized `(i, j)` edges with `i < j`, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// True when both functions are defined on the identical graph.
    pub fn same_graph(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }

    /// Replaces the vertex values, keeping the topology.
    pub fn with_values(&self, values: Vec<T>) -> Result<Self> {
        if values.len() != self.vertex_count {
            return Err(Error::LengthMismatch {
                got: values.len(),
                want: self.vertex_count,
            });
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        Ok(GraphField {
            vertex_count: self.vertex_count,
            edges: self.edges.clone(),
            values,
        })
    }
}

/// Minimum value over two equally long sample slices.
pub fn global_min<T: Scalar>(f: &[T], g: &[T]) -> Result<T> {
    if f.is_empty() || f.len() != g.len() {
        return Err(Error::LengthMismatch {
            got: g.len(),
            want: f.len(),
        });
    }
    let mut best = f[0];
    for &v in f.iter().chain(g.iter()) {
        if v < best {
            best = v;
        }
    }
    Ok(best)
}
