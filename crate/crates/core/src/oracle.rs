//! Brute-force persistence reference used by the test suite.
//!
//! Everything here favors obviousness over speed: cells are enumerated by
//! exhaustive subset search, the boundary matrix is reduced with the textbook
//! left-to-right column algorithm (no clearing, no per-dimension batching),
//! and Betti numbers come from Gaussian elimination over Z/2. The module
//! shares only domain types with the optimized engines — no reduction or
//! enumeration code — so agreement between the two is meaningful evidence.
//! Instances are capped at [`CELL_LIMIT`] cells.

use crate::{value_cmp, Bar, Barcode, Error, FiltrationMatrix, Result, Scalar, ScalarField};
use std::cmp::Ordering;
use std::collections::HashMap;

/// Hard cap on brute-force instance size.
pub const CELL_LIMIT: usize = 20_000;

/// Identity of a cell in an explicit complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CellKey {
    /// Sorted vertex tuple of a simplex.
    Simplex(Vec<u32>),
    /// Anchor vertex (linear index) and extended-axis bitmask of a cube.
    Cube { anchor: u32, mask: u16 },
}

/// One cell: dimension, identity, filtration value, and the positions of its
/// facets in the (filtration-sorted) cell list.
#[derive(Debug, Clone)]
pub struct OracleCell<T> {
    pub dim: usize,
    pub key: CellKey,
    pub value: T,
    pub boundary: Vec<usize>,
}

enum Attribution<T> {
    Flag(FiltrationMatrix<T>),
    Cubical { strides: Vec<usize>, values: Vec<T> },
}

/// A fully materialized filtered complex in filtration order.
pub struct ExplicitComplex<T> {
    cells: Vec<OracleCell<T>>,
    attribution: Attribution<T>,
    /// Highest homology degree to report. Cells one dimension above exist
    /// only to supply deaths, so their own (never-paired) classes are noise.
    degree_cap: usize,
}

/// Enumerates every clique of the finite-entry graph of `matrix` with at most
/// `max_dim + 2` vertices, in filtration order.
pub fn enumerate_flag<T: Scalar>(
    matrix: &FiltrationMatrix<T>,
    max_dim: usize,
) -> Result<ExplicitComplex<T>> {
    let n = matrix.size();
    if max_dim > n.saturating_sub(1) {
        return Err(Error::DegreeTooLarge {
            max_dim,
            context: "flag complex",
            size: n,
        });
    }
    let mut raw: Vec<(usize, CellKey, T)> = Vec::new();
    // Exhaustive subset search, growing cliques one largest-vertex at a time.
    let mut stack: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
    while let Some(clique) = stack.pop() {
        let verts: Vec<usize> = clique.iter().map(|&v| v as usize).collect();
        let value = matrix.simplex_value(&verts);
        debug_assert!(value.is_finite());
        raw.push((clique.len() - 1, CellKey::Simplex(clique.clone()), value));
        if raw.len() > CELL_LIMIT {
            return Err(Error::OracleTooLarge {
                cells: raw.len(),
                limit: CELL_LIMIT,
            });
        }
        if clique.len() == max_dim + 2 {
            continue;
        }
        let last = *clique.last().unwrap() as usize;
        for next in (last + 1)..n {
            if verts.iter().all(|&v| matrix.get(v, next).is_finite()) {
                let mut bigger = clique.clone();
                bigger.push(next as u32);
                stack.push(bigger);
            }
        }
    }
    Ok(build(raw, Attribution::Flag(matrix.clone()), max_dim))
}

/// Enumerates every cube of the lattice with dimension at most `max_dim + 1`,
/// in filtration order.
pub fn enumerate_cubical<T: Scalar>(
    field: &ScalarField<T>,
    max_dim: usize,
) -> Result<ExplicitComplex<T>> {
    let ndim = field.ndim();
    if max_dim > ndim {
        return Err(Error::DegreeTooLarge {
            max_dim,
            context: "cubical complex",
            size: ndim,
        });
    }
    let shape = field.shape().to_vec();
    let strides = field.strides();
    let values = field.values();
    let top = (max_dim + 1).min(ndim);

    let mut raw: Vec<(usize, CellKey, T)> = Vec::new();
    for mask in 0u16..(1 << ndim) {
        let dim = mask.count_ones() as usize;
        if dim > top {
            continue;
        }
        // Anchors leave room for every extended axis.
        let limits: Vec<usize> = (0..ndim)
            .map(|a| {
                if mask >> a & 1 == 1 {
                    shape[a] - 1
                } else {
                    shape[a]
                }
            })
            .collect();
        if limits.contains(&0) {
            continue;
        }
        let mut coords = vec![0usize; ndim];
        loop {
            let anchor: usize = coords.iter().zip(&strides).map(|(&c, &s)| c * s).sum();
            let mut value = values[anchor];
            for sub in 1u16..(1 << ndim) {
                if sub & mask == sub {
                    let offset: usize = (0..ndim)
                        .filter(|&a| sub >> a & 1 == 1)
                        .map(|a| strides[a])
                        .sum();
                    value = value.max(values[anchor + offset]);
                }
            }
            raw.push((
                dim,
                CellKey::Cube {
                    anchor: anchor as u32,
                    mask,
                },
                value,
            ));
            if raw.len() > CELL_LIMIT {
                return Err(Error::OracleTooLarge {
                    cells: raw.len(),
                    limit: CELL_LIMIT,
                });
            }
            // Odometer over anchor coordinates.
            let mut axis = ndim;
            loop {
                if axis == 0 {
                    break;
                }
                axis -= 1;
                coords[axis] += 1;
                if coords[axis] < limits[axis] {
                    break;
                }
                coords[axis] = 0;
            }
            if coords.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    Ok(build(
        raw,
        Attribution::Cubical {
            strides,
            values: values.to_vec(),
        },
        max_dim,
    ))
}

/// Sorts cells into filtration order and wires up facet positions.
fn build<T: Scalar>(
    mut raw: Vec<(usize, CellKey, T)>,
    attribution: Attribution<T>,
    degree_cap: usize,
) -> ExplicitComplex<T> {
    raw.sort_by(|a, b| {
        value_cmp(a.2, b.2)
            .then_with(|| a.0.cmp(&b.0))
            .then_with(|| key_cmp(&a.1, &b.1))
    });
    let index: HashMap<CellKey, usize> = raw
        .iter()
        .enumerate()
        .map(|(at, (_, key, _))| (key.clone(), at))
        .collect();
    let cells = raw
        .into_iter()
        .map(|(dim, key, value)| {
            let mut boundary: Vec<usize> = facet_keys(&key, &attribution)
                .into_iter()
                .map(|f| index[&f])
                .collect();
            boundary.sort_unstable();
            OracleCell {
                dim,
                key,
                value,
                boundary,
            }
        })
        .collect();
    ExplicitComplex {
        cells,
        attribution,
        degree_cap,
    }
}

fn key_cmp(a: &CellKey, b: &CellKey) -> Ordering {
    match (a, b) {
        (CellKey::Simplex(x), CellKey::Simplex(y)) => x.cmp(y),
        (
            CellKey::Cube {
                anchor: xa,
                mask: xm,
            },
            CellKey::Cube {
                anchor: ya,
                mask: ym,
            },
        ) => xa.cmp(ya).then_with(|| xm.cmp(ym)),
        _ => unreachable!("complexes never mix cell kinds"),
    }
}

fn facet_keys<T: Scalar>(key: &CellKey, attribution: &Attribution<T>) -> Vec<CellKey> {
    match key {
        CellKey::Simplex(verts) => {
            if verts.len() == 1 {
                return Vec::new();
            }
            (0..verts.len())
                .map(|drop| {
                    let mut face = verts.clone();
                    face.remove(drop);
                    CellKey::Simplex(face)
                })
                .collect()
        }
        CellKey::Cube { anchor, mask } => {
            let Attribution::Cubical { strides, .. } = attribution else {
                unreachable!("cube cells only appear with cubical attribution");
            };
            let mut out = Vec::new();
            for (axis, &stride) in strides.iter().enumerate() {
                if mask >> axis & 1 == 1 {
                    let smaller = mask & !(1 << axis);
                    out.push(CellKey::Cube {
                        anchor: *anchor,
                        mask: smaller,
                    });
                    out.push(CellKey::Cube {
                        anchor: anchor + stride as u32,
                        mask: smaller,
                    });
                }
            }
            out
        }
    }
}

impl<T: Scalar> ExplicitComplex<T> {
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[OracleCell<T>] {
        &self.cells
    }

    /// Textbook left-to-right column reduction of the full boundary matrix,
    /// returning the barcode (zero-length bars dropped).
    pub fn reduce(&self) -> Barcode<T> {
        let n = self.cells.len();
        let mut columns: Vec<Vec<usize>> = self.cells.iter().map(|c| c.boundary.clone()).collect();
        let mut pivot_owner: HashMap<usize, usize> = HashMap::new();
        let mut death_of: Vec<Option<usize>> = vec![None; n];

        for j in 0..n {
            while let Some(&low) = columns[j].last() {
                match pivot_owner.get(&low) {
                    Some(&owner) => {
                        let other = columns[owner].clone();
                        columns[j] = xor_sorted(&columns[j], &other);
                    }
                    None => {
                        pivot_owner.insert(low, j);
                        death_of[low] = Some(j);
                        break;
                    }
                }
            }
        }

        let mut finite = Vec::new();
        let mut essential = Vec::new();
        for (i, cell) in self.cells.iter().enumerate() {
            if !columns[i].is_empty() || cell.dim > self.degree_cap {
                continue; // destroyer, or a creator above the reported range
            }
            match death_of[i] {
                Some(j) => {
                    let death = self.cells[j].value;
                    if death > cell.value {
                        finite.push(Bar {
                            degree: cell.dim,
                            birth: cell.value,
                            death,
                            birth_vertex: self.attributed_vertex(i),
                            death_vertex: Some(self.attributed_vertex(j)),
                        });
                    }
                }
                None => essential.push(Bar {
                    degree: cell.dim,
                    birth: cell.value,
                    death: T::infinity(),
                    birth_vertex: self.attributed_vertex(i),
                    death_vertex: None,
                }),
            }
        }
        Barcode::new(finite, essential)
    }

    /// Degree-`k` Betti number of the sublevel complex at `alpha`, by rank
    /// computations over Z/2: `beta_k = n_k - rank d_k - rank d_{k+1}`.
    pub fn betti_at(&self, alpha: T, k: usize) -> usize {
        let included: Vec<bool> = self.cells.iter().map(|c| c.value <= alpha).collect();
        let count = |dim: usize| {
            self.cells
                .iter()
                .zip(&included)
                .filter(|(c, &inc)| inc && c.dim == dim)
                .count()
        };
        let n_k = count(k);
        let rank_k = self.boundary_rank(k, &included);
        let rank_k1 = self.boundary_rank(k + 1, &included);
        n_k - rank_k - rank_k1
    }

    /// Rank of the boundary map from dim-`d` cells to their facets within the
    /// included sub-complex. Gaussian elimination on u64-packed columns.
    fn boundary_rank(&self, d: usize, included: &[bool]) -> usize {
        if d == 0 {
            return 0;
        }
        // Row index = position among included (d-1)-cells.
        let mut row_of: HashMap<usize, usize> = HashMap::new();
        for (at, cell) in self.cells.iter().enumerate() {
            if included[at] && cell.dim == d - 1 {
                let next = row_of.len();
                row_of.insert(at, next);
            }
        }
        let words = row_of.len().div_ceil(64);
        let mut reduced: Vec<Vec<u64>> = Vec::new();
        let mut pivot_owner: HashMap<usize, usize> = HashMap::new();
        let mut rank = 0;
        for (at, cell) in self.cells.iter().enumerate() {
            if !included[at] || cell.dim != d {
                continue;
            }
            let mut col = vec![0u64; words];
            for &f in &cell.boundary {
                let row = row_of[&f]; // facets of included cells are included
                col[row / 64] ^= 1 << (row % 64);
            }
            while let Some(top) = top_bit(&col) {
                match pivot_owner.get(&top) {
                    Some(&owner) => {
                        let owner_col = reduced[owner].clone();
                        for (w, o) in col.iter_mut().zip(owner_col) {
                            *w ^= o;
                        }
                    }
                    None => {
                        pivot_owner.insert(top, reduced.len());
                        reduced.push(col);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    /// Domain index attaining the filtration value of cell `at`.
    fn attributed_vertex(&self, at: usize) -> usize {
        let cell = &self.cells[at];
        match (&cell.key, &self.attribution) {
            (CellKey::Simplex(verts), Attribution::Flag(matrix)) => {
                // Prefer a vertex whose own value attains the max; fall back
                // to the smaller endpoint of the first attaining edge.
                for &v in verts {
                    if matrix.vertex_value(v as usize) == cell.value {
                        return v as usize;
                    }
                }
                for (a, &u) in verts.iter().enumerate() {
                    for &w in &verts[a + 1..] {
                        if matrix.get(u as usize, w as usize) == cell.value {
                            return u as usize;
                        }
                    }
                }
                unreachable!("some entry attains the simplex value")
            }
            (CellKey::Cube { anchor, mask }, Attribution::Cubical { strides, values }) => {
                let mut best = usize::MAX;
                for sub in 0u16..(1 << strides.len()) {
                    if sub & mask != sub {
                        continue;
                    }
                    let corner: usize = *anchor as usize
                        + (0..strides.len())
                            .filter(|&a| sub >> a & 1 == 1)
                            .map(|a| strides[a])
                            .sum::<usize>();
                    if values[corner] == cell.value && corner < best {
                        best = corner;
                    }
                }
                debug_assert_ne!(best, usize::MAX);
                best
            }
            _ => unreachable!("cell kind matches attribution kind"),
        }
    }
}

/// Index of the highest set bit across a u64-packed column.
fn top_bit(words: &[u64]) -> Option<usize> {
    for (w, &word) in words.iter().enumerate().rev() {
        if word != 0 {
            return Some(w * 64 + 63 - word.leading_zeros() as usize);
        }
    }
    None
}

/// Symmetric difference of two sorted index lists.
fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            Ordering::Less => {
                out.push(a[x]);
                x += 1;
            }
            Ordering::Greater => {
                out.push(b[y]);
                y += 1;
            }
            Ordering::Equal => {
                x += 1;
                y += 1;
            }
        }
    }
    out.extend_from_slice(&a[x..]);
    out.extend_from_slice(&b[y..]);
    out
}
