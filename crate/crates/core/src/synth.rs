//! Deterministic synthetic inputs: fields with designed topology, small-world
//! graphs, and Laplacian eigenvectors.
//!
//! Every generator is a pure function of its parameters (plus an explicit RNG
//! where randomness is wanted), so outputs are reproducible across runs and
//! platforms. The field generators are built so that geometrically mirrored
//! variants produce *bit-identical* value multisets: distances are evaluated
//! from integer lattice offsets before any floating-point rounding can break
//! the symmetry. That makes "the two fields have exactly equal barcodes"
//! testable with strict equality rather than tolerances.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divergence::{sftd_graph, SftdConfig};
use crate::error::{Error, Result};
use crate::field::strides_of;
use crate::{value_cmp, GraphField, Scalar, ScalarField};

/// Seeded source of independent random streams.
///
/// Wraps the ChaCha8 generator: one 64-bit seed selects the key, and each
/// `stream` index selects an independent substream, so a tool can hand
/// unrelated random sequences to different pipeline stages without them
/// aliasing. Identical seeds produce identical output on every platform.
#[derive(Debug, Clone, Copy)]
pub struct SplitRng {
    seed: u64,
}

impl SplitRng {
    /// Creates the source for a seed.
    pub fn new(seed: u64) -> Self {
        SplitRng { seed }
    }

    /// Returns the generator for one independent stream.
    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// Sum-of-Gaussian-wells field: `f(x) = -depth · Σ_c exp(-‖x-c‖² / (2σ²))`.
///
/// Coordinates are lattice indices, so two center lists related by a lattice
/// reflection yield fields whose value multisets agree bit for bit.
///
/// # Errors
///
/// `depth` and `sigma` must be positive and finite; every center must have
/// one coordinate per axis, each inside the shape.
pub fn gaussian_minima_field<T: Scalar>(
    shape: &[usize],
    centers: &[Vec<usize>],
    depth: T,
    sigma: T,
) -> Result<ScalarField<T>> {
    // `!is_finite()` catches NaN, so `<=` alone is a safe positivity test.
    if depth <= T::zero() || !depth.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "well depth must be positive and finite, got {depth}"
        )));
    }
    if sigma <= T::zero() || !sigma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "gaussian width must be positive and finite, got {sigma}"
        )));
    }
    for (c, center) in centers.iter().enumerate() {
        if center.len() != shape.len() {
            return Err(Error::InvalidParameter(format!(
                "center {c} has {} coordinates for a {}-axis shape",
                center.len(),
                shape.len()
            )));
        }
        if center.iter().zip(shape).any(|(&x, &extent)| x >= extent) {
            return Err(Error::InvalidParameter(format!(
                "center {c} at {center:?} is outside shape {shape:?}"
            )));
        }
    }
    let strides = strides_of(shape);
    let len: usize = shape.iter().product();
    let two_sigma_sq = (T::one() + T::one()) * sigma * sigma;
    let mut values = Vec::with_capacity(len);
    let mut coords = vec![0usize; shape.len()];
    for idx in 0..len {
        let mut rest = idx;
        for (axis, &stride) in strides.iter().enumerate() {
            coords[axis] = rest / stride;
            rest %= stride;
        }
        let mut total = T::zero();
        for center in centers {
            let mut dist_sq = 0usize;
            for (&x, &c) in coords.iter().zip(center) {
                let d = x.abs_diff(c);
                dist_sq += d * d;
            }
            let d2 = T::from_usize(dist_sq).expect("lattice distance fits the scalar type");
            total = total + (-d2 / two_sigma_sq).exp();
        }
        values.push(-depth * total);
    }
    ScalarField::new(shape.to_vec(), values)
}

/// Two-dimensional wall lattice: value −1 on the grid lines of a square
/// lattice with the given `cell` pitch, 0 elsewhere; each listed defect
/// removes the interior of the top wall of that cell (opening its loop).
///
/// Defects are addressed by `(cell_row, cell_col)`. Both extents must equal
/// `k·cell + 1` so the outermost walls close the boundary.
///
/// # Errors
///
/// The shape must be 2-D with both extents of the form `k·cell + 1` (k ≥ 1),
/// the pitch at least 2 (a pitch-1 wall has no removable interior), and every
/// defect inside the cell grid.
pub fn lattice_defect_field<T: Scalar>(
    shape: &[usize],
    cell: usize,
    defects: &[(usize, usize)],
) -> Result<ScalarField<T>> {
    if shape.len() != 2 {
        return Err(Error::InvalidParameter(format!(
            "wall lattices are two-dimensional, got {} axes",
            shape.len()
        )));
    }
    if cell < 2 {
        return Err(Error::InvalidParameter(format!(
            "cell pitch must be at least 2, got {cell}"
        )));
    }
    let (rows, cols) = (shape[0], shape[1]);
    for &extent in &[rows, cols] {
        if extent < cell + 1 || (extent - 1) % cell != 0 {
            return Err(Error::InvalidParameter(format!(
                "extent {extent} is not k*{cell} + 1 for some k >= 1"
            )));
        }
    }
    let (cell_rows, cell_cols) = ((rows - 1) / cell, (cols - 1) / cell);
    for &(ci, cj) in defects {
        if ci >= cell_rows || cj >= cell_cols {
            return Err(Error::InvalidParameter(format!(
                "defect ({ci}, {cj}) outside the {cell_rows}x{cell_cols} cell grid"
            )));
        }
    }
    let wall = -T::one();
    let mut values = vec![T::zero(); rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            if r % cell == 0 || c % cell == 0 {
                values[r * cols + c] = wall;
            }
        }
    }
    for &(ci, cj) in defects {
        let r = ci * cell;
        for c in cj * cell + 1..(cj + 1) * cell {
            values[r * cols + c] = T::zero();
        }
    }
    ScalarField::new(shape.to_vec(), values)
}

/// Side of the inner sphere a bridge is attached to, along axis 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bridge {
    /// Bridge toward larger axis-0 coordinates.
    Above,
    /// Bridge toward smaller axis-0 coordinates.
    Below,
}

/// Two concentric sphere shells in the unit cube, joined by one radial
/// bridge: −1 on the shells and the bridge, 0 elsewhere, sampled on a
/// `grid³` lattice.
///
/// The shells are centered in the cube with radii `r_inner < r_outer`; a
/// point belongs to a shell when its distance to the center is within
/// `shell_width` of that radius. The bridge is a cylinder of radius
/// `shell_width` along axis 0, spanning from the inner shell to the outer
/// shell on the chosen side. Membership is decided from integer doubled
/// lattice offsets, so the `Above` and `Below` variants are exact mirror
/// images and share one barcode.
///
/// # Errors
///
/// Requires `grid ≥ 8`, `0 < r_inner < r_outer < 0.5`, positive
/// `shell_width`, and shells that do not touch
/// (`r_inner + shell_width < r_outer - shell_width`).
pub fn spheres_bridge_field<T: Scalar>(
    grid: usize,
    r_inner: f64,
    r_outer: f64,
    shell_width: f64,
    bridge: Bridge,
) -> Result<ScalarField<T>> {
    if grid < 8 {
        return Err(Error::InvalidParameter(format!(
            "grid must be at least 8, got {grid}"
        )));
    }
    let radii_ok = r_inner.is_finite()
        && r_outer.is_finite()
        && shell_width.is_finite()
        && 0.0 < r_inner
        && r_inner < r_outer
        && r_outer < 0.5
        && shell_width > 0.0
        && r_inner + shell_width < r_outer - shell_width;
    if !radii_ok {
        return Err(Error::InvalidParameter(format!(
            "invalid radii: inner {r_inner}, outer {r_outer}, shell width {shell_width}"
        )));
    }
    // Doubled integer offsets from the cube center: index i maps to
    // 2i - (grid-1), which mirrors exactly under i -> grid-1-i. One unit of
    // length equals 2(grid-1) doubled units.
    let scale = 2.0 * (grid - 1) as f64;
    let (inner, outer, width) = (r_inner * scale, r_outer * scale, shell_width * scale);
    let offset = |i: usize| 2 * i as i64 - (grid - 1) as i64;
    let wall = -T::one();
    let mut values = Vec::with_capacity(grid * grid * grid);
    for z in 0..grid {
        let u = offset(z);
        let axial = match bridge {
            Bridge::Above => u as f64,
            Bridge::Below => -u as f64,
        };
        for y in 0..grid {
            let v = offset(y);
            for x in 0..grid {
                let t = offset(x);
                let radial = ((u * u + v * v + t * t) as f64).sqrt();
                let on_shell = (radial - inner).abs() <= width || (radial - outer).abs() <= width;
                let on_bridge = ((v * v + t * t) as f64).sqrt() <= width
                    && axial >= inner - width
                    && axial <= outer + width;
                values.push(if on_shell || on_bridge {
                    wall
                } else {
                    T::zero()
                });
            }
        }
    }
    ScalarField::new(vec![grid; 3], values)
}

/// Watts–Strogatz small-world topology: a ring lattice where each vertex
/// links to its `k_ring` nearest neighbours, each lattice edge then rewired
/// to a uniform random endpoint with probability `beta`.
///
/// Returns the sorted undirected edge list. Rewiring never introduces
/// self-loops or duplicate edges and keeps the edge count at `n·k_ring/2`;
/// a vertex already connected to everyone keeps its edge unchanged.
///
/// # Errors
///
/// `k_ring` must be even, at least 2, and smaller than `n`; `beta` must lie
/// in `[0, 1]`.
pub fn watts_strogatz<R: Rng + ?Sized>(
    n: usize,
    k_ring: usize,
    beta: f64,
    rng: &mut R,
) -> Result<Vec<(usize, usize)>> {
    if k_ring < 2 || !k_ring.is_multiple_of(2) || k_ring >= n {
        return Err(Error::InvalidParameter(format!(
            "ring degree must be even with 2 <= k < n, got k={k_ring}, n={n}"
        )));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidParameter(format!(
            "rewiring probability must be in [0, 1], got {beta}"
        )));
    }
    let norm = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut degree = vec![0usize; n];
    for step in 1..=k_ring / 2 {
        for i in 0..n {
            if edges.insert(norm(i, (i + step) % n)) {
                degree[i] += 1;
                degree[(i + step) % n] += 1;
            }
        }
    }
    for step in 1..=k_ring / 2 {
        for i in 0..n {
            if !rng.random_bool(beta) {
                continue;
            }
            let old = norm(i, (i + step) % n);
            if degree[i] == n - 1 || !edges.contains(&old) {
                continue;
            }
            let target = loop {
                let w = rng.random_range(0..n);
                if w != i && !edges.contains(&norm(i, w)) {
                    break w;
                }
            };
            edges.remove(&old);
            degree[old.0] -= 1;
            degree[old.1] -= 1;
            edges.insert(norm(i, target));
            degree[i] += 1;
            degree[target] += 1;
        }
    }
    Ok(edges.into_iter().collect())
}

/// Full spectrum of the symmetric normalized Laplacian
/// `L = D^{-1/2} (D - A) D^{-1/2}`, as `(eigenvalue, eigenvector)` pairs
/// sorted by ascending eigenvalue.
///
/// Diagonalization is by cyclic Jacobi rotations, run until the off-diagonal
/// Frobenius norm drops below `1e-10` (or a small multiple of the scalar
/// type's epsilon, whichever is larger, so `f32` converges too). Each
/// eigenvector has unit length and is sign-fixed so its largest-magnitude
/// entry is positive. Duplicate edges are ignored.
///
/// # Errors
///
/// The graph must have no isolated vertex; edge endpoints must be in range
/// with no self-loops.
pub fn laplacian_eigenvectors<T: Scalar>(
    vertex_count: usize,
    edges: &[(usize, usize)],
) -> Result<Vec<(T, Vec<T>)>> {
    let n = vertex_count;
    let mut adjacency: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(i, j) in edges {
        if i >= n || j >= n {
            return Err(Error::EdgeOutOfRange { i, j, vertices: n });
        }
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        adjacency.insert((i.min(j), i.max(j)));
    }
    let mut degree = vec![0usize; n];
    for &(i, j) in &adjacency {
        degree[i] += 1;
        degree[j] += 1;
    }
    if let Some(isolated) = degree.iter().position(|&d| d == 0) {
        return Err(Error::InvalidParameter(format!(
            "vertex {isolated} is isolated; the normalized laplacian needs degree >= 1"
        )));
    }

    let mut a = vec![vec![T::zero(); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = T::one();
    }
    for &(i, j) in &adjacency {
        let d = T::from_usize(degree[i] * degree[j]).expect("degree product fits scalar");
        let coupling = -d.sqrt().recip();
        a[i][j] = coupling;
        a[j][i] = coupling;
    }
    let mut vectors = vec![vec![T::zero(); n]; n];
    for (i, row) in vectors.iter_mut().enumerate() {
        row[i] = T::one();
    }

    let tol = T::from_f64(1e-10)
        .expect("tolerance fits scalar")
        .max(T::epsilon() * T::from_usize(n.max(1)).expect("size fits scalar"));
    let off_sq = |a: &[Vec<T>]| {
        let mut acc = T::zero();
        for (p, row) in a.iter().enumerate() {
            for &entry in &row[p + 1..] {
                acc = acc + entry * entry;
            }
        }
        acc + acc
    };
    let mut converged = false;
    for _sweep in 0..200 {
        if off_sq(&a) <= tol * tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == T::zero() {
                    continue;
                }
                let two = T::one() + T::one();
                let theta = (a[q][q] - a[p][p]) / (two * a[p][q]);
                let root = (T::one() + theta * theta).sqrt();
                let tan = (theta.abs() + root).recip() * theta.signum();
                let cos = (T::one() + tan * tan).sqrt().recip();
                let sin = tan * cos;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = cos * akp - sin * akq;
                    row[q] = sin * akp + cos * akq;
                }
                let (head, tail) = a.split_at_mut(q);
                for (apk, aqk) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    let (rp, rq) = (*apk, *aqk);
                    *apk = cos * rp - sin * rq;
                    *aqk = sin * rp + cos * rq;
                }
                for row in vectors.iter_mut() {
                    let (rp, rq) = (row[p], row[q]);
                    row[p] = cos * rp - sin * rq;
                    row[q] = sin * rp + cos * rq;
                }
            }
        }
    }
    if !converged && off_sq(&a) > tol * tol {
        return Err(Error::Numerical("jacobi sweeps did not converge"));
    }

    let mut pairs: Vec<(T, Vec<T>)> = (0..n)
        .map(|col| {
            let mut vector: Vec<T> = (0..n).map(|row| vectors[row][col]).collect();
            let norm = vector.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
            for x in vector.iter_mut() {
                *x = *x / norm;
            }
            let lead = (0..n)
                .max_by(|&i, &j| value_cmp(vector[i].abs(), vector[j].abs()))
                .expect("vector is nonempty");
            if vector[lead] < T::zero() {
                for x in vector.iter_mut() {
                    *x = -*x;
                }
            }
            (a[col][col], vector)
        })
        .collect();
    pairs.sort_by(|x, y| value_cmp(x.0, y.0));
    Ok(pairs)
}

/// Pairwise symmetrized divergence of scalar functions on one graph: entry
/// `(i, j)` is `Σ_k SFTD_k(functions[i], functions[j])` over the requested
/// degrees, with the symmetrized divergence, so the matrix is symmetric by
/// construction and its diagonal is zero.
pub fn sftd_heatmap<T: Scalar>(
    vertex_count: usize,
    edges: &[(usize, usize)],
    functions: &[Vec<T>],
    degrees: &[usize],
    p: f64,
) -> Result<Vec<Vec<T>>> {
    let config = SftdConfig {
        degrees: degrees.to_vec(),
        p,
        symmetric: true,
    };
    let count = functions.len();
    let mut map = vec![vec![T::zero(); count]; count];
    for i in 0..count {
        let fi = GraphField::new(vertex_count, edges, functions[i].clone())?;
        for j in i..count {
            let fj = fi.with_values(functions[j].clone())?;
            let total = sftd_graph(&fi, &fj, &config)?.total;
            map[i][j] = total;
            map[j][i] = total;
        }
    }
    Ok(map)
}
