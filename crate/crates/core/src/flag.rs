//! Sublevel persistence of flag (clique) complexes.
//!
//! Cells are the cliques of the finite-entry graph of a
//! [`FiltrationMatrix`], up to dimension `max_dim + 1`; a simplex containing
//! a `+inf` edge never exists. A simplex enters the filtration at the max
//! over its vertices' diagonal entries and its edges' off-diagonal entries.
//! Ties are broken by dimension (ascending), then lexicographically by the
//! sorted vertex tuple, which keeps faces ahead of equal-valued cofaces.

use crate::reduce::{reduce, BoundarySource, RawBars, RawEssentialBar, RawFiniteBar};
use crate::{value_cmp, Bar, Barcode, Error, FiltrationMatrix, Result, Scalar};
use std::collections::HashMap;

/// What to compute: homology of `matrix`'s flag complex in degrees
/// `0..=max_dim`.
#[derive(Debug, Clone, Copy)]
pub struct FlagComplexSpec<'a, T> {
    pub matrix: &'a FiltrationMatrix<T>,
    pub max_dim: usize,
}

/// Persistence barcode of a flag complex in degrees `0..=max_dim`.
///
/// Finite bars of zero length are dropped. Each bar carries the domain
/// vertex attaining its birth (and death) filtration value.
pub fn flag_persistence<T: Scalar>(spec: &FlagComplexSpec<'_, T>) -> Result<Barcode<T>> {
    let bars = flag_bars(spec.matrix, spec.max_dim)?;
    let attribute = |cell: &[u32]| attribute_simplex(spec.matrix, cell);
    let finite = bars
        .finite
        .iter()
        .map(|b| Bar {
            degree: b.degree,
            birth: b.birth,
            death: b.death,
            birth_vertex: attribute(&b.birth_cell),
            death_vertex: Some(attribute(&b.death_cell)),
        })
        .collect();
    let essential = bars
        .essential
        .iter()
        .map(|b| Bar {
            degree: b.degree,
            birth: b.birth,
            death: T::infinity(),
            birth_vertex: attribute(&b.birth_cell),
            death_vertex: None,
        })
        .collect();
    Ok(Barcode::new(finite, essential))
}

/// Pairing with the creating/destroying simplices attached; the cross-barcode
/// layer needs the cells themselves to trace values back to inputs.
pub(crate) fn flag_bars<T: Scalar>(
    matrix: &FiltrationMatrix<T>,
    max_dim: usize,
) -> Result<RawBars<T, Vec<u32>>> {
    let complex = FlagComplex::build(matrix, max_dim)?;
    let pairing = reduce(&complex);

    let mut finite = Vec::new();
    for (d, pairs) in pairing.pairs.iter().enumerate() {
        for &(birth, death) in pairs {
            let b = complex.dims[d].cells[birth as usize].clone();
            let k = complex.dims[d + 1].cells[death as usize].clone();
            if k.0 > b.0 {
                finite.push(RawFiniteBar {
                    degree: d,
                    birth: b.0,
                    death: k.0,
                    birth_cell: b.1,
                    death_cell: k.1,
                });
            }
        }
    }
    let mut essential = Vec::new();
    for (d, cells) in pairing.essential.iter().enumerate() {
        for &at in cells {
            let b = complex.dims[d].cells[at as usize].clone();
            essential.push(RawEssentialBar {
                degree: d,
                birth: b.0,
                birth_cell: b.1,
            });
        }
    }
    Ok(RawBars { finite, essential })
}

/// Vertex attaining the filtration value of the simplex `verts`: the smallest
/// vertex whose diagonal entry attains it, else the smaller endpoint of the
/// lexicographically first attaining edge.
pub(crate) fn attribute_simplex<T: Scalar>(matrix: &FiltrationMatrix<T>, verts: &[u32]) -> usize {
    attaining_entry(matrix, verts).0
}

/// The matrix entry `(u, v)` responsible for the simplex's filtration value:
/// the first attaining diagonal in vertex order, else the lexicographically
/// first attaining edge (`u < v`). This is the entry that moves first when
/// the underlying scalar functions are perturbed.
pub(crate) fn attaining_entry<T: Scalar>(
    matrix: &FiltrationMatrix<T>,
    verts: &[u32],
) -> (usize, usize) {
    let value = matrix.simplex_value(&verts.iter().map(|&v| v as usize).collect::<Vec<_>>());
    for &v in verts {
        if matrix.vertex_value(v as usize) == value {
            return (v as usize, v as usize);
        }
    }
    for (a, &u) in verts.iter().enumerate() {
        for &w in &verts[a + 1..] {
            if matrix.get(u as usize, w as usize) == value {
                return (u as usize, w as usize);
            }
        }
    }
    unreachable!("some entry attains the simplex value")
}

struct DimCells<T> {
    /// `(value, sorted vertex tuple)` in filtration order.
    cells: Vec<(T, Vec<u32>)>,
    /// Tuple -> position in `cells`.
    lookup: HashMap<Vec<u32>, u32>,
}

struct FlagComplex<T> {
    dims: Vec<DimCells<T>>,
}

impl<T: Scalar> FlagComplex<T> {
    fn build(matrix: &FiltrationMatrix<T>, max_dim: usize) -> Result<Self> {
        let n = matrix.size();
        if max_dim > n.saturating_sub(1) {
            return Err(Error::DegreeTooLarge {
                max_dim,
                context: "flag complex",
                size: n,
            });
        }
        let adjacency: Vec<Vec<u32>> = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| u != v && matrix.get(v, u).is_finite())
                    .map(|u| u as u32)
                    .collect()
            })
            .collect();

        let top = max_dim + 1;
        let mut per_dim: Vec<Vec<(T, Vec<u32>)>> = vec![Vec::new(); top + 1];
        let mut clique: Vec<u32> = Vec::with_capacity(top + 2);
        for v in 0..n as u32 {
            clique.push(v);
            let candidates: Vec<u32> = adjacency[v as usize]
                .iter()
                .copied()
                .filter(|&u| u > v)
                .collect();
            grow_cliques(
                matrix,
                &adjacency,
                top,
                &mut clique,
                matrix.vertex_value(v as usize),
                &candidates,
                &mut per_dim,
            );
            clique.pop();
        }

        let dims = per_dim
            .into_iter()
            .map(|mut cells| {
                cells.sort_unstable_by(|a, b| value_cmp(a.0, b.0).then_with(|| a.1.cmp(&b.1)));
                let lookup = cells
                    .iter()
                    .enumerate()
                    .map(|(at, (_, verts))| (verts.clone(), at as u32))
                    .collect();
                DimCells { cells, lookup }
            })
            .collect();
        Ok(FlagComplex { dims })
    }
}

/// Depth-first clique growth over candidates larger than the current tail.
fn grow_cliques<T: Scalar>(
    matrix: &FiltrationMatrix<T>,
    adjacency: &[Vec<u32>],
    top: usize,
    clique: &mut Vec<u32>,
    value: T,
    candidates: &[u32],
    per_dim: &mut [Vec<(T, Vec<u32>)>],
) {
    per_dim[clique.len() - 1].push((value, clique.clone()));
    if clique.len() == top + 1 {
        return;
    }
    for &u in candidates {
        let mut grown = value.max(matrix.vertex_value(u as usize));
        for &w in clique.iter() {
            grown = grown.max(matrix.get(w as usize, u as usize));
        }
        let narrowed: Vec<u32> = intersect_above(candidates, &adjacency[u as usize], u);
        clique.push(u);
        grow_cliques(matrix, adjacency, top, clique, grown, &narrowed, per_dim);
        clique.pop();
    }
}

/// Elements of both sorted lists strictly greater than `floor`.
fn intersect_above(a: &[u32], b: &[u32], floor: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                if a[x] > floor {
                    out.push(a[x]);
                }
                x += 1;
                y += 1;
            }
        }
    }
    out
}

impl<T: Scalar> BoundarySource for FlagComplex<T> {
    fn top_dim(&self) -> usize {
        self.dims.len() - 1
    }

    fn cell_count(&self, dim: usize) -> usize {
        self.dims.get(dim).map_or(0, |d| d.cells.len())
    }

    fn facets(&self, dim: usize, idx: u32, out: &mut Vec<u32>) {
        out.clear();
        let verts = &self.dims[dim].cells[idx as usize].1;
        let lookup = &self.dims[dim - 1].lookup;
        for drop in 0..verts.len() {
            let mut face = Vec::with_capacity(verts.len() - 1);
            face.extend_from_slice(&verts[..drop]);
            face.extend_from_slice(&verts[drop + 1..]);
            out.push(lookup[&face]);
        }
        out.sort_unstable();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::GraphField;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_vertex() {
        let m = FiltrationMatrix::new(1, vec![0.3]).unwrap();
        let bc = flag_persistence(&FlagComplexSpec {
            matrix: &m,
            max_dim: 0,
        })
        .unwrap();
        assert!(bc.finite().is_empty());
        assert_eq!(bc.essential().len(), 1);
        assert_eq!(bc.essential()[0].birth, 0.3);
    }

    #[test]
    fn path_graph() {
        let g = GraphField::new(3, &[(0, 1), (1, 2)], vec![0.0, 2.0, 1.0]).unwrap();
        let m = FiltrationMatrix::from_vertex_function(&g);
        let bc = flag_persistence(&FlagComplexSpec {
            matrix: &m,
            max_dim: 0,
        })
        .unwrap();
        assert_eq!(bc.intervals(0), vec![(1.0, 2.0)]);
        assert_eq!(bc.finite()[0].birth_vertex, 2);
        assert_eq!(bc.finite()[0].death_vertex, Some(1));
        assert_eq!(bc.essential().len(), 1);
        assert_eq!(bc.essential()[0].birth, 0.0);
        assert_eq!(bc.essential()[0].birth_vertex, 0);
    }

    #[test]
    fn max_dim_guard() {
        let m = FiltrationMatrix::new(1, vec![0.0]).unwrap();
        assert!(flag_persistence(&FlagComplexSpec {
            matrix: &m,
            max_dim: 0
        })
        .is_ok());
        assert!(matches!(
            flag_persistence(&FlagComplexSpec {
                matrix: &m,
                max_dim: 1
            }),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    /// Random lower-star or inflated-edge matrix on `n` vertices.
    pub(crate) fn random_matrix(
        rng: &mut ChaCha8Rng,
        n: usize,
        density: f64,
    ) -> FiltrationMatrix<f64> {
        let mut entries = vec![f64::INFINITY; n * n];
        for i in 0..n {
            entries[i * n + i] = (rng.random_range(0..40) as f64) * 0.25;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random_bool(density) {
                    let floor = entries[i * n + i].max(entries[j * n + j]);
                    // Half the edges sit above the lower-star value to
                    // exercise the general-matrix path.
                    let bump = if rng.random_bool(0.5) {
                        (rng.random_range(0..4) as f64) * 0.25
                    } else {
                        0.0
                    };
                    entries[i * n + j] = floor + bump;
                    entries[j * n + i] = floor + bump;
                }
            }
        }
        FiltrationMatrix::new(n, entries).unwrap()
    }

    #[test]
    fn agrees_with_oracle_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..60 {
            let n = rng.random_range(1..=7);
            let density = [0.3, 0.6, 1.0][trial % 3];
            let m = random_matrix(&mut rng, n, density);
            let max_dim = rng.random_range(0..=2.min(n - 1));
            let engine = flag_persistence(&FlagComplexSpec {
                matrix: &m,
                max_dim,
            })
            .unwrap();
            let reference = oracle::enumerate_flag(&m, max_dim).unwrap().reduce();
            assert_eq!(engine, reference, "trial {trial} n {n} density {density}");
        }
    }

    #[test]
    fn shifting_values_shifts_bars() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let m = random_matrix(&mut rng, 6, 0.6);
        let shift = 1.5;
        let shifted =
            FiltrationMatrix::new(6, (0..36).map(|at| m.get(at / 6, at % 6) + shift).collect())
                .unwrap();
        let a = flag_persistence(&FlagComplexSpec {
            matrix: &m,
            max_dim: 1,
        })
        .unwrap();
        let b = flag_persistence(&FlagComplexSpec {
            matrix: &shifted,
            max_dim: 1,
        })
        .unwrap();
        for k in 0..=1 {
            let moved: Vec<(f64, f64)> = a
                .intervals(k)
                .iter()
                .map(|&(x, y)| (x + shift, y + shift))
                .collect();
            assert_eq!(moved, b.intervals(k));
        }
    }
}
