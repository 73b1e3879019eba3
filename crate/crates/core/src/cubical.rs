//! Sublevel persistence of cubical complexes (V-construction).
//!
//! Lattice points carry the samples; a k-cube is addressed by its anchor
//! vertex (minimal corner, as a row-major linear index) plus a bitmask of
//! extended axes, and enters the filtration at the max over its `2^k`
//! corners. Ties are broken by dimension (ascending), then anchor index,
//! then bitmask, so faces always precede equal-valued cofaces.

use crate::reduce::{reduce, BoundarySource, RawBars, RawEssentialBar, RawFiniteBar};
use crate::{value_cmp, Bar, Barcode, Error, Result, Scalar, ScalarField};

/// What to compute: homology of the field's cubical complex in degrees
/// `0..=max_dim`.
#[derive(Debug, Clone, Copy)]
pub struct CubicalSpec<'a, T> {
    pub field: &'a ScalarField<T>,
    pub max_dim: usize,
}

/// Cube identity: anchor vertex (linear index) and extended-axis bitmask.
pub(crate) type CubeKey = (u32, u16);

/// Persistence barcode of a cubical complex in degrees `0..=max_dim`.
///
/// Finite bars of zero length are dropped. Each bar carries the lattice
/// vertex (linear index) attaining its birth (and death) value.
pub fn cubical_persistence<T: Scalar>(spec: &CubicalSpec<'_, T>) -> Result<Barcode<T>> {
    let bars = cubical_bars(spec.field, spec.max_dim)?;
    let strides = spec.field.strides();
    let values = spec.field.values();
    let attribute = |cell: &CubeKey| attribute_cube(values, &strides, *cell);
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

/// Pairing with cube identities attached, for the cross-barcode layer.
pub(crate) fn cubical_bars<T: Scalar>(
    field: &ScalarField<T>,
    max_dim: usize,
) -> Result<RawBars<T, CubeKey>> {
    let complex = CubicalComplex::build(field, max_dim)?;
    let pairing = reduce(&complex);

    let mut finite = Vec::new();
    for (d, pairs) in pairing.pairs.iter().enumerate() {
        for &(birth, death) in pairs {
            let (bv, ba, bm) = complex.dims[d].get(birth);
            let (dv, da, dm) = complex.dims[d + 1].get(death);
            if dv > bv {
                finite.push(RawFiniteBar {
                    degree: d,
                    birth: bv,
                    death: dv,
                    birth_cell: (ba, bm),
                    death_cell: (da, dm),
                });
            }
        }
    }
    let mut essential = Vec::new();
    for (d, cells) in pairing.essential.iter().enumerate() {
        for &at in cells {
            let (bv, ba, bm) = complex.dims[d].get(at);
            essential.push(RawEssentialBar {
                degree: d,
                birth: bv,
                birth_cell: (ba, bm),
            });
        }
    }
    Ok(RawBars { finite, essential })
}

/// Corner of `cell` with the smallest linear index among those attaining the
/// cube's filtration value.
pub(crate) fn attribute_cube<T: Scalar>(values: &[T], strides: &[usize], cell: CubeKey) -> usize {
    let (anchor, mask) = cell;
    let mut value = T::neg_infinity();
    let mut best = usize::MAX;
    for_each_corner(anchor as usize, mask, strides, |corner| {
        let v = values[corner];
        if v > value || (v == value && corner < best) {
            if v > value {
                value = v;
                best = corner;
            } else {
                best = corner;
            }
        }
    });
    best
}

/// Calls `visit` with the linear index of every corner of `(anchor, mask)`.
fn for_each_corner(anchor: usize, mask: u16, strides: &[usize], mut visit: impl FnMut(usize)) {
    let ndim = strides.len();
    let mut sub: u16 = 0;
    loop {
        let offset: usize = (0..ndim)
            .filter(|&a| sub >> a & 1 == 1)
            .map(|a| strides[a])
            .sum();
        visit(anchor + offset);
        // Enumerate submasks of `mask`.
        if sub == mask {
            break;
        }
        sub = (sub.wrapping_sub(mask)) & mask;
    }
}

struct DimCubes<T> {
    /// Parallel arrays in filtration order.
    values: Vec<T>,
    anchors: Vec<u32>,
    masks: Vec<u16>,
}

impl<T: Scalar> DimCubes<T> {
    fn get(&self, at: u32) -> (T, u32, u16) {
        let at = at as usize;
        (self.values[at], self.anchors[at], self.masks[at])
    }

    fn len(&self) -> usize {
        self.values.len()
    }
}

struct CubicalComplex<T> {
    ndim: usize,
    strides: Vec<usize>,
    dims: Vec<DimCubes<T>>,
    /// `(anchor << ndim | mask)` -> position within the cube's dimension.
    lut: Vec<u32>,
}

impl<T: Scalar> CubicalComplex<T> {
    fn build(field: &ScalarField<T>, max_dim: usize) -> Result<Self> {
        let ndim = field.ndim();
        if max_dim > ndim {
            return Err(Error::DegreeTooLarge {
                max_dim,
                context: "cubical complex",
                size: ndim,
            });
        }
        if ndim > 12 {
            return Err(Error::InvalidParameter(format!(
                "cubical engine supports at most 12 axes, got {ndim}"
            )));
        }
        let shape = field.shape();
        let strides = field.strides();
        let values = field.values();
        let top = (max_dim + 1).min(ndim);

        // Enumerate cubes mask by mask, collecting per dimension.
        let mut raw: Vec<Vec<(T, u32, u16)>> = vec![Vec::new(); top + 1];
        for mask in 0u16..(1 << ndim) {
            let dim = mask.count_ones() as usize;
            if dim > top {
                continue;
            }
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
            let count: usize = limits.iter().product();
            raw[dim].reserve(count);
            let corner_offsets: Vec<usize> = submask_offsets(mask, &strides);
            let mut coords = vec![0usize; ndim];
            let mut anchor = 0usize;
            for _ in 0..count {
                let mut value = values[anchor];
                for &off in &corner_offsets[1..] {
                    value = value.max(values[anchor + off]);
                }
                raw[dim].push((value, anchor as u32, mask));
                // Row-major odometer keeping `anchor` in sync.
                for axis in (0..ndim).rev() {
                    coords[axis] += 1;
                    anchor += strides[axis];
                    if coords[axis] < limits[axis] {
                        break;
                    }
                    anchor -= coords[axis] * strides[axis];
                    coords[axis] = 0;
                }
            }
        }

        let mut lut = vec![u32::MAX; values.len() << ndim];
        let dims = raw
            .into_iter()
            .map(|mut cells| {
                cells.sort_unstable_by(|a, b| {
                    value_cmp(a.0, b.0)
                        .then_with(|| a.1.cmp(&b.1))
                        .then_with(|| a.2.cmp(&b.2))
                });
                let mut values = Vec::with_capacity(cells.len());
                let mut anchors = Vec::with_capacity(cells.len());
                let mut masks = Vec::with_capacity(cells.len());
                for (at, (v, a, m)) in cells.into_iter().enumerate() {
                    lut[(a as usize) << ndim | m as usize] = at as u32;
                    values.push(v);
                    anchors.push(a);
                    masks.push(m);
                }
                DimCubes {
                    values,
                    anchors,
                    masks,
                }
            })
            .collect();
        Ok(CubicalComplex {
            ndim,
            strides,
            dims,
            lut,
        })
    }
}

/// Corner offsets (submask stride sums) of `mask`, smallest first.
fn submask_offsets(mask: u16, strides: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for (a, &stride) in strides.iter().enumerate() {
        if mask >> a & 1 == 1 {
            for i in 0..out.len() {
                out.push(out[i] + stride);
            }
        }
    }
    out
}

impl<T: Scalar> BoundarySource for CubicalComplex<T> {
    fn top_dim(&self) -> usize {
        self.dims.len() - 1
    }

    fn cell_count(&self, dim: usize) -> usize {
        self.dims.get(dim).map_or(0, DimCubes::len)
    }

    fn facets(&self, dim: usize, idx: u32, out: &mut Vec<u32>) {
        out.clear();
        let anchor = self.dims[dim].anchors[idx as usize] as usize;
        let mask = self.dims[dim].masks[idx as usize] as usize;
        for axis in 0..self.ndim {
            if mask >> axis & 1 == 1 {
                let smaller = mask & !(1 << axis);
                out.push(self.lut[anchor << self.ndim | smaller]);
                out.push(self.lut[(anchor + self.strides[axis]) << self.ndim | smaller]);
            }
        }
        out.sort_unstable();
    }
}
