//! Shared sparse-column reduction over Z/2 with clearing.
//!
//! Both persistence engines funnel into [`reduce`]: flag and cubical code
//! only differ in how they enumerate cells and produce facet positions. Cells
//! are addressed per dimension — position `i` in dimension `d` means the
//! `i`-th dim-`d` cell in filtration order — which keeps the working set of a
//! pass small and lets boundaries be generated on the fly.
//!
//! Dimensions are processed top-down so that every pivot found while reducing
//! dim-`d` columns clears the corresponding dim-`d-1` column (its reduction
//! is known to vanish), which is where the bulk of the savings come from.

/// Pairing output with the creating/destroying cells attached, before
/// attribution turns cells into domain vertices. `C` is the engine's cell
/// identity (vertex tuple for flag, anchor/mask for cubical). Zero-length
/// finite bars are already dropped.
pub(crate) struct RawBars<T, C> {
    pub finite: Vec<RawFiniteBar<T, C>>,
    pub essential: Vec<RawEssentialBar<T, C>>,
}

pub(crate) struct RawFiniteBar<T, C> {
    pub degree: usize,
    pub birth: T,
    pub death: T,
    pub birth_cell: C,
    pub death_cell: C,
}

pub(crate) struct RawEssentialBar<T, C> {
    pub degree: usize,
    pub birth: T,
    pub birth_cell: C,
}

/// Per-dimension access to a filtration-ordered complex.
pub(crate) trait BoundarySource {
    /// Largest cell dimension present (usually `max_dim + 1`).
    fn top_dim(&self) -> usize;

    /// Number of cells of dimension `dim`, in filtration order.
    fn cell_count(&self, dim: usize) -> usize;

    /// Writes the facet positions (indices into the dim-`dim - 1` order) of
    /// cell `idx` of dimension `dim` into `out`, sorted ascending.
    fn facets(&self, dim: usize, idx: u32, out: &mut Vec<u32>);
}

/// Persistence pairing of a filtered complex.
pub(crate) struct Pairing {
    /// `pairs[d]` lists `(birth, death)` with `birth` a dim-`d` position and
    /// `death` a dim-`d+1` position.
    pub pairs: Vec<Vec<(u32, u32)>>,
    /// `essential[d]` lists dim-`d` positions of never-destroyed creators,
    /// for `d < top_dim`; degree `top_dim` creators are not tracked.
    pub essential: Vec<Vec<u32>>,
}

pub(crate) fn reduce<B: BoundarySource>(src: &B) -> Pairing {
    let top = src.top_dim();
    let mut pairs: Vec<Vec<(u32, u32)>> = vec![Vec::new(); top.max(1)];
    let mut essential: Vec<Vec<u32>> = vec![Vec::new(); top.max(1)];
    let mut cleared: Vec<BitSet> = (0..=top).map(|d| BitSet::new(src.cell_count(d))).collect();

    let mut col: Vec<u32> = Vec::new();
    let mut scratch: Vec<u32> = Vec::new();
    for d in (1..=top).rev() {
        let rows = src.cell_count(d - 1);
        let cols = src.cell_count(d);
        // Row position -> id of the stored reduced column owning that pivot.
        let mut pivot_owner: Vec<u32> = vec![u32::MAX; rows];
        let mut store = ColumnStore::default();

        for j in 0..cols as u32 {
            if cleared[d].get(j) {
                continue; // known to reduce to zero; already paired as a birth
            }
            src.facets(d, j, &mut col);
            loop {
                match col.last() {
                    None => {
                        // Creator in degree d; with deaths (pivots of d+1)
                        // already known, an uncleard zero column is essential.
                        if d < top {
                            essential[d].push(j);
                        }
                        break;
                    }
                    Some(&low) => {
                        let owner = pivot_owner[low as usize];
                        if owner == u32::MAX {
                            pivot_owner[low as usize] = store.push(&col);
                            pairs[d - 1].push((low, j));
                            cleared[d - 1].set(low);
                            break;
                        }
                        xor_into(&mut col, store.get(owner), &mut scratch);
                    }
                }
            }
        }
    }

    // Dim-0 columns are all zero; the survivors of clearing are essential.
    for v in 0..src.cell_count(0) as u32 {
        if !cleared[0].get(v) {
            essential[0].push(v);
        }
    }
    Pairing { pairs, essential }
}

/// `col ^= other`, via a merge into `scratch`.
fn xor_into(col: &mut Vec<u32>, other: &[u32], scratch: &mut Vec<u32>) {
    scratch.clear();
    let (mut x, mut y) = (0, 0);
    while x < col.len() && y < other.len() {
        match col[x].cmp(&other[y]) {
            std::cmp::Ordering::Less => {
                scratch.push(col[x]);
                x += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(other[y]);
                y += 1;
            }
            std::cmp::Ordering::Equal => {
                x += 1;
                y += 1;
            }
        }
    }
    scratch.extend_from_slice(&col[x..]);
    scratch.extend_from_slice(&other[y..]);
    std::mem::swap(col, scratch);
}

/// Arena of immutable sorted columns.
#[derive(Default)]
struct ColumnStore {
    data: Vec<u32>,
    spans: Vec<(u32, u32)>,
}

impl ColumnStore {
    fn push(&mut self, col: &[u32]) -> u32 {
        let start = self.data.len() as u32;
        self.data.extend_from_slice(col);
        self.spans.push((start, col.len() as u32));
        (self.spans.len() - 1) as u32
    }

    fn get(&self, id: u32) -> &[u32] {
        let (start, len) = self.spans[id as usize];
        &self.data[start as usize..(start + len) as usize]
    }
}

struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    fn get(&self, at: u32) -> bool {
        self.words[at as usize / 64] >> (at % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, at: u32) {
        self.words[at as usize / 64] |= 1 << (at % 64);
    }
}
