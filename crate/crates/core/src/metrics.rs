//! Exact distances between persistence diagrams.
//!
//! A [`Diagram`] is the multiset of finite `(birth, death)` intervals of one
//! homology degree. Both distances use the `∞`-norm on the plane as the ground
//! metric and allow any point to be matched to its orthogonal projection on
//! the diagonal `{birth == death}` instead of to a partner point:
//!
//! * [`bottleneck_distance`] minimizes the largest displacement of any point.
//!   It is computed exactly by binary-searching the finite set of candidate
//!   radii (pairwise distances and diagonal gaps) for the smallest radius at
//!   which a perfect matching exists in the radius-restricted bipartite graph.
//! * [`wasserstein_distance`] minimizes `(Σ displacement^q)^(1/q)` over the
//!   same matchings, solved exactly as an assignment problem on the augmented
//!   square cost matrix in which each side is padded with diagonal slots.
//!
//! Essential (infinite) intervals never enter these metrics; construct
//! diagrams with [`Diagram::from_barcode`] to apply that convention
//! automatically. Zero-length intervals are dropped on construction — they
//! sit on the diagonal and cannot affect either distance.

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::{value_cmp, Scalar};

/// Finite persistence intervals of a single homology degree, as points
/// `(birth, death)` above the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagram<T> {
    points: Vec<(T, T)>,
}

impl<T: Scalar> Diagram<T> {
    /// Builds a diagram from explicit points.
    ///
    /// Rejects NaN or infinite coordinates and points with `death < birth`.
    /// Zero-length points (`death == birth`) are dropped. Points are stored
    /// sorted, so diagrams compare as multisets regardless of input order.
    pub fn new(points: Vec<(T, T)>) -> Result<Self> {
        for (idx, &(birth, death)) in points.iter().enumerate() {
            if !birth.is_finite() || !death.is_finite() {
                return Err(Error::NonFinite(idx));
            }
            if death < birth {
                return Err(Error::InvalidParameter(format!(
                    "diagram point {idx} has death {death} below birth {birth}"
                )));
            }
        }
        let mut points: Vec<(T, T)> = points.into_iter().filter(|&(b, d)| d > b).collect();
        sort_points(&mut points);
        Ok(Diagram { points })
    }

    /// Extracts the finite intervals of `degree` from a barcode.
    pub fn from_barcode(barcode: &Barcode<T>, degree: usize) -> Self {
        let mut points = barcode.intervals(degree);
        sort_points(&mut points);
        Diagram { points }
    }

    /// The points, sorted by `(birth, death)`.
    pub fn points(&self) -> &[(T, T)] {
        &self.points
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Whether the diagram has no points.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn sort_points<T: Scalar>(points: &mut [(T, T)]) {
    points.sort_by(|a, b| value_cmp(a.0, b.0).then_with(|| value_cmp(a.1, b.1)));
}

/// `∞`-norm distance between two diagram points.
fn dist<T: Scalar>(p: (T, T), q: (T, T)) -> T {
    (p.0 - q.0).abs().max((p.1 - q.1).abs())
}

/// `∞`-norm distance from a point to the diagonal (half the bar length).
fn diag_gap<T: Scalar>(p: (T, T)) -> T {
    (p.1 - p.0) / (T::one() + T::one())
}

/// Exact bottleneck distance between two diagrams.
///
/// The infimum over partial matchings (unmatched points pair with the
/// diagonal) of the largest `∞`-norm displacement. The result is always one
/// of finitely many candidate radii, found by binary search with a bipartite
/// matching feasibility test at each probe.
pub fn bottleneck_distance<T: Scalar>(a: &Diagram<T>, b: &Diagram<T>) -> T {
    if a.is_empty() && b.is_empty() {
        return T::zero();
    }
    let mut candidates: Vec<T> = Vec::new();
    for &p in a.points() {
        candidates.push(diag_gap(p));
        for &q in b.points() {
            candidates.push(dist(p, q));
        }
    }
    for &q in b.points() {
        candidates.push(diag_gap(q));
    }
    candidates.sort_by(|x, y| value_cmp(*x, *y));
    candidates.dedup_by(|x, y| *x == *y);

    // Smallest candidate radius admitting a perfect matching. The largest
    // always works (every point can reach the diagonal and, a fortiori, the
    // searched optimum), so the search space is never empty.
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if matching_exists(a.points(), b.points(), candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Perfect-matching feasibility in the radius-restricted bipartite graph.
///
/// Left side: the `n` points of `a` plus `m` diagonal copies. Right side: the
/// `m` points of `b` plus `n` diagonal copies. A point connects to a partner
/// within `∞`-distance `radius`, to any diagonal copy if its diagonal gap is
/// within `radius`; diagonal copies connect to each other freely.
fn matching_exists<T: Scalar>(a: &[(T, T)], b: &[(T, T)], radius: T) -> bool {
    let (n, m) = (a.len(), b.len());
    let size = n + m;
    let connected = |left: usize, right: usize| -> bool {
        match (left < n, right < m) {
            (true, true) => dist(a[left], b[right]) <= radius,
            (true, false) => diag_gap(a[left]) <= radius,
            (false, true) => diag_gap(b[right]) <= radius,
            (false, false) => true,
        }
    };
    // Kuhn's augmenting-path algorithm; sizes here are small enough that the
    // O(V·E) bound is comfortable.
    let mut owner: Vec<Option<usize>> = vec![None; size];
    for left in 0..size {
        let mut visited = vec![false; size];
        if !augment(left, &connected, &mut owner, &mut visited) {
            return false;
        }
    }
    true
}

fn augment(
    left: usize,
    connected: &impl Fn(usize, usize) -> bool,
    owner: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for right in 0..owner.len() {
        if visited[right] || !connected(left, right) {
            continue;
        }
        visited[right] = true;
        let free = match owner[right] {
            None => true,
            Some(prev) => augment(prev, connected, owner, visited),
        };
        if free {
            owner[right] = Some(left);
            return true;
        }
    }
    false
}

/// Exact `q`-Wasserstein distance between two diagrams.
///
/// Minimizes `(Σ displacement^q)^(1/q)` over partial matchings with diagonal
/// projections, solved as a square assignment problem: each side is padded
/// with diagonal slots (cost = that point's diagonal gap raised to `q`;
/// slot-to-slot pairs cost zero).
///
/// # Errors
///
/// `q` must be finite and at least 1.
pub fn wasserstein_distance<T: Scalar>(a: &Diagram<T>, b: &Diagram<T>, q: f64) -> Result<T> {
    if !q.is_finite() || q < 1.0 {
        return Err(Error::InvalidConfig(format!(
            "wasserstein order q must be finite and >= 1, got {q}"
        )));
    }
    let (n, m) = (a.len(), b.len());
    let size = n + m;
    if size == 0 {
        return Ok(T::zero());
    }
    let qt = T::from_f64(q).expect("exponent fits the scalar type");
    let cost = |left: usize, right: usize| -> T {
        match (left < n, right < m) {
            (true, true) => dist(a.points()[left], b.points()[right]).powf(qt),
            (true, false) => diag_gap(a.points()[left]).powf(qt),
            (false, true) => diag_gap(b.points()[right]).powf(qt),
            (false, false) => T::zero(),
        }
    };
    let total = assignment_cost(size, &cost);
    Ok(total.powf(qt.recip()))
}

/// Minimum total cost of a perfect assignment on an implicit `size × size`
/// cost matrix — the Hungarian algorithm with row/column potentials.
fn assignment_cost<T: Scalar>(size: usize, cost: &impl Fn(usize, usize) -> T) -> T {
    // Potentials and matching use 1-based columns; column 0 is a sentinel
    // that each new row starts from.
    let mut pot_row = vec![T::zero(); size + 1];
    let mut pot_col = vec![T::zero(); size + 1];
    let mut owner = vec![0usize; size + 1]; // row assigned to each column
    let mut prev_col = vec![0usize; size + 1];
    for row in 1..=size {
        owner[0] = row;
        let mut current = 0usize;
        let mut min_slack = vec![T::infinity(); size + 1];
        let mut final_col = vec![false; size + 1];
        loop {
            final_col[current] = true;
            let active = owner[current];
            let mut delta = T::infinity();
            let mut next = 0usize;
            for col in 1..=size {
                if final_col[col] {
                    continue;
                }
                let reduced = cost(active - 1, col - 1) - pot_row[active] - pot_col[col];
                if reduced < min_slack[col] {
                    min_slack[col] = reduced;
                    prev_col[col] = current;
                }
                if min_slack[col] < delta {
                    delta = min_slack[col];
                    next = col;
                }
            }
            for col in 0..=size {
                if final_col[col] {
                    pot_row[owner[col]] = pot_row[owner[col]] + delta;
                    pot_col[col] = pot_col[col] - delta;
                } else {
                    min_slack[col] = min_slack[col] - delta;
                }
            }
            current = next;
            if owner[current] == 0 {
                break;
            }
        }
        // Walk the alternating path back, flipping assignments.
        while current != 0 {
            let back = prev_col[current];
            owner[current] = owner[back];
            current = back;
        }
    }
    let mut total = T::zero();
    for (col, &row) in owner.iter().enumerate().skip(1) {
        total = total + cost(row - 1, col - 1);
    }
    total
}
