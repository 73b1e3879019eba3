//! Topological comparison of scalar functions on shared domains.
//!
//! This crate computes sublevel-set persistence barcodes for two kinds of
//! filtered complexes — flag (clique) complexes of edge-weighted graphs and
//! cubical complexes of n-dimensional lattices — and builds on them to compare
//! two scalar functions `f` and `g` defined on the same domain:
//!
//! * [`cross::f_cross_barcode_graph`] / [`cross::f_cross_barcode_field`]
//!   compute the cross-barcode of `(f, g)`: a multiset of intervals recording
//!   topological features of the pointwise minimum `min(f, g)` that are absent
//!   from (or mismatched with) the sublevel topology of `f`, together with the
//!   domain sites where each feature appears and disappears.
//! * [`divergence::sftd_graph`] / [`divergence::sftd_field`] aggregate
//!   interval lengths into a scalar divergence (optionally symmetrized over
//!   both orientations), and the `sftd_gradient_*` variants also return a
//!   subgradient of that value with respect to the input samples, suitable
//!   for optimization loops.
//! * [`metrics`] provides exact bottleneck and Wasserstein distances between
//!   persistence diagrams.
//! * [`oracle`] is a deliberately naive, self-contained reference
//!   implementation used by the test suite to validate the optimized engines.
//! * [`synth`] generates the synthetic fields and graphs used in tests and by
//!   the companion command-line tool.
//!
//! Core numeric code is generic over the scalar type via [`Scalar`]
//! (implemented for `f32` and `f64`); file formats and the CLI work in `f64`
//! end to end, and the crate root exports `*64` aliases for that default.
//!
//! # Example
//!
//! Two wall lattices — one intact, one missing a wall segment — have the
//! same barcode once the defect's loop closes, but the comparison sees the
//! discrepancy and pins it down:
//!
//! ```
//! use sftd_core::cross::f_cross_barcode_field;
//! use sftd_core::divergence::{sftd_field, SftdConfig};
//! use sftd_core::synth::lattice_defect_field;
//!
//! # fn main() -> sftd_core::Result<()> {
//! let broken = lattice_defect_field::<f64>(&[10, 10], 3, &[(1, 1)])?;
//! let intact = lattice_defect_field::<f64>(&[10, 10], 3, &[])?;
//!
//! // The loop around cell (1, 1) exists in `min(broken, intact)` from the
//! // wall level -1, but `broken` only closes it at the background level 0.
//! let cross = f_cross_barcode_field(&broken, &intact, 1)?;
//! assert_eq!(cross.barcode().intervals(1), vec![(-1.0, 0.0)]);
//! for localized in cross.localize() {
//!     println!(
//!         "degree {} feature born at {:?}, closed at {:?}",
//!         localized.bar.degree, localized.birth_site, localized.death_site
//!     );
//! }
//!
//! // Aggregated into a single number (and exactly zero the other way).
//! let config = SftdConfig { degrees: vec![0, 1], p: 1.0, symmetric: false };
//! assert_eq!(sftd_field(&broken, &intact, &config)?.total, 1.0);
//! assert_eq!(sftd_field(&intact, &broken, &config)?.total, 0.0);
//! # Ok(())
//! # }
//! ```

pub mod barcode;
pub mod cross;
pub mod cubical;
pub mod divergence;
mod error;
pub mod field;
pub mod flag;
pub mod io;
pub mod matrix;
pub mod metrics;
pub mod oracle;
mod reduce;
pub mod synth;

use std::fmt;

pub use barcode::{Bar, Barcode};
pub use error::{Error, Result};
pub use field::{global_min, GraphField, ScalarField};
pub use matrix::FiltrationMatrix;

/// Scalar values a filtration can be built over.
///
/// All computations assume values are finite unless a contract explicitly
/// allows `+inf` (matrix entries marking absent edges, essential bar deaths).
/// `NaN` is rejected at every construction boundary, so ordering helpers in
/// this crate may compare values with `partial_cmp` + unwrap.
pub trait Scalar:
    num_traits::Float + num_traits::FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Default concrete field type used by file formats and the CLI.
pub type ScalarField64 = ScalarField<f64>;
/// Default concrete graph-with-values type.
pub type GraphField64 = GraphField<f64>;
/// Default concrete filtration matrix type.
pub type FiltrationMatrix64 = FiltrationMatrix<f64>;
/// Default concrete bar type.
pub type Bar64 = Bar<f64>;
/// Default concrete barcode type.
pub type Barcode64 = Barcode<f64>;
/// Default concrete persistence-diagram type.
pub type Diagram64 = metrics::Diagram<f64>;
/// Default concrete sparse-gradient type.
pub type SparseGradient64 = divergence::SparseGradient<f64>;
/// Default concrete cross-barcode result type.
pub type CrossBars64 = cross::CrossBars<f64>;

/// Total order on finite filtration values.
///
/// Panics on `NaN`, which the construction-time validation rules out.
pub(crate) fn value_cmp<T: Scalar>(a: T, b: T) -> std::cmp::Ordering {
    a.partial_cmp(&b).expect("filtration values are never NaN")
}
