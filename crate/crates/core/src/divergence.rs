//! Topology divergence values and their subgradients.
//!
//! The divergence of `(f, g)` in degree `k` is the sum of `(death − birth)^p`
//! over the finite bars of the degree-`k` cross-barcode; a symmetric variant
//! averages the two orientations. Because every bar endpoint is a verbatim
//! copy of one input sample (see [`GradSource`]), the divergence is piecewise
//! linear in the inputs for `p = 1` (piecewise polynomial in general) and a
//! subgradient falls out of the bar-to-sample routing: each bar pushes
//! `+p·len^{p−1}` onto its death sample and the negative onto its birth
//! sample. At ties the deterministic tie-breaking rules select one valid
//! subgradient; no smoothing is applied.

use crate::cross::{f_cross_barcode_field, f_cross_barcode_graph, CrossBars, GradSource};
use crate::{Error, GraphField, Result, Scalar, ScalarField};
use std::collections::BTreeMap;

/// What to aggregate and how.
#[derive(Debug, Clone)]
pub struct SftdConfig {
    /// Homology degrees entering the total. Deduplicated; must be nonempty.
    pub degrees: Vec<usize>,
    /// Exponent on interval lengths; must be ≥ 1 (1 and 2 are typical).
    pub p: f64,
    /// Average the `(f, g)` and `(g, f)` orientations.
    pub symmetric: bool,
}

impl Default for SftdConfig {
    fn default() -> Self {
        SftdConfig {
            degrees: vec![0, 1],
            p: 1.0,
            symmetric: false,
        }
    }
}

impl SftdConfig {
    fn validated(&self) -> Result<(Vec<usize>, f64)> {
        if self.degrees.is_empty() {
            return Err(Error::InvalidConfig(
                "at least one homology degree is required".into(),
            ));
        }
        if !self.p.is_finite() || self.p < 1.0 {
            return Err(Error::InvalidConfig(format!(
                "exponent p must be a finite value >= 1, got {}",
                self.p
            )));
        }
        let mut degrees = self.degrees.clone();
        degrees.sort_unstable();
        degrees.dedup();
        Ok((degrees, self.p))
    }
}

/// Divergence per requested degree, plus their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct SftdResult<T> {
    pub per_degree: BTreeMap<usize, T>,
    pub total: T,
}

/// Nonzero partial derivatives of the divergence with respect to the input
/// samples, keyed by vertex index (graphs) or row-major site index
/// (lattices). At most two entries per finite bar and orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseGradient<T> {
    pub wrt_f: BTreeMap<usize, T>,
    pub wrt_g: BTreeMap<usize, T>,
}

impl<T> Default for SparseGradient<T> {
    fn default() -> Self {
        SparseGradient {
            wrt_f: BTreeMap::new(),
            wrt_g: BTreeMap::new(),
        }
    }
}

impl<T: Scalar> SparseGradient<T> {
    /// Routes `amount` to the sample behind `source`. `swapped` marks the
    /// `(g, f)` orientation, whose first argument is the caller's `g`.
    fn add(&mut self, source: GradSource, amount: T, swapped: bool) {
        let slot = match (source, swapped) {
            (GradSource::Baseline, _) => return,
            (GradSource::F(i), false) | (GradSource::G(i), true) => self.wrt_f.entry(i),
            (GradSource::G(i), false) | (GradSource::F(i), true) => self.wrt_g.entry(i),
        };
        let slot = slot.or_insert_with(T::zero);
        *slot = *slot + amount;
    }

    fn prune(&mut self) {
        self.wrt_f.retain(|_, v| *v != T::zero());
        self.wrt_g.retain(|_, v| *v != T::zero());
    }

    pub fn is_empty(&self) -> bool {
        self.wrt_f.is_empty() && self.wrt_g.is_empty()
    }
}

/// Divergence of two graph functions.
pub fn sftd_graph<T: Scalar>(
    f: &GraphField<T>,
    g: &GraphField<T>,
    config: &SftdConfig,
) -> Result<SftdResult<T>> {
    Ok(run(config, |swapped, top| {
        let (a, b) = if swapped { (g, f) } else { (f, g) };
        f_cross_barcode_graph(a, b, top)
    })?
    .0)
}

/// Divergence of two lattice functions.
pub fn sftd_field<T: Scalar>(
    f: &ScalarField<T>,
    g: &ScalarField<T>,
    config: &SftdConfig,
) -> Result<SftdResult<T>> {
    Ok(run(config, |swapped, top| {
        let (a, b) = if swapped { (g, f) } else { (f, g) };
        f_cross_barcode_field(a, b, top)
    })?
    .0)
}

/// Divergence plus a subgradient with respect to both inputs.
pub fn sftd_gradient_graph<T: Scalar>(
    f: &GraphField<T>,
    g: &GraphField<T>,
    config: &SftdConfig,
) -> Result<(SftdResult<T>, SparseGradient<T>)> {
    run(config, |swapped, top| {
        let (a, b) = if swapped { (g, f) } else { (f, g) };
        f_cross_barcode_graph(a, b, top)
    })
}

/// Divergence plus a subgradient with respect to both inputs.
pub fn sftd_gradient_field<T: Scalar>(
    f: &ScalarField<T>,
    g: &ScalarField<T>,
    config: &SftdConfig,
) -> Result<(SftdResult<T>, SparseGradient<T>)> {
    run(config, |swapped, top| {
        let (a, b) = if swapped { (g, f) } else { (f, g) };
        f_cross_barcode_field(a, b, top)
    })
}

fn run<T: Scalar>(
    config: &SftdConfig,
    compute: impl Fn(bool, usize) -> Result<CrossBars<T>>,
) -> Result<(SftdResult<T>, SparseGradient<T>)> {
    let (degrees, p) = config.validated()?;
    let top = *degrees.last().unwrap();
    let pe = T::from_f64(p).expect("exponent fits the scalar type");
    let weight = if config.symmetric {
        T::from_f64(0.5).expect("small constant")
    } else {
        T::one()
    };
    let orientations: &[bool] = if config.symmetric {
        &[false, true]
    } else {
        &[false]
    };

    let mut per: BTreeMap<usize, T> = degrees.iter().map(|&k| (k, T::zero())).collect();
    let mut grad = SparseGradient::default();
    for &swapped in orientations {
        let cross = compute(swapped, top)?;
        for (bar, &(birth_src, death_src)) in cross.barcode().finite().iter().zip(cross.sources()) {
            let Some(slot) = per.get_mut(&bar.degree) else {
                continue;
            };
            let len = bar.death - bar.birth;
            *slot = *slot + weight * len.powf(pe);
            let coeff = weight * pe * len.powf(pe - T::one());
            grad.add(death_src, coeff, swapped);
            grad.add(birth_src, -coeff, swapped);
        }
    }
    grad.prune();
    let total = per.values().fold(T::zero(), |acc, &v| acc + v);
    Ok((
        SftdResult {
            per_degree: per,
            total,
        },
        grad,
    ))
}
