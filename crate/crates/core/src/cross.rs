//! Comparison filtrations for two functions on one domain.
//!
//! Both constructions enlarge the domain so that sublevel persistence of the
//! enlarged filtration records topological features of the pointwise minimum
//! `min(f, g)` that the sublevel sets of `f` alone do not account for. Graphs
//! are doubled into a `(2n+1)`-vertex filtration matrix ([`DoubledMatrix`]):
//! a primed copy carrying the element-wise minimum of the two edge
//! filtrations, a plain copy carrying `f`, cross edges tying the copies
//! together, and a basepoint `O` joined to the plain copy. Lattices gain a
//! leading axis of size 3 ([`ExtendedField`]): a constant baseline layer, an
//! `f` layer, and a `min(f, g)` layer.
//!
//! The finite bars of the enlarged filtration form the cross-barcode of
//! `(f, g)`; the lone dim-0 essential bar (the whole construction is
//! connected from the global minimum onward) and any higher essential bars
//! are reported separately and excluded from divergence values. Every finite
//! bar carries, for each endpoint, a representative vertex for localization
//! and a [`GradSource`] naming the input sample whose value the endpoint
//! copies, which is what makes the divergence differentiable.

use crate::cubical::{attribute_cube, cubical_bars};
use crate::field::strides_of;
use crate::flag::{attaining_entry, attribute_simplex, flag_bars};
use crate::{
    global_min, Bar, Barcode, Error, FiltrationMatrix, GraphField, Result, Scalar, ScalarField,
};

/// The input sample a filtration value traces back to.
///
/// Endpoint values of cross-barcode bars are always verbatim copies of some
/// `f(i)` or `g(i)` (or of the constant baseline), so a subgradient of any
/// function of bar endpoints routes through these tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradSource {
    /// The baseline (basepoint `O` / layer 0), a copy of the global minimum
    /// of the inputs. The raw source maps keep this tag; cross-barcode
    /// assembly resolves it to the sample attaining the minimum so that
    /// routed subgradients match true derivatives.
    Baseline,
    /// `f` at this original vertex / site (linear index).
    F(usize),
    /// `g` at this original vertex / site (linear index).
    G(usize),
}

/// Sample attaining `min(min f, min g)`, preferring `f` on ties and then the
/// smaller index — the value every baseline vertex copies.
fn argmin_source<T: Scalar>(f: &[T], g: &[T]) -> GradSource {
    let mut best = GradSource::F(0);
    let mut val = f[0];
    for (i, &v) in f.iter().enumerate().skip(1) {
        if v < val {
            val = v;
            best = GradSource::F(i);
        }
    }
    for (i, &v) in g.iter().enumerate() {
        if v < val {
            val = v;
            best = GradSource::G(i);
        }
    }
    best
}

/// The doubled-graph filtration matrix comparing `f` against `g`.
///
/// Indices `[0, n)` are the primed vertices `A'_i` (element-wise minimum
/// filtration), `[n, 2n)` are the plain vertices `A_i` (filtration of `f`),
/// and `2n` is the basepoint `O`.
#[derive(Debug, Clone)]
pub struct DoubledMatrix<T> {
    matrix: FiltrationMatrix<T>,
    n: usize,
    f: Vec<T>,
    g: Vec<T>,
}

/// Assembles the doubled matrix for two functions on one graph.
///
/// With `F`/`G` the lower-star edge filtration matrices of `f`/`g`, the
/// blocks are: the element-wise `min(F, G)` on the primed copy, `F` on the
/// plain copy, the upper triangle of `F` (diagonal kept, so every pair
/// `(A_i, A'_i)` is an edge at value `f(i)`) between the copies, `f`'s values
/// between `O` and the plain copy, and the global minimum on `O` itself.
pub fn build_doubled_matrix<T: Scalar>(
    f: &GraphField<T>,
    g: &GraphField<T>,
) -> Result<DoubledMatrix<T>> {
    if !f.same_graph(g) {
        return Err(Error::DomainMismatch("functions must live on one graph"));
    }
    let n = f.vertex_count();
    let fm = FiltrationMatrix::from_vertex_function(f);
    let gm = FiltrationMatrix::from_vertex_function(g);
    let base = global_min(f.values(), g.values())?;

    let size = 2 * n + 1;
    let mut entries = vec![T::infinity(); size * size];
    {
        let mut put = |i: usize, j: usize, v: T| {
            entries[i * size + j] = v;
            entries[j * size + i] = v;
        };
        for i in 0..n {
            for j in i..n {
                let fe = fm.get(i, j);
                let ge = gm.get(i, j);
                if fe.is_finite() {
                    put(i, j, fe.min(ge));
                    put(n + i, n + j, fe);
                    // Upper triangle of F between the copies: A_i -- A'_j.
                    put(n + i, j, fe);
                }
            }
            put(2 * n, n + i, fm.vertex_value(i));
        }
        put(2 * n, 2 * n, base);
    }
    let matrix = FiltrationMatrix::new(size, entries)?;
    Ok(DoubledMatrix {
        matrix,
        n,
        f: f.values().to_vec(),
        g: g.values().to_vec(),
    })
}

impl<T: Scalar> DoubledMatrix<T> {
    pub fn matrix(&self) -> &FiltrationMatrix<T> {
        &self.matrix
    }

    /// Vertex count of the original graph (`matrix` has `2n + 1`).
    pub fn original_count(&self) -> usize {
        self.n
    }

    /// Original vertex behind a doubled index; `None` for the basepoint `O`.
    pub fn original_vertex(&self, idx: usize) -> Option<usize> {
        if idx == 2 * self.n {
            None
        } else if idx >= self.n {
            Some(idx - self.n)
        } else {
            Some(idx)
        }
    }

    /// Input sample the matrix entry `(u, v)` copies. Off-diagonal entries
    /// are maxima of two samples and resolve to the attaining vertex (ties to
    /// the smaller index); minima over the two functions resolve to `f` on
    /// ties.
    fn entry_source(&self, u: usize, v: usize) -> GradSource {
        let n = self.n;
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        let argmax = |vals: &[T], i: usize, j: usize| {
            if vals[i] >= vals[j] {
                i.min(j)
            } else {
                i.max(j)
            }
        };
        if b == 2 * n {
            return match a {
                o if o == 2 * n => GradSource::Baseline,
                i if i >= n => GradSource::F(i - n),
                _ => unreachable!("O never touches the primed copy"),
            };
        }
        if b < n {
            // Primed block: element-wise minimum of the two filtrations.
            let (ef, eg) = if a == b {
                (self.f[a], self.g[a])
            } else {
                (self.f[a].max(self.f[b]), self.g[a].max(self.g[b]))
            };
            return if ef <= eg {
                GradSource::F(argmax(&self.f, a, b))
            } else {
                GradSource::G(argmax(&self.g, a, b))
            };
        }
        // Plain block or a cross edge: either way a copy of F's entry.
        let i = if a >= n { a - n } else { a };
        let j = b - n;
        if i == j {
            GradSource::F(i)
        } else {
            GradSource::F(argmax(&self.f, i.min(j), i.max(j)))
        }
    }

    /// Source of the entry attaining `verts`' filtration value.
    fn simplex_source(&self, verts: &[u32]) -> GradSource {
        let (u, v) = attaining_entry(&self.matrix, verts);
        self.entry_source(u, v)
    }
}

/// The extended lattice comparing `f` against `g`: shape `(3, d_1, ..,
/// d_n)` with a constant baseline layer 0, `f` as layer 1, and the pointwise
/// `min(f, g)` as layer 2.
#[derive(Debug, Clone)]
pub struct ExtendedField<T> {
    field: ScalarField<T>,
    layer_len: usize,
}

/// Builds the extended field; errors if the shapes differ.
pub fn build_extended_field<T: Scalar>(
    f: &ScalarField<T>,
    g: &ScalarField<T>,
) -> Result<ExtendedField<T>> {
    if !f.same_shape(g) {
        return Err(Error::DomainMismatch("fields must share one shape"));
    }
    let base = global_min(f.values(), g.values())?;
    let layer_len = f.len();
    let mut values = Vec::with_capacity(3 * layer_len);
    values.extend(std::iter::repeat_n(base, layer_len));
    values.extend_from_slice(f.values());
    values.extend(f.values().iter().zip(g.values()).map(|(&a, &b)| a.min(b)));
    let mut shape = Vec::with_capacity(f.ndim() + 1);
    shape.push(3);
    shape.extend_from_slice(f.shape());
    Ok(ExtendedField {
        field: ScalarField::new(shape, values)?,
        layer_len,
    })
}

impl<T: Scalar> ExtendedField<T> {
    pub fn field(&self) -> &ScalarField<T> {
        &self.field
    }

    /// Input sample behind the extended vertex with linear index `idx`.
    /// Layer-2 ties between `f` and `g` resolve to `f`.
    pub fn source_of(&self, idx: usize) -> GradSource {
        let at = idx % self.layer_len;
        match idx / self.layer_len {
            0 => GradSource::Baseline,
            1 => GradSource::F(at),
            _ => {
                let vals = self.field.values();
                if vals[2 * self.layer_len + at] == vals[self.layer_len + at] {
                    GradSource::F(at)
                } else {
                    GradSource::G(at)
                }
            }
        }
    }
}

/// A cross-barcode together with per-bar gradient routing and enough domain
/// information to localize bars in the original domain.
#[derive(Debug, Clone)]
pub struct CrossBars<T> {
    barcode: Barcode<T>,
    sources: Vec<(GradSource, GradSource)>,
    domain: Domain,
}

#[derive(Debug, Clone)]
enum Domain {
    Graph {
        n: usize,
    },
    /// Original lattice shape, without the layer axis.
    Lattice {
        shape: Vec<usize>,
    },
}

/// A finite bar pulled back to the original domain.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizedBar<T> {
    pub bar: Bar<T>,
    /// Coordinates of the birth event (single-element for graphs); `None`
    /// when the event sits on the basepoint `O`, which has no counterpart.
    pub birth_site: Option<Vec<usize>>,
    pub death_site: Option<Vec<usize>>,
}

impl<T> LocalizedBar<T> {
    /// Marker colors for rendered birth/death events.
    pub const BIRTH_COLOR: &'static str = "orange";
    pub const DEATH_COLOR: &'static str = "red";
}

impl<T: Scalar> CrossBars<T> {
    /// Finite bars are the cross-barcode proper; essential bars ride along
    /// for inspection but never enter divergence values.
    pub fn barcode(&self) -> &Barcode<T> {
        &self.barcode
    }

    /// `(birth, death)` gradient routing, aligned with `barcode().finite()`.
    pub fn sources(&self) -> &[(GradSource, GradSource)] {
        &self.sources
    }

    /// Finite bars mapped back to the original domain: the layer coordinate
    /// is dropped (lattices) or the copy index folded (graphs).
    pub fn localize(&self) -> Vec<LocalizedBar<T>> {
        self.barcode
            .finite()
            .iter()
            .map(|bar| LocalizedBar {
                bar: bar.clone(),
                birth_site: self.site_of(bar.birth_vertex),
                death_site: bar.death_vertex.and_then(|v| self.site_of(v)),
            })
            .collect()
    }

    /// Domain site behind a doubled-graph / extended-lattice vertex index:
    /// graph copies fold onto their original vertex, lattice indices drop the
    /// layer coordinate. `None` for the graph basepoint, which has no
    /// counterpart in the original domain.
    pub fn site_of(&self, vertex: usize) -> Option<Vec<usize>> {
        match &self.domain {
            Domain::Graph { n } => {
                if vertex == 2 * n {
                    None
                } else if vertex >= *n {
                    Some(vec![vertex - n])
                } else {
                    Some(vec![vertex])
                }
            }
            Domain::Lattice { shape } => {
                let layer_len: usize = shape.iter().product();
                let mut at = vertex % layer_len;
                let mut out = vec![0usize; shape.len()];
                for (c, s) in out.iter_mut().zip(strides_of(shape)) {
                    *c = at / s;
                    at %= s;
                }
                Some(out)
            }
        }
    }
}

/// Cross-barcode of `(f, g)` on a shared graph, degrees `0..=max_degree`.
pub fn f_cross_barcode_graph<T: Scalar>(
    f: &GraphField<T>,
    g: &GraphField<T>,
    max_degree: usize,
) -> Result<CrossBars<T>> {
    let doubled = build_doubled_matrix(f, g)?;
    let raw = flag_bars(doubled.matrix(), max_degree)?;
    let base = argmin_source(f.values(), g.values());
    let resolve = |s: GradSource| if s == GradSource::Baseline { base } else { s };
    let finite = raw
        .finite
        .iter()
        .map(|b| {
            (
                Bar {
                    degree: b.degree,
                    birth: b.birth,
                    death: b.death,
                    birth_vertex: attribute_simplex(doubled.matrix(), &b.birth_cell),
                    death_vertex: Some(attribute_simplex(doubled.matrix(), &b.death_cell)),
                },
                (
                    resolve(doubled.simplex_source(&b.birth_cell)),
                    resolve(doubled.simplex_source(&b.death_cell)),
                ),
            )
        })
        .collect();
    let essential = raw
        .essential
        .iter()
        .map(|b| Bar {
            degree: b.degree,
            birth: b.birth,
            death: T::infinity(),
            birth_vertex: attribute_simplex(doubled.matrix(), &b.birth_cell),
            death_vertex: None,
        })
        .collect();
    Ok(assemble(finite, essential, Domain::Graph { n: doubled.n }))
}

/// Cross-barcode of `(f, g)` on a shared lattice, degrees `0..=max_degree`.
pub fn f_cross_barcode_field<T: Scalar>(
    f: &ScalarField<T>,
    g: &ScalarField<T>,
    max_degree: usize,
) -> Result<CrossBars<T>> {
    let extended = build_extended_field(f, g)?;
    let raw = cubical_bars(extended.field(), max_degree)?;
    let strides = extended.field().strides();
    let values = extended.field().values();
    let base = argmin_source(f.values(), g.values());
    let resolve = |s: GradSource| if s == GradSource::Baseline { base } else { s };
    let finite = raw
        .finite
        .iter()
        .map(|b| {
            let birth_vertex = attribute_cube(values, &strides, b.birth_cell);
            let death_vertex = attribute_cube(values, &strides, b.death_cell);
            (
                Bar {
                    degree: b.degree,
                    birth: b.birth,
                    death: b.death,
                    birth_vertex,
                    death_vertex: Some(death_vertex),
                },
                (
                    resolve(extended.source_of(birth_vertex)),
                    resolve(extended.source_of(death_vertex)),
                ),
            )
        })
        .collect();
    let essential = raw
        .essential
        .iter()
        .map(|b| Bar {
            degree: b.degree,
            birth: b.birth,
            death: T::infinity(),
            birth_vertex: attribute_cube(values, &strides, b.birth_cell),
            death_vertex: None,
        })
        .collect();
    Ok(assemble(
        finite,
        essential,
        Domain::Lattice {
            shape: f.shape().to_vec(),
        },
    ))
}

/// Sorts finite bars exactly the way [`Barcode::new`] will, so the routing
/// list stays aligned with `barcode.finite()`.
fn assemble<T: Scalar>(
    mut finite: Vec<(Bar<T>, (GradSource, GradSource))>,
    essential: Vec<Bar<T>>,
    domain: Domain,
) -> CrossBars<T> {
    finite.sort_by(|a, b| a.0.sort_key(&b.0));
    let sources = finite.iter().map(|x| x.1).collect();
    let barcode = Barcode::new(finite.into_iter().map(|x| x.0).collect(), essential);
    CrossBars {
        barcode,
        sources,
        domain,
    }
}
