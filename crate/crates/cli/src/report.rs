//! JSON and CSV report assembly.
//!
//! Barcode JSON schema (shared by `compare` and `barcode`):
//!
//! ```json
//! {
//!   "config":    { ...flag echo... },
//!   "dims":      { "0": [[birth, death, [birth site], [death site]], ...], ... },
//!   "essential": { "0": [[birth, "inf", [birth site], null], ...], ... },
//!   "sftd":      { "fg": {...}, "gf": {...}, "sym": {...} },   // compare only
//!   "timing_ms": 12
//! }
//! ```
//!
//! Sites are coordinate arrays in the original domain (one element for graph
//! vertices); `null` marks events on the comparison basepoint, which has no
//! domain counterpart. All maps are ordered, and floats print in shortest
//! round-trip form, so reports are byte-stable across runs.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use sftd_core::cross::LocalizedBar;
use sftd_core::divergence::SftdResult;
use sftd_core::{Barcode64, Diagram64};

/// Splits a barcode into the report's `dims` / `essential` sections. Every
/// requested degree gets a key (possibly an empty list); `site_of` maps a
/// bar's vertex attribution to domain coordinates.
pub fn barcode_sections(
    barcode: &Barcode64,
    degrees: &[usize],
    mut site_of: impl FnMut(usize) -> Option<Vec<usize>>,
) -> (BTreeMap<String, Vec<Value>>, BTreeMap<String, Vec<Value>>) {
    let mut dims: BTreeMap<String, Vec<Value>> = BTreeMap::new();
    let mut essential: BTreeMap<String, Vec<Value>> = BTreeMap::new();
    for &degree in degrees {
        dims.insert(degree.to_string(), Vec::new());
        essential.insert(degree.to_string(), Vec::new());
    }
    for bar in barcode.finite() {
        if let Some(list) = dims.get_mut(&bar.degree.to_string()) {
            let birth_site = site_value(site_of(bar.birth_vertex));
            let death_site = site_value(bar.death_vertex.and_then(&mut site_of));
            list.push(json!([bar.birth, bar.death, birth_site, death_site]));
        }
    }
    for bar in barcode.essential() {
        if let Some(list) = essential.get_mut(&bar.degree.to_string()) {
            let birth_site = site_value(site_of(bar.birth_vertex));
            list.push(json!([bar.birth, "inf", birth_site, Value::Null]));
        }
    }
    (dims, essential)
}

fn site_value(site: Option<Vec<usize>>) -> Value {
    match site {
        None => Value::Null,
        Some(coords) => json!(coords),
    }
}

/// Divergence values of one orientation.
#[derive(Serialize)]
pub struct Orientation {
    pub per_degree: BTreeMap<String, f64>,
    pub total: f64,
}

impl Orientation {
    fn from_result(result: &SftdResult<f64>) -> Self {
        Orientation {
            per_degree: result
                .per_degree
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
            total: result.total,
        }
    }
}

/// Both orientations plus their symmetrization.
#[derive(Serialize)]
pub struct SftdSection {
    pub fg: Orientation,
    pub gf: Orientation,
    pub sym: Orientation,
}

pub fn sftd_section(fg: &SftdResult<f64>, gf: &SftdResult<f64>) -> SftdSection {
    let mut sym = BTreeMap::new();
    for (key, &a) in &fg.per_degree {
        let b = gf.per_degree.get(key).copied().unwrap_or(0.0);
        sym.insert(key.to_string(), 0.5 * (a + b));
    }
    SftdSection {
        fg: Orientation::from_result(fg),
        gf: Orientation::from_result(gf),
        sym: Orientation {
            total: sym.values().sum(),
            per_degree: sym,
        },
    }
}

/// Full `compare` output.
#[derive(Serialize)]
pub struct CompareReport {
    pub config: Value,
    pub dims: BTreeMap<String, Vec<Value>>,
    pub essential: BTreeMap<String, Vec<Value>>,
    pub sftd: SftdSection,
    pub timing_ms: u64,
}

/// Full `barcode` output.
#[derive(Serialize)]
pub struct BarcodeReport {
    pub config: Value,
    pub dims: BTreeMap<String, Vec<Value>>,
    pub essential: BTreeMap<String, Vec<Value>>,
    pub timing_ms: u64,
}

/// Serializes pretty JSON with a trailing newline.
pub fn write_json(path: &Path, report: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Localization table: `degree,event,birth_or_death_value,c1,...,cn` with one
/// row per located finite-bar endpoint. Events on the basepoint are skipped.
pub fn points_csv(localized: &[LocalizedBar<f64>], ndim: usize) -> String {
    let mut text = String::from("degree,event,birth_or_death_value");
    for axis in 1..=ndim {
        text.push_str(&format!(",c{axis}"));
    }
    text.push('\n');
    let mut row = |degree: usize, event: &str, value: f64, site: &Option<Vec<usize>>| {
        if let Some(coords) = site {
            text.push_str(&format!("{degree},{event},{value}"));
            for c in coords {
                text.push_str(&format!(",{c}"));
            }
            text.push('\n');
        }
    };
    for bar in localized {
        row(bar.bar.degree, "birth", bar.bar.birth, &bar.birth_site);
        row(bar.bar.degree, "death", bar.bar.death, &bar.death_site);
    }
    text
}

/// Reads the finite intervals of one degree back out of a barcode report.
/// A missing degree key yields the empty diagram.
pub fn diagram_from_report(path: &Path, degree: usize) -> Result<Diagram64> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text)
        .with_context(|| format!("{} is not valid JSON", path.display()))?;
    let Some(list) = value.get("dims").and_then(|d| d.get(degree.to_string())) else {
        return Ok(Diagram64::new(Vec::new())?);
    };
    let entries = list
        .as_array()
        .with_context(|| format!("{}: dims.{degree} is not a list", path.display()))?;
    let mut points = Vec::with_capacity(entries.len());
    for (at, entry) in entries.iter().enumerate() {
        let pair = entry
            .as_array()
            .and_then(|bar| Some((bar.first()?.as_f64()?, bar.get(1)?.as_f64()?)));
        let (birth, death) = pair.with_context(|| {
            format!(
                "{}: dims.{degree}[{at}] is not a [birth, death, ...] entry",
                path.display()
            )
        })?;
        points.push((birth, death));
    }
    Ok(Diagram64::new(points)?)
}
