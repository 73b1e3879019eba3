//! On-disk formats: a strict npy subset and small csv layouts.
//!
//! All files carry 64-bit floats. The npy reader/writer supports exactly
//! version 1.0 headers with dtype `<f8` in C order; anything else is rejected
//! with a message naming the offending element. The csv field layout is a
//! `shape,d1,d2,...` header line followed by one semicolon-separated line per
//! row of the last axis. Graphs are `i,j` edge lines; vertex values are one
//! decimal per line.

use crate::{Error, GraphField, Result, ScalarField};
use std::fs;
use std::io::Write;
use std::path::Path;

const NPY_MAGIC: &[u8; 6] = b"\x93NUMPY";

/// Loads a field from `.npy` or `.csv`, dispatching on the file extension.
pub fn load_field(path: &Path) -> Result<ScalarField<f64>> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("npy") => load_field_npy(path),
        Some("csv") => load_field_csv(path),
        _ => Err(Error::format(
            path.display().to_string(),
            "unsupported field extension (expected .npy or .csv)",
        )),
    }
}

/// Saves a field as `.npy` or `.csv`, dispatching on the file extension.
pub fn save_field(path: &Path, field: &ScalarField<f64>) -> Result<()> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("npy") => save_field_npy(path, field),
        Some("csv") => save_field_csv(path, field),
        _ => Err(Error::format(
            path.display().to_string(),
            "unsupported field extension (expected .npy or .csv)",
        )),
    }
}

/// Reads a version 1.0 npy file holding a C-order `<f8` array.
pub fn load_field_npy(path: &Path) -> Result<ScalarField<f64>> {
    let name = path.display().to_string();
    let bytes = fs::read(path)?;
    let fail = |reason: &str| Error::format(&name, reason);

    if bytes.len() < 10 || &bytes[..6] != NPY_MAGIC {
        return Err(fail("missing npy magic"));
    }
    let (major, minor) = (bytes[6], bytes[7]);
    if (major, minor) != (1, 0) {
        return Err(fail(&format!(
            "unsupported npy version {major}.{minor} (only 1.0)"
        )));
    }
    let header_len = u16::from_le_bytes([bytes[8], bytes[9]]) as usize;
    let data_start = 10 + header_len;
    if bytes.len() < data_start {
        return Err(fail("truncated npy header"));
    }
    let header = std::str::from_utf8(&bytes[10..data_start])
        .map_err(|_| fail("npy header is not valid UTF-8"))?;

    let descr = dict_value(header, "descr").ok_or_else(|| fail("npy header lacks 'descr'"))?;
    let descr = descr.trim_matches(|c| c == '\'' || c == '"');
    if descr != "<f8" {
        return Err(fail(&format!("dtype {descr:?} unsupported (only '<f8')")));
    }
    let fortran = dict_value(header, "fortran_order")
        .ok_or_else(|| fail("npy header lacks 'fortran_order'"))?;
    match fortran {
        "False" => {}
        "True" => return Err(fail("Fortran-order arrays are unsupported (C order only)")),
        other => return Err(fail(&format!("bad fortran_order value {other:?}"))),
    }
    let shape_str = dict_value(header, "shape").ok_or_else(|| fail("npy header lacks 'shape'"))?;
    let shape = parse_shape_tuple(shape_str).ok_or_else(|| fail("malformed shape tuple"))?;
    if shape.is_empty() {
        return Err(fail("zero-dimensional arrays are unsupported"));
    }

    let count: usize = shape.iter().product();
    let data = &bytes[data_start..];
    if data.len() != count * 8 {
        return Err(fail(&format!(
            "payload holds {} bytes but shape implies {}",
            data.len(),
            count * 8
        )));
    }
    let mut values = Vec::with_capacity(count);
    for chunk in data.chunks_exact(8) {
        values.push(f64::from_le_bytes(chunk.try_into().unwrap()));
    }
    if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
        return Err(fail(&format!("non-finite value at linear index {bad}")));
    }
    ScalarField::new(shape, values)
}

/// Writes a version 1.0 npy file (C order, `<f8`).
pub fn save_field_npy(path: &Path, field: &ScalarField<f64>) -> Result<()> {
    let shape_str = match field.shape() {
        [d] => format!("({d},)"),
        dims => format!(
            "({})",
            dims.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    };
    let mut header = format!("{{'descr': '<f8', 'fortran_order': False, 'shape': {shape_str}, }}");
    // Pad with spaces so the data section starts on a 64-byte boundary.
    let unpadded = 10 + header.len() + 1;
    header.extend(std::iter::repeat_n(' ', (64 - unpadded % 64) % 64));
    header.push('\n');

    let mut out = fs::File::create(path)?;
    out.write_all(NPY_MAGIC)?;
    out.write_all(&[1, 0])?;
    out.write_all(&(header.len() as u16).to_le_bytes())?;
    out.write_all(header.as_bytes())?;
    for v in field.values() {
        out.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Reads the csv field layout.
pub fn load_field_csv(path: &Path) -> Result<ScalarField<f64>> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::format(&name, "empty file"))?;
    let mut parts = header.split(',');
    if parts.next() != Some("shape") {
        return Err(Error::format(&name, "first line must start with 'shape'"));
    }
    let shape: Vec<usize> = parts
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::format(&name, "malformed shape header"))?;
    if shape.is_empty() {
        return Err(Error::format(&name, "shape header lists no extents"));
    }

    let row_len = *shape.last().unwrap();
    let rows: usize = shape[..shape.len() - 1].iter().product();
    let mut values = Vec::with_capacity(rows * row_len);
    let mut seen = 0usize;
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        seen += 1;
        let cells: Vec<&str> = line.split(';').collect();
        if cells.len() != row_len {
            return Err(Error::format(
                &name,
                format!("row {seen} has {} values, expected {row_len}", cells.len()),
            ));
        }
        for cell in cells {
            let v: f64 = cell.trim().parse().map_err(|_| {
                Error::format(&name, format!("unparseable value {:?} in row {seen}", cell))
            })?;
            values.push(v);
        }
    }
    if seen != rows {
        return Err(Error::format(
            &name,
            format!("found {seen} rows, shape implies {rows}"),
        ));
    }
    if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::format(
            &name,
            format!("non-finite value at linear index {bad}"),
        ));
    }
    ScalarField::new(shape, values)
}

/// Writes the csv field layout.
pub fn save_field_csv(path: &Path, field: &ScalarField<f64>) -> Result<()> {
    let mut text = String::from("shape");
    for d in field.shape() {
        text.push_str(&format!(",{d}"));
    }
    text.push('\n');
    let row_len = *field.shape().last().unwrap();
    for row in field.values().chunks(row_len) {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        text.push_str(&cells.join(";"));
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

/// Reads `i,j` edge lines. The vertex count is one past the largest endpoint
/// unless a larger count is supplied.
pub fn load_edges(
    path: &Path,
    vertex_count: Option<usize>,
) -> Result<(usize, Vec<(usize, usize)>)> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path)?;
    let mut edges = Vec::new();
    let mut max_vertex = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let parse = |part: Option<&str>| -> Result<usize> {
            part.map(str::trim)
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| {
                    Error::format(&name, format!("malformed edge on line {}", lineno + 1))
                })
        };
        let i = parse(parts.next())?;
        let j = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::format(
                &name,
                format!("trailing fields on line {}", lineno + 1),
            ));
        }
        max_vertex = max_vertex.max(i).max(j);
        edges.push((i, j));
    }
    let implied = if edges.is_empty() { 0 } else { max_vertex + 1 };
    Ok((vertex_count.unwrap_or(implied).max(implied), edges))
}

/// Writes `i,j` edge lines.
pub fn save_edges(path: &Path, edges: &[(u32, u32)]) -> Result<()> {
    let mut text = String::new();
    for &(i, j) in edges {
        text.push_str(&format!("{i},{j}\n"));
    }
    fs::write(path, text)?;
    Ok(())
}

/// Reads one decimal value per line.
pub fn load_values(path: &Path) -> Result<Vec<f64>> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v: f64 = line.trim().parse().map_err(|_| {
            Error::format(&name, format!("unparseable value on line {}", lineno + 1))
        })?;
        values.push(v);
    }
    Ok(values)
}

/// Writes one decimal value per line.
pub fn save_values(path: &Path, values: &[f64]) -> Result<()> {
    let mut text = String::new();
    for v in values {
        text.push_str(&format!("{v}\n"));
    }
    fs::write(path, text)?;
    Ok(())
}

/// Loads a graph function from an edge csv and a values csv.
pub fn load_graph_field(edges_path: &Path, values_path: &Path) -> Result<GraphField<f64>> {
    let values = load_values(values_path)?;
    let (n, edges) = load_edges(edges_path, Some(values.len()))?;
    if n > values.len() {
        return Err(Error::format(
            edges_path.display().to_string(),
            format!(
                "edges reference vertex {} but only {} values given",
                n - 1,
                values.len()
            ),
        ));
    }
    GraphField::new(values.len(), &edges, values)
}

/// Extracts the value slice for `key` from a one-line python dict literal.
fn dict_value<'a>(header: &'a str, key: &str) -> Option<&'a str> {
    for quote in ['\'', '"'] {
        let pattern = format!("{quote}{key}{quote}");
        if let Some(at) = header.find(&pattern) {
            let rest = header[at + pattern.len()..].trim_start();
            let rest = rest.strip_prefix(':')?.trim_start();
            let end = match rest.as_bytes().first()? {
                b'(' => rest.find(')')? + 1,
                b'\'' | b'"' => {
                    let q = rest.as_bytes()[0] as char;
                    rest[1..].find(q)? + 2
                }
                _ => rest.find([',', '}'])?,
            };
            return Some(rest[..end].trim());
        }
    }
    None
}

/// Parses `(3,)`, `(2, 4)`, and friends.
fn parse_shape_tuple(s: &str) -> Option<Vec<usize>> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let mut out = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(part.parse().ok()?);
    }
    Some(out)
}
