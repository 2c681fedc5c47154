//! Parsers for the text formats the CLI accepts: rational matrices, graphs,
//! and upper-set strings.

use std::fs;
use std::path::Path;

use zonotopal_core::matroid::GraphInput;
use zonotopal_core::scalar::{parse_q, Q};
use zonotopal_core::{Error, Mask, Result, UpperSet, VectorConfig};

/// Reads a whole file, mapping IO failures onto `BadArgument`.
pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::BadArgument(format!("cannot read {}: {e}", path.display())))
}

/// Lines of a text input with blanks and `#` comments stripped.
fn payload_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a matrix of rationals, one row per line, whitespace-separated
/// entries like `2`, `-1`, or `3/4`. Columns are the configuration vectors.
pub fn parse_matrix(text: &str) -> Result<VectorConfig> {
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (lineno, line) in payload_lines(text) {
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            let v = parse_q(tok).ok_or_else(|| {
                Error::BadMatrix(format!("line {lineno}: cannot parse {tok:?} as a rational"))
            })?;
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::BadMatrix(format!(
                    "line {lineno}: expected {} entries, found {}",
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::BadMatrix("matrix input has no rows".into()));
    }
    VectorConfig::from_rows(rows)
}

/// Parses a graph file: first payload line is the vertex count, each further
/// line one edge `tail head` with 0-based vertex indices.
pub fn parse_graph(text: &str) -> Result<GraphInput> {
    let mut lines = payload_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::BadGraph("graph input is empty".into()))?;
    let num_vertices: usize = header
        .parse()
        .map_err(|_| Error::BadGraph(format!("line {lineno}: vertex count {header:?} is not a number")))?;
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let mut it = line.split_whitespace();
        let (t, h) = match (it.next(), it.next(), it.next()) {
            (Some(t), Some(h), None) => (t, h),
            _ => {
                return Err(Error::BadGraph(format!(
                    "line {lineno}: expected `tail head`, found {line:?}"
                )))
            }
        };
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::BadGraph(format!("line {lineno}: bad vertex index {s:?}")))
        };
        edges.push((parse(t)?, parse(h)?));
    }
    GraphInput::new(num_vertices, edges)
}

/// Parses a comma-separated list of 0-based column indices, checking bounds.
fn parse_indices(s: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let i: usize = tok
            .parse()
            .map_err(|_| Error::BadUpperSet(format!("bad column index {tok:?}")))?;
        if i >= n {
            return Err(Error::BadUpperSet(format!(
                "column index {i} out of range for {n} columns"
            )));
        }
        out.push(i);
    }
    Ok(out)
}

fn indices_to_mask(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

/// Parses `1,0,1` or compact `101` into a boolean vector of the given length.
fn parse_bools(s: &str, len: usize, what: &str) -> Result<Vec<bool>> {
    let bits: Vec<char> = if s.contains(',') {
        s.split(',').map(|t| t.trim().chars().next().unwrap_or(' ')).collect()
    } else {
        s.chars().collect()
    };
    let mut out = Vec::with_capacity(bits.len());
    for c in bits {
        match c {
            '0' => out.push(false),
            '1' => out.push(true),
            other => {
                return Err(Error::BadUpperSet(format!(
                    "{what} entries must be 0 or 1, found {other:?}"
                )))
            }
        }
    }
    if out.len() != len {
        return Err(Error::BadUpperSet(format!(
            "{what} has {} entries, expected {len}",
            out.len()
        )));
    }
    Ok(out)
}

/// Parses an upper-set string against a configuration.
///
/// Accepted forms:
/// - `central`: only the full flat.
/// - `full`: every flat.
/// - `above:I`: all flats containing the closure of columns `I` (e.g. `above:0,2`).
/// - `gens:I;J;...`: upward closure of several generator flats (e.g. `gens:0,2;1`).
/// - `mask:B`: flats whose covering hyperplanes are all marked by the 0/1
///   vector `B` over the hyperplane list (e.g. `mask:101` or `mask:1,0,1`).
/// - `@path`: JSON file with one of the keys `preset`, `above`, `generators`,
///   or `hyperplane_mask`.
pub fn parse_upperset(spec: &str, cfg: &VectorConfig) -> Result<UpperSet> {
    let j = parse_upperset_inner(spec.trim(), cfg)?;
    j.validate(cfg)?;
    Ok(j)
}

fn parse_upperset_inner(spec: &str, cfg: &VectorConfig) -> Result<UpperSet> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = read_text(Path::new(path))?;
        return parse_upperset_json(&text, cfg);
    }
    match spec {
        "central" => return Ok(UpperSet::central(cfg)),
        "full" => return Ok(UpperSet::full(cfg)),
        _ => {}
    }
    if let Some(rest) = spec.strip_prefix("above:") {
        let mask = indices_to_mask(&parse_indices(rest, cfg.n())?);
        return Ok(UpperSet::above(cfg, mask));
    }
    if let Some(rest) = spec.strip_prefix("gens:") {
        let mut gens = Vec::new();
        for group in rest.split(';') {
            gens.push(indices_to_mask(&parse_indices(group, cfg.n())?));
        }
        return Ok(UpperSet::from_generators(cfg, &gens));
    }
    if let Some(rest) = spec.strip_prefix("mask:") {
        let n_hyp = cfg.lattice().hyperplane_masks().len();
        let b = parse_bools(rest, n_hyp, "hyperplane mask")?;
        return UpperSet::from_hyperplane_mask(cfg, &b);
    }
    Err(Error::BadUpperSet(format!(
        "unrecognized upper-set spec {spec:?}; use central, full, above:I, gens:I;J, mask:B, or @file"
    )))
}

fn parse_upperset_json(text: &str, cfg: &VectorConfig) -> Result<UpperSet> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::BadUpperSet(format!("bad upper-set JSON: {e}")))?;
    if let Some(preset) = v.get("preset").and_then(|p| p.as_str()) {
        return match preset {
            "central" => Ok(UpperSet::central(cfg)),
            "full" => Ok(UpperSet::full(cfg)),
            other => Err(Error::BadUpperSet(format!("unknown preset {other:?}"))),
        };
    }
    let json_indices = |arr: &[serde_json::Value]| -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for x in arr {
            let i = x
                .as_u64()
                .ok_or_else(|| Error::BadUpperSet(format!("bad column index {x}")))?
                as usize;
            if i >= cfg.n() {
                return Err(Error::BadUpperSet(format!(
                    "column index {i} out of range for {} columns",
                    cfg.n()
                )));
            }
            out.push(i);
        }
        Ok(out)
    };
    if let Some(arr) = v.get("above").and_then(|a| a.as_array()) {
        return Ok(UpperSet::above(cfg, indices_to_mask(&json_indices(arr)?)));
    }
    if let Some(gens) = v.get("generators").and_then(|g| g.as_array()) {
        let mut masks = Vec::new();
        for g in gens {
            let arr = g
                .as_array()
                .ok_or_else(|| Error::BadUpperSet("generators must be arrays of indices".into()))?;
            masks.push(indices_to_mask(&json_indices(arr)?));
        }
        return Ok(UpperSet::from_generators(cfg, &masks));
    }
    if let Some(bits) = v.get("hyperplane_mask").and_then(|b| b.as_array()) {
        let n_hyp = cfg.lattice().hyperplane_masks().len();
        if bits.len() != n_hyp {
            return Err(Error::BadUpperSet(format!(
                "hyperplane mask has {} entries, expected {n_hyp}",
                bits.len()
            )));
        }
        let mut b = Vec::with_capacity(bits.len());
        for x in bits {
            match x.as_u64() {
                Some(0) => b.push(false),
                Some(1) => b.push(true),
                _ => {
                    return Err(Error::BadUpperSet(format!(
                        "hyperplane mask entries must be 0 or 1, found {x}"
                    )))
                }
            }
        }
        return UpperSet::from_hyperplane_mask(cfg, &b);
    }
    Err(Error::BadUpperSet(
        "upper-set JSON needs one of: preset, above, generators, hyperplane_mask".into(),
    ))
}
