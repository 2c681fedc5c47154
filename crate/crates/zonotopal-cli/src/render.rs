//! JSON rendering of library values. Output is deterministic: object keys
//! are sorted by serde_json's map, rationals and big integers print as
//! decimal strings, and term lists follow the library's graded order.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use zonotopal_core::hilbert::{HilbSeries, TuttePoly, ZPoly};
use zonotopal_core::matroid::mask_members;
use zonotopal_core::scalar::format_q;
use zonotopal_core::{Error, GradedBasis, MPoly, Mask, Result, UpperSet, VarSpace, VectorConfig};

/// Column indices of a mask, ascending.
pub fn mask_indices(mask: Mask) -> Vec<usize> {
    mask_members(mask).collect()
}

/// Human label for a column subset, 1-based like `x1 x3`; empty subsets
/// print as `{}`.
pub fn mask_label(mask: Mask) -> String {
    let idx = mask_indices(mask);
    if idx.is_empty() {
        return "{}".into();
    }
    idx.iter().map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join(" ")
}

/// A column subset as `{"idx0": [...], "label": "..."}`.
pub fn mask_json(mask: Mask) -> Value {
    json!({ "idx0": mask_indices(mask), "label": mask_label(mask) })
}

/// Hilbert series as its coefficient array (empty for the zero series).
pub fn series_json(h: &HilbSeries) -> Value {
    json!(h.coeffs())
}

/// Integer polynomial as its coefficient strings, constant term first.
pub fn zpoly_json(p: &ZPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

/// Two-variable polynomial as `[coefficient, [i, j]]` terms, highest degree
/// first as its display order does.
pub fn tutte_json(t: &TuttePoly) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .into_iter()
        .map(|((i, j), c)| json!([c.to_string(), [i, j]]))
        .collect();
    json!({ "terms": terms, "display": t.to_string() })
}

/// Polynomial as a sparse term list `[coefficient, exponents]` plus which
/// variable space it lives in.
pub fn poly_json(f: &MPoly) -> Value {
    let space = match f.space() {
        VarSpace::Point => "point",
        VarSpace::Normal => "normal",
    };
    let terms: Vec<Value> = f.terms().map(|(exps, c)| json!([format_q(c), exps])).collect();
    json!({ "space": space, "terms": terms })
}

/// Graded basis as dimensions plus the spanning polynomials per degree.
pub fn basis_json(b: &GradedBasis) -> Value {
    let mut per_degree: Vec<Vec<Value>> = b.dims().iter().map(|_| Vec::new()).collect();
    for p in b.polys() {
        let d = p.degree().expect("basis polynomials are nonzero");
        per_degree[d].push(poly_json(&p));
    }
    let degrees: Vec<Value> = per_degree
        .into_iter()
        .enumerate()
        .map(|(d, polys)| json!({ "degree": d, "dim": polys.len(), "polys": polys }))
        .collect();
    json!({ "dims": b.dims(), "total": b.total_dim(), "degrees": degrees })
}

/// Upper set as its member flats, bottom-up in the lattice order.
pub fn upperset_json(j: &UpperSet, cfg: &VectorConfig) -> Value {
    let members: Vec<Value> = j
        .members()
        .map(|m| {
            let rank = cfg.rank_of(m);
            json!({ "idx0": mask_indices(m), "label": mask_label(m), "rank": rank })
        })
        .collect();
    json!({ "count": members.len(), "members": members })
}

/// Configuration summary: shape plus the column vectors as rational strings.
pub fn config_json(cfg: &VectorConfig) -> Value {
    let columns: Vec<Value> = (0..cfg.n())
        .map(|i| {
            let col: Vec<String> = cfg.col(i).iter().map(format_q).collect();
            json!(col)
        })
        .collect();
    json!({ "r": cfg.r(), "n": cfg.n(), "columns": columns })
}

/// Serializes a JSON document with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes a file atomically: a sibling temp file is renamed into place so a
/// crash never leaves a half-written output.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp_name = format!(".{name}.tmp");
    let tmp = match path.parent().filter(|p| !p.as_os_str().is_empty()) {
        Some(d) => d.join(&tmp_name),
        None => std::path::PathBuf::from(&tmp_name),
    };
    let io_err = |e: std::io::Error| Error::BadArgument(format!("cannot write {}: {e}", path.display()));
    let mut f = fs::File::create(&tmp).map_err(io_err)?;
    f.write_all(content.as_bytes()).map_err(io_err)?;
    f.sync_all().map_err(io_err)?;
    drop(f);
    fs::rename(&tmp, path).map_err(io_err)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use zonotopal_core::scalar::q_int;

    #[test]
    fn labels_and_terms_read_naturally() {
        assert_eq!(mask_label(0b101), "x1 x3");
        assert_eq!(mask_label(0), "{}");

        let f = MPoly::monomial(VarSpace::Point, vec![1, 2], q_int(3));
        let v = poly_json(&f);
        assert_eq!(v["space"], "point");
        assert_eq!(v["terms"], json!([["3", [1, 2]]]));

        let h = HilbSeries::from_dims(&[1, 2, 2]);
        assert_eq!(series_json(&h), json!([1, 2, 2]));
    }

    #[test]
    fn atomic_write_replaces_the_target() {
        let dir = std::env::temp_dir().join("zt-render-atomic");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.json");
        write_atomic(&path, "first\n").unwrap();
        write_atomic(&path, "second\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second\n");
        // No temp litter left behind.
        let litter: Vec<_> = std::fs::read_dir(&dir)
            .unwrap()
            .filter_map(|e| e.ok())
            .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
            .collect();
        assert!(litter.is_empty(), "temp files are renamed away");
    }
}
