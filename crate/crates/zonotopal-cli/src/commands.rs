//! One function per CLI subcommand, each producing the JSON result payload.

use serde_json::{json, Map, Value};

use zonotopal_core::activity::{gamma_set, semi_internal_bases, semi_internal_polys};
use zonotopal_core::hilbert::{
    chromatic_polynomial, count_nowhere_zero_flows, cox_semiexternal_hilb,
    cox_semiexternal_lifted, cox_semiinternal_hilb, cox_semiinternal_lifted, flow_polynomial,
    hilb_activity, hilb_kernel, hilb_recursive, hilb_subset, HilbSeries,
};
use zonotopal_core::ideal::{default_cap, i_generators, iprime_generators, verify_exact_sequence};
use zonotopal_core::matroid::{graph_to_config, mask_members, GraphInput, NormalSelector};
use zonotopal_core::{
    kernel_i, p_space, s_set, tutte, tutte_delcon, Error, Mask, Result, UpperSet, VectorConfig,
};

use crate::render::{
    basis_json, config_json, mask_json, poly_json, series_json, tutte_json, upperset_json,
    zpoly_json,
};

/// Lattice of flats with ranks, plus loops, coloops, and the basis count.
pub fn cmd_flats(cfg: &VectorConfig) -> Value {
    let lat = cfg.lattice();
    let hyps = lat.hyperplane_masks();
    let flats: Vec<Value> = lat
        .flats()
        .iter()
        .map(|f| {
            json!({
                "idx0": mask_members(f.mask).collect::<Vec<_>>(),
                "label": crate::render::mask_label(f.mask),
                "rank": f.rank,
                "is_hyperplane": hyps.contains(&f.mask),
            })
        })
        .collect();
    json!({
        "config": config_json(cfg),
        "flats": flats,
        "hyperplanes": hyps.iter().copied().map(mask_json).collect::<Vec<_>>(),
        "loops": mask_members(cfg.loops()).collect::<Vec<_>>(),
        "coloops": mask_members(cfg.coloops()).collect::<Vec<_>>(),
        "bases": zonotopal_core::activity::enumerate_bases(cfg).len(),
    })
}

/// Tutte polynomial by subset expansion, cross-checked against
/// deletion/contraction, with standard counting evaluations.
pub fn cmd_tutte(cfg: &VectorConfig) -> Value {
    let t = tutte(cfg);
    let dc = tutte_delcon(cfg);
    json!({
        "config": config_json(cfg),
        "tutte": tutte_json(&t),
        "delcon_agrees": t == dc,
        "evaluations": {
            "bases": t.eval_int(1, 1).to_string(),
            "independent_sets": t.eval_int(2, 1).to_string(),
            "spanning_sets": t.eval_int(1, 2).to_string(),
            "subsets": t.eval_int(2, 2).to_string(),
        },
    })
}

fn series_total(h: &HilbSeries) -> u64 {
    h.coeffs().iter().sum()
}

/// Hilbert series by the requested method, or by every applicable method
/// with an agreement flag when `method` is `all`.
pub fn cmd_hilb(cfg: &VectorConfig, k: i64, j: &UpperSet, method: &str) -> Result<Value> {
    let mut methods = Map::new();
    let mut computed: Vec<HilbSeries> = Vec::new();
    let mut run = |name: &str, out: Result<HilbSeries>, methods: &mut Map<String, Value>| {
        match out {
            Ok(h) => {
                methods.insert(name.into(), series_json(&h));
                computed.push(h);
                Ok(())
            }
            Err(e) => Err(e),
        }
    };
    match method {
        "kernel" => run("kernel", hilb_kernel(cfg, k, j), &mut methods)?,
        "recursive" => run("recursive", hilb_recursive(cfg, k, j), &mut methods)?,
        "activity" => run("activity", hilb_activity(cfg, k, j), &mut methods)?,
        "subset" => {
            if k != 0 {
                return Err(Error::MethodInapplicable {
                    method: "subset",
                    reason: format!("the subset expansion needs k = 0, got {k}"),
                });
            }
            run("subset", Ok(hilb_subset(cfg, j)), &mut methods)?
        }
        "all" => {
            run("kernel", hilb_kernel(cfg, k, j), &mut methods)?;
            run("recursive", hilb_recursive(cfg, k, j), &mut methods)?;
            if k >= 0 {
                run("activity", hilb_activity(cfg, k, j), &mut methods)?;
            } else {
                methods.insert("activity".into(), json!({ "skipped": "needs k >= 0" }));
            }
            if k == 0 {
                run("subset", Ok(hilb_subset(cfg, j)), &mut methods)?;
            } else {
                methods.insert("subset".into(), json!({ "skipped": "needs k = 0" }));
            }
        }
        other => {
            return Err(Error::BadArgument(format!(
                "unknown method {other:?}; use kernel, recursive, activity, subset, or all"
            )))
        }
    }
    let first = computed.first().expect("every path computes at least one series");
    let agree = computed.iter().all(|h| h == first);
    Ok(json!({
        "k": k,
        "upperset": upperset_json(j, cfg),
        "series": series_json(first),
        "total": series_total(first),
        "methods": Value::Object(methods),
        "agree": agree,
    }))
}

/// The spanning polynomial set, the graded space it spans, and how that
/// space relates to the ideal kernel.
pub fn cmd_pspace(cfg: &VectorConfig, k: i64, j: &UpperSet) -> Result<Value> {
    let polys = s_set(cfg, k, j)?;
    let span = p_space(cfg, k, j)?;
    let kernel = kernel_i(cfg, k, j, None)?;
    let equality_expected = k >= 0 || j.contains_all_hyperplanes(cfg);
    Ok(json!({
        "k": k,
        "upperset": upperset_json(j, cfg),
        "s_set": {
            "count": polys.len(),
            "polys": polys.iter().map(poly_json).collect::<Vec<_>>(),
        },
        "span": basis_json(&span),
        "kernel_dims": kernel.dims(),
        "equals_kernel": span.equals(&kernel),
        "equality_expected": equality_expected,
    }))
}

/// Basis elements: the activity decomposition for k >= 0, the semi-internal
/// basis list for k = -1.
pub fn cmd_basis(cfg: &VectorConfig, k: i64, j: &UpperSet) -> Result<Value> {
    if k >= 0 {
        let gamma = gamma_set(cfg, k, j)?;
        let elements: Vec<Value> = gamma
            .iter()
            .map(|g| {
                let poly = g.poly(cfg);
                json!({
                    "basis": mask_json(g.basis),
                    "internal": g.internal,
                    "external": mask_json(g.external),
                    "subset": g.subset,
                    "powers": g.powers,
                    "poly": poly_json(&poly),
                })
            })
            .collect();
        return Ok(json!({
            "k": k,
            "upperset": upperset_json(j, cfg),
            "kind": "activity",
            "count": elements.len(),
            "elements": elements,
        }));
    }
    if k == -1 {
        let bases = semi_internal_bases(cfg, j);
        let polys = semi_internal_polys(cfg, j);
        return Ok(json!({
            "k": k,
            "upperset": upperset_json(j, cfg),
            "kind": "semi_internal",
            "count": bases.len(),
            "bases": bases.iter().copied().map(mask_json).collect::<Vec<_>>(),
            "polys": polys.iter().map(poly_json).collect::<Vec<_>>(),
        }));
    }
    Err(Error::KBelowMinusOne(k))
}

/// Graded kernel of the power ideal, with its spanning polynomials.
pub fn cmd_kernel(cfg: &VectorConfig, k: i64, j: &UpperSet, cap: Option<usize>) -> Result<Value> {
    let kernel = kernel_i(cfg, k, j, cap)?;
    Ok(json!({
        "k": k,
        "upperset": upperset_json(j, cfg),
        "cap": cap.unwrap_or_else(|| default_cap(cfg, k)),
        "kernel": basis_json(&kernel),
    }))
}

/// Generators of the flat-indexed ideal and of its hyperplane-normal variant.
pub fn cmd_ideal(cfg: &VectorConfig, k: i64, j: &UpperSet, sel: NormalSelector) -> Result<Value> {
    let igens = i_generators(cfg, k, j)?;
    let pgens = iprime_generators(cfg, k, j, sel)?;
    let igens_json: Vec<Value> = igens
        .iter()
        .map(|g| {
            json!({
                "flat": mask_json(g.flat),
                "exponent": g.exponent,
                "op": poly_json(&g.op),
            })
        })
        .collect();
    let pgens_json: Vec<Value> = pgens
        .iter()
        .map(|g| {
            json!({
                "flat": mask_json(g.flat),
                "exponent": g.exponent,
                "is_hyperplane": g.is_hyperplane,
                "normal": g.normal.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "k": k,
        "upperset": upperset_json(j, cfg),
        "i_generators": igens_json,
        "power_generators": pgens_json,
    }))
}

/// Deletion/contraction sequence checks at one column.
pub fn cmd_exact(cfg: &VectorConfig, k: i64, j: &UpperSet, x: usize) -> Result<Value> {
    let rep = verify_exact_sequence(cfg, k, j, x)?;
    Ok(json!({
        "k": k,
        "upperset": upperset_json(j, cfg),
        "x": x,
        "precondition_met": rep.precondition_met,
        "kernel_dims": rep.kernel_dims,
        "deletion_dims": rep.deletion_dims,
        "contraction_dims": rep.contraction_dims,
        "px_deletion_in_kernel": rep.px_deletion_in_kernel,
        "middle_exact": rep.middle_exact,
        "projection_surjective": rep.projection_surjective,
        "hilb_additive": rep.hilb_additive,
        "literal_embedded_sum": rep.literal_embedded_sum,
        "holds": rep.px_deletion_in_kernel
            && rep.middle_exact
            && rep.projection_surjective
            && rep.hilb_additive,
    }))
}

/// Which multiplicity formula to run.
pub enum CoxSpec {
    /// Marked hyperplanes, aligned with the configuration's hyperplane list.
    External(Vec<bool>),
    /// A flat to sit above, as a column mask.
    Internal(Mask),
}

/// Multiplicity Hilbert series by the closed formula and by expanding the
/// configuration, with an agreement flag.
pub fn cmd_cox(cfg: &VectorConfig, a: &[u32], spec: &CoxSpec) -> Result<Value> {
    let (kind, formula, lifted, detail) = match spec {
        CoxSpec::External(b) => {
            let f = cox_semiexternal_hilb(cfg, a, b)?;
            let l = cox_semiexternal_lifted(cfg, a, b)?;
            let marks: Vec<u8> = b.iter().map(|&x| x as u8).collect();
            ("semi_external", f, l, json!({ "hyperplane_marks": marks }))
        }
        CoxSpec::Internal(c0) => {
            let f = cox_semiinternal_hilb(cfg, a, *c0)?;
            let l = cox_semiinternal_lifted(cfg, a, *c0)?;
            ("semi_internal", f, l, json!({ "c0": mask_json(*c0) }))
        }
    };
    Ok(json!({
        "kind": kind,
        "multiplicities": a,
        "detail": detail,
        "formula": series_json(&formula),
        "lifted": series_json(&lifted),
        "agree": formula == lifted,
    }))
}

/// Flow, chromatic, and Tutte polynomials of a connected graph, with small
/// brute-force flow counts as a sanity cross-check.
pub fn cmd_graph_poly(g: &GraphInput) -> Result<Value> {
    let flow = flow_polynomial(g)?;
    let chromatic = chromatic_polynomial(g)?;
    let cfg = graph_to_config(g)?;
    let t = tutte(&cfg);
    let mut counts = Map::new();
    // brute force is exponential in the edge count; stay well inside a blink
    if g.edges.len() <= 10 {
        for m in 2..=4u64 {
            let c = count_nowhere_zero_flows(g, m)?;
            counts.insert(m.to_string(), json!(c));
        }
    }
    Ok(json!({
        "vertices": g.num_vertices,
        "edges": g.edges.iter().map(|&(t, h)| json!([t, h])).collect::<Vec<_>>(),
        "flow": zpoly_json(&flow),
        "flow_display": flow.to_string(),
        "chromatic": zpoly_json(&chromatic),
        "chromatic_display": chromatic.to_string(),
        "tutte": tutte_json(&t),
        "flow_counts": Value::Object(counts),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1() -> VectorConfig {
        VectorConfig::from_int_rows(&[&[1, 0, 1], &[0, 1, 1]]).unwrap()
    }

    #[test]
    fn hilb_all_reports_methods_and_agreement() {
        let cfg = x1();
        let j = UpperSet::from_generators(&cfg, &[0b001, 0b100]);
        let v = cmd_hilb(&cfg, 0, &j, "all").unwrap();
        assert_eq!(v["series"], json!([1, 2, 2]));
        assert_eq!(v["agree"], json!(true));
        assert_eq!(v["methods"]["kernel"], v["methods"]["subset"]);
        // negative k skips the k >= 0 methods instead of failing
        let v = cmd_hilb(&cfg, -1, &UpperSet::full(&cfg), "all").unwrap();
        assert_eq!(v["series"], json!([1, 2]));
        assert!(v["methods"]["activity"]["skipped"].is_string());

        let err = cmd_hilb(&cfg, -1, &UpperSet::full(&cfg), "activity").unwrap_err();
        assert_eq!(err.code(), "METHOD_INAPPLICABLE");
        let err = cmd_hilb(&cfg, 1, &UpperSet::full(&cfg), "subset").unwrap_err();
        assert_eq!(err.code(), "METHOD_INAPPLICABLE");
        let err = cmd_hilb(&cfg, 0, &UpperSet::full(&cfg), "sideways").unwrap_err();
        assert_eq!(err.code(), "BAD_ARGUMENT");
    }

    #[test]
    fn basis_switches_shape_on_k() {
        let cfg = x1();
        let j = UpperSet::central(&cfg);
        let v = cmd_basis(&cfg, 0, &j, ).unwrap();
        assert_eq!(v["kind"], "activity");
        assert_eq!(v["count"], json!(3), "three bases, no internal activity terms at k = 0 beyond them");
        let v = cmd_basis(&cfg, -1, &j).unwrap();
        assert_eq!(v["kind"], "semi_internal");
        assert_eq!(v["count"], json!(1));
        assert_eq!(cmd_basis(&cfg, -2, &j).unwrap_err().code(), "K_BELOW_MINUS_ONE");
    }

    #[test]
    fn pspace_reports_kernel_equality() {
        let cfg = x1();
        let v = cmd_pspace(&cfg, 0, &UpperSet::central(&cfg)).unwrap();
        assert_eq!(v["equals_kernel"], json!(true));
        assert_eq!(v["equality_expected"], json!(true));
        assert_eq!(v["s_set"]["count"], json!(4));
        assert_eq!(v["span"]["dims"], json!([1, 2]));
    }

    #[test]
    fn graph_payload_has_counts_matching_the_flow_polynomial() {
        let g = GraphInput::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let v = cmd_graph_poly(&g).unwrap();
        // flow polynomial of the triangle is t - 1
        assert_eq!(v["flow"], json!(["-1", "1"]));
        assert_eq!(v["flow_counts"]["3"], json!(2));
    }
}
