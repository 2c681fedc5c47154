//! Power ideals of a configuration and an upper set of flats.
//!
//! For each proper flat C the ideal I(X, k, J) contributes all monomials of
//! degree m(C) + k + chi(C) in an integer basis of the annihilator of
//! span(C); this finite family generates the same ideal as the full set of
//! powers of defining normals. I'(X, k, J, E) keeps one selected normal per
//! hyperplane and per maximal missing flat. Kernels are computed degreewise
//! by exact linear algebra, and the spanning sets S(X, k, J) give the
//! conjectured kernel description P(X, k, J).

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::matroid::{
    annihilator_basis, defining_normal, m_of, mask_members, Mask, NormalSelector, UpperSet,
    VectorConfig,
};
use crate::poly::{
    apply_diff, coeff_row, degree_monomials, monomials_of_degree, GradedBasis, MPoly, VarSpace,
};
use crate::scalar::{Q, Z};
use num::{One, Zero};
use std::collections::BTreeSet;

/// The generator exponent of a flat: m(C) + k + chi(C). Nonnegative for
/// every proper flat when k >= -1.
pub fn exponent_of(cfg: &VectorConfig, k: i64, j: &UpperSet, flat: Mask) -> usize {
    let chi = i64::from(j.contains_flat(flat));
    let e = m_of(cfg, flat) as i64 + k + chi;
    debug_assert!(e >= 0, "proper flats have nonnegative exponents for k >= -1");
    e.max(0) as usize
}

/// The hard degree cap of a kernel scan (exceeding it is a bug guard, not a
/// truncation policy).
pub fn default_cap(cfg: &VectorConfig, k: i64) -> usize {
    cfg.n() + k.max(0) as usize + 1
}

/// One generator of the finite presentation of I(X, k, J): a monomial of
/// degree `exponent` in the annihilator basis of `flat`.
#[derive(Debug, Clone)]
pub struct IdealGen {
    pub flat: Mask,
    pub exponent: usize,
    pub op: MPoly,
}

/// One generator of I'(X, k, J, E): a single power of a defining normal.
#[derive(Debug, Clone)]
pub struct PowerGen {
    pub flat: Mask,
    pub normal: Vec<Z>,
    pub exponent: usize,
    pub is_hyperplane: bool,
}

impl PowerGen {
    /// The operator (eta . D)^exponent.
    pub fn op(&self, nvars: usize) -> MPoly {
        let coeffs: Vec<Q> = self.normal.iter().cloned().map(Q::from_integer).collect();
        debug_assert_eq!(coeffs.len(), nvars);
        MPoly::linear(VarSpace::Normal, &coeffs).pow(self.exponent)
    }
}

/// Finite generating family of I(X, k, J): per proper flat, all monomials of
/// its exponent's degree in its annihilator basis. Flats in lattice order,
/// monomials in the canonical degree order.
pub fn i_generators(cfg: &VectorConfig, k: i64, j: &UpperSet) -> Result<Vec<IdealGen>> {
    if k < -1 {
        return Err(Error::KBelowMinusOne(k));
    }
    let top = cfg.lattice().top().mask;
    let mut out = Vec::new();
    for f in cfg.lattice().flats() {
        if f.mask == top {
            // the top flat has no nonzero annihilator and no generators
            continue;
        }
        let e = exponent_of(cfg, k, j, f.mask);
        let ann = annihilator_basis(cfg, f.mask);
        debug_assert!(!ann.is_empty());
        let forms: Vec<MPoly> = ann
            .iter()
            .map(|eta| {
                let coeffs: Vec<Q> = eta.iter().cloned().map(Q::from_integer).collect();
                MPoly::linear(VarSpace::Normal, &coeffs)
            })
            .collect();
        for exps in monomials_of_degree(forms.len(), e) {
            let mut op = MPoly::one(VarSpace::Normal, cfg.r());
            for (form, &a) in forms.iter().zip(&exps) {
                if a > 0 {
                    op = op.mul(&form.pow(a as usize));
                }
            }
            out.push(IdealGen { flat: f.mask, exponent: e, op });
        }
    }
    Ok(out)
}

/// Generators of I'(X, k, J, E): one power of a selected defining normal per
/// hyperplane, then per non-hyperplane maximal missing flat of J.
pub fn iprime_generators(
    cfg: &VectorConfig,
    k: i64,
    j: &UpperSet,
    sel: NormalSelector,
) -> Result<Vec<PowerGen>> {
    if k < -1 {
        return Err(Error::KBelowMinusOne(k));
    }
    let hyps = cfg.lattice().hyperplane_masks();
    let hyp_set: BTreeSet<Mask> = hyps.iter().copied().collect();
    let mut flats: Vec<(Mask, bool)> = hyps.iter().map(|&h| (h, true)).collect();
    for m in j.maximal_missing(cfg) {
        if !hyp_set.contains(&m) {
            flats.push((m, false));
        }
    }
    let mut out = Vec::new();
    for (flat, is_hyperplane) in flats {
        let exponent = exponent_of(cfg, k, j, flat);
        let normal = defining_normal(cfg, flat, sel)?;
        out.push(PowerGen { flat, normal, exponent, is_hyperplane });
    }
    Ok(out)
}

/// Kernel of a family of homogeneous operators, computed degree by degree.
///
/// `zero_from`, when known, promises that every graded component from that
/// degree up is zero, so the scan can stop there. Independently, the scan
/// stops at the first zero component (kernels of operator ideals are closed
/// under differentiation, so nothing lives above a gap). Scanning past `cap`
/// raises an error.
pub fn kernel_of_ops(
    nvars: usize,
    ops: &[MPoly],
    zero_from: Option<usize>,
    cap: usize,
) -> Result<GradedBasis> {
    let mut out = GradedBasis::zero(VarSpace::Point, nvars);
    let mut d = 0;
    loop {
        if let Some(z) = zero_from {
            if d >= z {
                return Ok(out);
            }
        }
        if d > cap {
            return Err(Error::KernelCapExceeded { cap });
        }
        let dm = degree_monomials(nvars, d);
        let m = dm.monos.len();
        let mut k_mat = QMatrix::identity(m);
        for op in ops {
            if k_mat.rows() == 0 {
                break;
            }
            let e = op.degree().expect("generators are nonzero");
            if e > d {
                continue;
            }
            let target = degree_monomials(nvars, d - e);
            let rows: Vec<Vec<Q>> = dm
                .monos
                .iter()
                .map(|b| {
                    let mono = MPoly::monomial(VarSpace::Point, b.clone(), Q::one());
                    coeff_row(&apply_diff(op, &mono), &target)
                })
                .collect();
            let g = QMatrix::from_rows(rows).expect("equal row lengths");
            let images = k_mat.matmul(&g);
            let lambda = images.left_nullspace();
            if lambda.is_empty() {
                k_mat = QMatrix::zero(0, m);
            } else {
                let lmat = QMatrix::from_rows(lambda).expect("equal row lengths");
                k_mat = lmat.matmul(&k_mat);
            }
        }
        if k_mat.rows() == 0 {
            return Ok(out);
        }
        let (rref, pivots) = k_mat.rref();
        out.push_component(d, rref, pivots);
        d += 1;
    }
}

/// ker I(X, k, J) as a graded space.
pub fn kernel_i(
    cfg: &VectorConfig,
    k: i64,
    j: &UpperSet,
    cap: Option<usize>,
) -> Result<GradedBasis> {
    let gens = i_generators(cfg, k, j)?;
    if cfg.r() == 0 {
        return GradedBasis::span(VarSpace::Point, 0, &[MPoly::one(VarSpace::Point, 0)]);
    }
    // the bottom flat's generators are all monomials of its exponent's
    // degree: below that degree they constrain nothing, from it on they
    // kill everything, so they become the scan bound instead of matrices
    let bottom = cfg.lattice().bottom().mask;
    let zero_from = exponent_of(cfg, k, j, bottom);
    let ops: Vec<MPoly> =
        gens.into_iter().filter(|g| g.flat != bottom).map(|g| g.op).collect();
    kernel_of_ops(cfg.r(), &ops, Some(zero_from), cap.unwrap_or_else(|| default_cap(cfg, k)))
}

/// ker I'(X, k, J, E) as a graded space.
pub fn kernel_iprime(
    cfg: &VectorConfig,
    k: i64,
    j: &UpperSet,
    sel: NormalSelector,
    cap: Option<usize>,
) -> Result<GradedBasis> {
    let gens = iprime_generators(cfg, k, j, sel)?;
    if cfg.r() == 0 {
        return GradedBasis::span(VarSpace::Point, 0, &[MPoly::one(VarSpace::Point, 0)]);
    }
    // complete-intersection bound: r independent hyperplane normals with
    // exponents e_i cut the kernel down to top degree sum(e_i - 1)
    let mut chosen_rows: Vec<Vec<Q>> = Vec::new();
    let mut bound = 1usize;
    let mut unit = false;
    for g in gens.iter().filter(|g| g.is_hyperplane) {
        if chosen_rows.len() == cfg.r() {
            break;
        }
        let row: Vec<Q> = g.normal.iter().cloned().map(Q::from_integer).collect();
        let mut probe = chosen_rows.clone();
        probe.push(row.clone());
        if QMatrix::from_rows(probe).expect("equal lengths").rank() == chosen_rows.len() + 1 {
            chosen_rows.push(row);
            if g.exponent == 0 {
                unit = true;
            }
            bound += g.exponent.saturating_sub(1);
        }
    }
    debug_assert_eq!(chosen_rows.len(), cfg.r(), "hyperplane normals span the dual space");
    let zero_from = if unit { 0 } else { bound };
    let ops: Vec<MPoly> = gens.iter().map(|g| g.op(cfg.r())).collect();
    let cap = cap.unwrap_or(zero_from.max(default_cap(cfg, k)));
    kernel_of_ops(cfg.r(), &ops, Some(zero_from), cap)
}

/// The spanning set S(X, k, J), deduplicated, in a deterministic order. For
/// k >= 0 these are the products p_Y f with f a monomial of degree at most
/// chi(X \ Y) + k - 1; for k = -1 the products p_Y whose overlap with the
/// complement of every proper flat C stays below m(C) - 1 + chi(C).
pub fn s_set(cfg: &VectorConfig, k: i64, j: &UpperSet) -> Result<Vec<MPoly>> {
    if k < -1 {
        return Err(Error::KBelowMinusOne(k));
    }
    let full = cfg.full_mask();
    let loops = cfg.loops();
    let mut set: BTreeSet<MPoly> = BTreeSet::new();
    if k >= 0 {
        for y in 0..=full {
            if y & loops != 0 {
                // p_Y vanishes on any set containing a loop
                continue;
            }
            let chi = j.chi(cfg, full & !y) as i64;
            let bound = chi + k - 1;
            if bound < 0 {
                continue;
            }
            let py = cfg.point_product(y);
            for d in 0..=bound as usize {
                for exps in monomials_of_degree(cfg.r(), d) {
                    set.insert(py.mul(&MPoly::monomial(VarSpace::Point, exps, Q::one())));
                }
            }
        }
    } else {
        let lat = cfg.lattice();
        let top = lat.top().mask;
        'candidates: for y in 0..=full {
            if y & loops != 0 {
                continue;
            }
            for f in lat.flats() {
                if f.mask == top {
                    continue;
                }
                let outside = (y & !f.mask).count_ones() as i64;
                let chi = i64::from(j.contains_flat(f.mask));
                if outside >= m_of(cfg, f.mask) as i64 - 1 + chi {
                    continue 'candidates;
                }
            }
            set.insert(cfg.point_product(y));
        }
    }
    Ok(set.into_iter().collect())
}

/// P(X, k, J): the graded span of S(X, k, J).
pub fn p_space(cfg: &VectorConfig, k: i64, j: &UpperSet) -> Result<GradedBasis> {
    let s = s_set(cfg, k, j)?;
    GradedBasis::span(VarSpace::Point, cfg.r(), &s)
}

/// Canonical matrix of the degree-d component of the ideal generated by the
/// given homogeneous operators (rows over the canonical monomials).
pub fn ideal_component(nvars: usize, ops: &[MPoly], d: usize) -> QMatrix {
    let dm = degree_monomials(nvars, d);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for op in ops {
        let e = op.degree().expect("generators are nonzero");
        if e > d {
            continue;
        }
        for exps in monomials_of_degree(nvars, d - e) {
            let m = MPoly::monomial(VarSpace::Normal, exps, Q::one());
            rows.push(coeff_row(&op.mul(&m), &dm));
        }
    }
    if rows.is_empty() {
        return QMatrix::zero(0, dm.monos.len());
    }
    let (rref, _) = QMatrix::from_rows(rows).expect("equal lengths").rref();
    rref
}

/// Degreewise equality of two operator ideals up to the given degree.
pub fn ideals_agree_up_to(nvars: usize, a: &[MPoly], b: &[MPoly], max_d: usize) -> bool {
    (0..=max_d).all(|d| ideal_component(nvars, a, d) == ideal_component(nvars, b, d))
}

/// Comparison of the three spaces P, ker I, ker I' for one (k, J).
#[derive(Debug, Clone)]
pub struct MainTheoremReport {
    pub k: i64,
    pub j_contains_all_hyperplanes: bool,
    pub p_dims: Vec<usize>,
    pub kernel_i_dims: Vec<usize>,
    pub kernel_iprime_dims: Vec<usize>,
    /// P is contained in ker I (expected always).
    pub p_in_kernel_i: bool,
    /// P equals ker I.
    pub span_equals_kernel_i: bool,
    /// Equality is a theorem here (k >= 0, or k = -1 with J containing all
    /// hyperplanes); outside this range the comparison is reported only.
    pub span_equality_expected: bool,
    /// ker I is contained in ker I' (expected always).
    pub kernel_i_in_kernel_iprime: bool,
    /// All provided selectors produced the same ker I'.
    pub selectors_agree: bool,
    /// ker I' equals ker I.
    pub iprime_equals_kernel_i: bool,
    /// That equality is a theorem for k in {-1, 0} (any upper set).
    pub iprime_equality_expected: bool,
}

impl MainTheoremReport {
    /// Every expected check passed.
    pub fn all_expected_hold(&self) -> bool {
        self.p_in_kernel_i
            && self.kernel_i_in_kernel_iprime
            && self.selectors_agree
            && (!self.span_equality_expected || self.span_equals_kernel_i)
            && (!self.iprime_equality_expected || self.iprime_equals_kernel_i)
    }
}

/// Compute P, ker I and ker I' (one kernel per selector) and compare them.
pub fn verify_main_theorem(
    cfg: &VectorConfig,
    k: i64,
    j: &UpperSet,
    selectors: &[NormalSelector],
) -> Result<MainTheoremReport> {
    let p = p_space(cfg, k, j)?;
    let ki = kernel_i(cfg, k, j, None)?;
    let sels: Vec<NormalSelector> = if selectors.is_empty() {
        vec![NormalSelector::Auto]
    } else {
        selectors.to_vec()
    };
    let kps: Vec<GradedBasis> = sels
        .iter()
        .map(|&s| kernel_iprime(cfg, k, j, s, None))
        .collect::<Result<_>>()?;
    let j_has_hyps = j.contains_all_hyperplanes(cfg);
    Ok(MainTheoremReport {
        k,
        j_contains_all_hyperplanes: j_has_hyps,
        p_dims: p.dims(),
        kernel_i_dims: ki.dims(),
        kernel_iprime_dims: kps[0].dims(),
        p_in_kernel_i: ki.contains_space(&p),
        span_equals_kernel_i: p.equals(&ki),
        span_equality_expected: k >= 0 || j_has_hyps,
        kernel_i_in_kernel_iprime: kps[0].contains_space(&ki),
        selectors_agree: kps.windows(2).all(|w| w[0].equals(&w[1])),
        iprime_equals_kernel_i: kps[0].equals(&ki),
        iprime_equality_expected: k <= 0,
    })
}

/// Checks of the deletion/contraction sequence of kernels at one column.
#[derive(Debug, Clone)]
pub struct ExactSequenceReport {
    /// The hypothesis of the underlying theorem: k >= 0, or k = -1 with J
    /// containing all hyperplanes or J central. When false, all checks are
    /// reported without any expectation that they hold.
    pub precondition_met: bool,
    pub kernel_dims: Vec<usize>,
    pub deletion_dims: Vec<usize>,
    pub contraction_dims: Vec<usize>,
    /// p_x ker(deletion) sits inside the kernel.
    pub px_deletion_in_kernel: bool,
    /// The kernel's p_x-divisible part is exactly p_x ker(deletion).
    pub middle_exact: bool,
    /// The quotient substitution maps the kernel onto ker(contraction).
    pub projection_surjective: bool,
    /// hilb(ker) = t hilb(ker del) + hilb(ker con).
    pub hilb_additive: bool,
    /// The naive splitting: renaming ker(contraction) into the complement
    /// coordinates gives a literal direct-sum decomposition of the kernel.
    /// This can fail even when the sequence is exact.
    pub literal_embedded_sum: bool,
}

/// Verify the deletion/contraction exact sequence at column x, which must be
/// neither a loop nor a coloop.
pub fn verify_exact_sequence(
    cfg: &VectorConfig,
    k: i64,
    j: &UpperSet,
    x: usize,
) -> Result<ExactSequenceReport> {
    if k < -1 {
        return Err(Error::KBelowMinusOne(k));
    }
    if x >= cfg.n() {
        return Err(Error::BadArgument(format!("column {x} out of range")));
    }
    if cfg.loops() & (1 << x) != 0 {
        return Err(Error::BadArgument(format!("column {x} is a loop")));
    }
    if cfg.coloops() & (1 << x) != 0 {
        return Err(Error::BadArgument(format!("column {x} is a coloop")));
    }
    let r = cfg.r();
    let precondition_met =
        k >= 0 || j.contains_all_hyperplanes(cfg) || j.is_central(cfg);
    let del = cfg.delete(x);
    let j_del = j.delete(cfg, x);
    let con = cfg.contract_with_maps(x)?;
    let j_con = j.contract(cfg, x);
    let kernel = kernel_i(cfg, k, j, None)?;
    let k_del = kernel_i(&del, k, &j_del, None)?;
    let k_con = kernel_i(&con.config, k, &j_con, None)?;
    let px = cfg.point_form(x);
    let px_kdel = k_del.mul_poly(&px);
    let px_deletion_in_kernel = kernel.contains_space(&px_kdel);
    // the p_x-divisible part of the kernel
    let divisible = match kernel.max_degree() {
        None => GradedBasis::zero(VarSpace::Point, r),
        Some(md) => {
            let mut polys = Vec::new();
            for d in 1..=md {
                for exps in monomials_of_degree(r, d - 1) {
                    polys.push(px.mul(&MPoly::monomial(VarSpace::Point, exps, Q::one())));
                }
            }
            GradedBasis::span(VarSpace::Point, r, &polys)?
        }
    };
    let middle_exact = kernel.intersect(&divisible).equals(&px_kdel);
    let image = kernel.substitute_linear(&con.point_map, r - 1);
    let projection_surjective = image.equals(&k_con);
    let shifted: Vec<usize> = {
        let mut v = vec![0];
        v.extend(k_del.dims());
        v
    };
    let mut lhs = kernel.dims();
    let mut rhs: Vec<usize> = Vec::new();
    let con_dims = k_con.dims();
    for i in 0..shifted.len().max(con_dims.len()) {
        rhs.push(
            shifted.get(i).copied().unwrap_or(0) + con_dims.get(i).copied().unwrap_or(0),
        );
    }
    while rhs.last() == Some(&0) {
        rhs.pop();
    }
    while lhs.last() == Some(&0) {
        lhs.pop();
    }
    let hilb_additive = lhs == rhs;
    // rename contraction variables into the chosen complement coordinates
    let embed: Vec<Vec<Q>> = con
        .embed_vars
        .iter()
        .map(|&i| {
            let mut e = vec![Q::zero(); r];
            e[i] = Q::one();
            e
        })
        .collect();
    let iota = k_con.substitute_linear(&embed, r);
    let total = px_kdel.sum(&iota);
    let literal_embedded_sum = total.equals(&kernel)
        && px_kdel.total_dim() + iota.total_dim() == kernel.total_dim();
    Ok(ExactSequenceReport {
        precondition_met,
        kernel_dims: kernel.dims(),
        deletion_dims: k_del.dims(),
        contraction_dims: k_con.dims(),
        px_deletion_in_kernel,
        middle_exact,
        projection_surjective,
        hilb_additive,
        literal_embedded_sum,
    })
}

/// One summand of the external decomposition: a flat C and the span of
/// p_{X \ C} p_Y over subsets Y of C keeping C's rank in the restriction.
#[derive(Debug, Clone)]
pub struct DecompositionSummand {
    pub flat: Mask,
    pub basis: GradedBasis,
}

/// The flat-indexed decomposition of P(X, 1, {X}).
#[derive(Debug, Clone)]
pub struct ExternalDecompositionReport {
    pub summands: Vec<DecompositionSummand>,
    pub total_dims: Vec<usize>,
    pub reference_dims: Vec<usize>,
    pub agrees: bool,
}

/// Decompose P(X, 1, {X}) by flats: the summand of C is p_{X \ C} times the
/// central P-space of the restriction to C, and the degreewise dimensions
/// must add up to those of P(X, 1, {X}).
pub fn external_decomposition(cfg: &VectorConfig) -> Result<ExternalDecompositionReport> {
    let central = UpperSet::central(cfg);
    let reference = p_space(cfg, 1, &central)?;
    let loops = cfg.loops();
    let mut summands = Vec::new();
    let mut total_dims: Vec<usize> = Vec::new();
    for f in cfg.lattice().flats() {
        let p_out = cfg.point_product(cfg.full_mask() & !f.mask);
        let mut polys = Vec::new();
        let mut y = f.mask;
        loop {
            if y & loops == 0 && cfg.rank_of(f.mask & !y) == f.rank {
                polys.push(p_out.mul(&cfg.point_product(y)));
            }
            if y == 0 {
                break;
            }
            y = (y - 1) & f.mask;
        }
        let basis = GradedBasis::span(VarSpace::Point, cfg.r(), &polys)?;
        for (d, dim) in basis.dims().into_iter().enumerate() {
            if total_dims.len() <= d {
                total_dims.resize(d + 1, 0);
            }
            total_dims[d] += dim;
        }
        summands.push(DecompositionSummand { flat: f.mask, basis });
    }
    while total_dims.last() == Some(&0) {
        total_dims.pop();
    }
    let reference_dims = reference.dims();
    let agrees = total_dims == reference_dims;
    Ok(ExternalDecompositionReport { summands, total_dims, reference_dims, agrees })
}

/// Three routes to the semi-internal space of (X, C0) plus the endpoint
/// heuristic data.
#[derive(Debug, Clone)]
pub struct SemiInternalReport {
    /// The reordering (new position -> old index) the count is taken in.
    pub order: Vec<usize>,
    pub kernel_dims: Vec<usize>,
    /// B_- of the reordered configuration.
    pub bminus: Vec<Mask>,
    pub bminus_dims: Vec<usize>,
    pub intersection_dims: Vec<usize>,
    pub tilde_polys: Vec<MPoly>,
    pub tilde_in_kernel: Vec<bool>,
    /// |B_-| equals the kernel dimension.
    pub counts_match: bool,
    /// All three dimension vectors agree.
    pub all_agree: bool,
}

fn bump_dims(dims: &mut Vec<usize>, d: usize) {
    if dims.len() <= d {
        dims.resize(d + 1, 0);
    }
    dims[d] += 1;
}

fn semi_internal_with_deletions(
    cfg: &VectorConfig,
    c0: Mask,
    deletion_spaces: &mut [Option<GradedBasis>],
) -> Result<SemiInternalReport> {
    use crate::activity::{external_activity, hrx_order, semi_internal_bases, semi_internal_polys};
    let c0 = c0 & cfg.full_mask();
    let order = hrx_order(cfg, c0);
    let rcfg = cfg.permute(&order)?;
    let mut rc0: Mask = 0;
    for (new_i, &old_i) in order.iter().enumerate() {
        if c0 & (1 << old_i) != 0 {
            rc0 |= 1 << new_i;
        }
    }
    let rj = UpperSet::above(&rcfg, rc0);
    let kernel = kernel_i(&rcfg, -1, &rj, None)?;
    let bminus = semi_internal_bases(&rcfg, &rj);
    let mut bminus_dims = Vec::new();
    for &b in &bminus {
        let deg =
            rcfg.n() - rcfg.r() - external_activity(&rcfg, b).count_ones() as usize;
        bump_dims(&mut bminus_dims, deg);
    }
    // intersection route, on the original configuration and order
    let coloops = cfg.coloops();
    let loops = cfg.loops();
    let mut acc: Option<GradedBasis> = None;
    let mut hit_coloop = false;
    for x in mask_members(c0) {
        if loops & (1 << x) != 0 {
            continue;
        }
        if coloops & (1 << x) != 0 {
            hit_coloop = true;
            break;
        }
        if deletion_spaces[x].is_none() {
            let del = cfg.delete(x);
            deletion_spaces[x] = Some(p_space(&del, 0, &UpperSet::central(&del))?);
        }
        let p = deletion_spaces[x].as_ref().expect("just filled");
        acc = Some(match acc {
            None => p.clone(),
            Some(a) => a.intersect(p),
        });
    }
    let intersection = if hit_coloop {
        GradedBasis::zero(VarSpace::Point, cfg.r())
    } else {
        match acc {
            Some(a) => a,
            None => p_space(cfg, 0, &UpperSet::central(cfg))?,
        }
    };
    let tilde_polys = semi_internal_polys(&rcfg, &rj);
    let tilde_in_kernel = tilde_polys.iter().map(|f| kernel.contains(f)).collect();
    let kernel_dims = kernel.dims();
    let intersection_dims = intersection.dims();
    let counts_match = bminus.len() == kernel.total_dim();
    let all_agree = kernel_dims == bminus_dims && bminus_dims == intersection_dims;
    Ok(SemiInternalReport {
        order,
        kernel_dims,
        bminus,
        bminus_dims,
        intersection_dims,
        tilde_polys,
        tilde_in_kernel,
        counts_match,
        all_agree,
    })
}

/// Compare ker I(X, -1, J_{C0}), the activity count over B_-, and the
/// intersection of the deleted central P-spaces over the members of C0.
pub fn semi_internal_check(cfg: &VectorConfig, c0: Mask) -> Result<SemiInternalReport> {
    let mut cache: Vec<Option<GradedBasis>> = vec![None; cfg.n()];
    semi_internal_with_deletions(cfg, c0, &mut cache)
}

/// Run [`semi_internal_check`] for every flat, sharing the per-column
/// deletion spaces across flats.
pub fn semi_internal_check_all_flats(
    cfg: &VectorConfig,
) -> Result<Vec<(Mask, SemiInternalReport)>> {
    let mut cache: Vec<Option<GradedBasis>> = vec![None; cfg.n()];
    let flats: Vec<Mask> = cfg.lattice().flats().iter().map(|f| f.mask).collect();
    let mut out = Vec::with_capacity(flats.len());
    for flat in flats {
        out.push((flat, semi_internal_with_deletions(cfg, flat, &mut cache)?));
    }
    Ok(out)
}
