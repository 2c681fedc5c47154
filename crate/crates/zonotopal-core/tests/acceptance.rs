//! Acceptance gate: one test per shipped guarantee, each ending in a
//! "CRITERION nn <name>: PASS" line (visible with `--nocapture`). The corpus
//! tests sweep every loop-free configuration with entries in {-1, 0, 1},
//! N <= 6 and r <= 3, deduplicated by matroid isomorphism.

use num::{One, ToPrimitive};
use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;
use zonotopal_core::activity::{basis_polys, gamma_set, semi_internal_bases};
use zonotopal_core::hilbert::{
    chromatic_polynomial, count_nowhere_zero_flows, cox_semiexternal_hilb, cox_semiinternal_hilb,
    dim_semi_external, flow_polynomial, hilb_activity, hilb_kernel, hilb_recursive, hilb_subset,
    tutte, tutte_delcon, HilbSeries, LaurentInt, ZPoly,
};
use zonotopal_core::ideal::{
    kernel_i, kernel_iprime, kernel_of_ops, p_space, s_set, semi_internal_check_all_flats,
    verify_exact_sequence, verify_main_theorem,
};
use zonotopal_core::matroid::{GraphInput, Mask, NormalSelector, UpperSet, VectorConfig};
use zonotopal_core::poly::{GradedBasis, MPoly, VarSpace};
use zonotopal_core::scalar::{Q, Z};
use zonotopal_core::Error;

fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

fn x1() -> VectorConfig {
    VectorConfig::from_int_rows(&[&[1, 0, 1], &[0, 1, 1]]).unwrap()
}

fn x2() -> VectorConfig {
    VectorConfig::from_int_rows(&[&[1, 0], &[0, 1]]).unwrap()
}

fn x3() -> VectorConfig {
    VectorConfig::from_int_rows(&[&[0, 0, 1, 1, 1], &[1, 0, 0, 0, 1], &[0, 1, 1, 0, 0]]).unwrap()
}

fn x4() -> VectorConfig {
    VectorConfig::from_int_rows(&[
        &[1, 1, 0, 0, 1, 1, 0],
        &[1, 1, 1, 1, 0, 0, 0],
        &[0, 0, 0, 0, 1, 1, 1],
    ])
    .unwrap()
}

fn j2_of(cfg: &VectorConfig) -> UpperSet {
    UpperSet::from_generators(cfg, &[0b001, 0b100])
}

// ---------------------------------------------------------------------------
// corpus: every loop-free {-1,0,1} configuration with N <= 6, r <= 3, one
// representative per matroid isomorphism class
// ---------------------------------------------------------------------------

/// Nonzero sign vectors with leading entry +1; every {-1,0,1} column is a
/// scalar multiple of exactly one of these, and scaling never changes the
/// matroid.
fn projective_reps(r: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = 3usize.pow(r as u32);
    for code in 0..total {
        let mut v = Vec::with_capacity(r);
        let mut c = code;
        for _ in 0..r {
            v.push((c % 3) as i64 - 1);
            c /= 3;
        }
        match v.iter().find(|&&e| e != 0) {
            Some(&first) if first > 0 => out.push(v),
            _ => {}
        }
    }
    out
}

/// Rank over the rationals via integer cross-multiplication elimination;
/// entries stay tiny for r <= 3 inputs in {-1, 0, 1}.
fn int_rank(r: usize, cols: &[Vec<i64>], mask: u32) -> usize {
    let picked: Vec<usize> = (0..cols.len()).filter(|&i| mask >> i & 1 == 1).collect();
    let mut m: Vec<Vec<i64>> = (0..r)
        .map(|row| picked.iter().map(|&i| cols[i][row]).collect())
        .collect();
    let n = picked.len();
    let mut rank = 0;
    for col in 0..n {
        if rank == r {
            break;
        }
        let Some(p) = (rank..r).find(|&i| m[i][col] != 0) else { continue };
        m.swap(rank, p);
        for i in 0..r {
            if i != rank && m[i][col] != 0 {
                let (a, b) = (m[rank][col], m[i][col]);
                for j in 0..n {
                    m[i][j] = m[i][j] * a - m[rank][j] * b;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for shorter in all_perms(n - 1) {
        for pos in 0..n {
            let mut p = shorter.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Lexicographically smallest relabeling of the basis list: equal exactly for
/// isomorphic matroids on the same ground-set size.
fn matroid_canonical(n: usize, bases: &[u32], perms: &[Vec<usize>]) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for perm in perms {
        let mut mapped: Vec<u32> = bases
            .iter()
            .map(|&b| {
                let mut out = 0u32;
                for (i, &target) in perm.iter().enumerate().take(n) {
                    if b >> i & 1 == 1 {
                        out |= 1 << target;
                    }
                }
                out
            })
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|current| &mapped < current) {
            best = Some(mapped);
        }
    }
    best.unwrap()
}

fn build_corpus() -> Vec<VectorConfig> {
    let mut out = Vec::new();
    let mut seen: HashSet<(usize, Vec<u32>)> = HashSet::new();
    let perms_by_n: Vec<Vec<Vec<usize>>> = (0..=6).map(all_perms).collect();
    for r in 1..=3usize {
        let reps = projective_reps(r);
        for n in r..=6usize {
            let mut pick = vec![0usize; n];
            loop {
                let cols: Vec<Vec<i64>> = pick.iter().map(|&i| reps[i].clone()).collect();
                let full = (1u32 << n) - 1;
                if int_rank(r, &cols, full) == r {
                    let bases: Vec<u32> = (0..=full)
                        .filter(|m| m.count_ones() as usize == r && int_rank(r, &cols, *m) == r)
                        .collect();
                    let canon = matroid_canonical(n, &bases, &perms_by_n[n]);
                    if seen.insert((n, canon)) {
                        let rows: Vec<Vec<i64>> =
                            (0..r).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
                        let refs: Vec<&[i64]> = rows.iter().map(|row| row.as_slice()).collect();
                        out.push(VectorConfig::from_int_rows(&refs).unwrap());
                    }
                }
                let mut advanced = false;
                for pos in (0..n).rev() {
                    if pick[pos] + 1 < reps.len() {
                        let v = pick[pos] + 1;
                        for p in pick.iter_mut().skip(pos) {
                            *p = v;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
        }
    }
    out
}

static CORPUS: OnceLock<Vec<VectorConfig>> = OnceLock::new();

fn corpus() -> &'static [VectorConfig] {
    CORPUS.get_or_init(build_corpus)
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Three deterministic pseudo-random upper sets per configuration: each flat
/// joins the generator list on a coin flip.
fn seeded_uppersets(cfg: &VectorConfig, idx: usize) -> Vec<UpperSet> {
    (0..3u64)
        .map(|salt| {
            let mut state = (idx as u64 + 1).wrapping_mul(0xA24BAED4963EE407) ^ salt;
            let gens: Vec<Mask> = cfg
                .lattice()
                .flats()
                .iter()
                .filter(|_| splitmix(&mut state) & 1 == 1)
                .map(|f| f.mask)
                .collect();
            UpperSet::from_generators(cfg, &gens)
        })
        .collect()
}

type MemoKey = (usize, i64, Vec<Mask>);
static KERNELS: OnceLock<Mutex<HashMap<MemoKey, Arc<GradedBasis>>>> = OnceLock::new();

/// Kernel of I(X, k, J) for a corpus member, shared across criteria.
fn kernel_cached(idx: usize, cfg: &VectorConfig, k: i64, j: &UpperSet) -> Arc<GradedBasis> {
    let mut members: Vec<Mask> = j.members().collect();
    members.sort_unstable();
    let key = (idx, k, members);
    let map = KERNELS.get_or_init(Default::default);
    if let Some(found) = map.lock().unwrap().get(&key) {
        return found.clone();
    }
    let fresh = Arc::new(kernel_i(cfg, k, j, None).unwrap());
    map.lock().unwrap().entry(key).or_insert(fresh).clone()
}

fn hilb_of(basis: &GradedBasis) -> HilbSeries {
    HilbSeries::from_dims(&basis.dims())
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

#[test]
fn acceptance_01_first_fixture_spaces() {
    let started = Instant::now();
    let cfg = x1();
    let j1 = UpperSet::central(&cfg);
    let j2 = j2_of(&cfg);
    let cases: [(&UpperSet, i64, &[usize], usize); 4] = [
        (&j1, -1, &[1], 1),
        (&j1, 0, &[1, 2], 4),
        (&j2, -1, &[1, 1], 2),
        (&j2, 0, &[1, 2, 2], 6),
    ];
    for (j, k, dims, s_len) in cases {
        let spanned = p_space(&cfg, k, j).unwrap();
        assert_eq!(spanned.dims(), dims, "k = {k}");
        assert_eq!(s_set(&cfg, k, j).unwrap().len(), s_len, "k = {k}");
        let kernel = kernel_i(&cfg, k, j, None).unwrap();
        assert!(kernel.equals(&spanned), "span and kernel differ at k = {k}");
    }
    for j in [&j1, &j2] {
        let kernel = kernel_i(&cfg, 0, j, None).unwrap();
        assert_eq!(gamma_set(&cfg, 0, j).unwrap().len(), kernel.total_dim());
        let labeled = GradedBasis::span(
            VarSpace::Point,
            cfg.r(),
            &basis_polys(&cfg, 0, j).unwrap(),
        )
        .unwrap();
        assert!(labeled.equals(&kernel), "activity basis spans the kernel");
    }
    assert_eq!(semi_internal_bases(&cfg, &j1), vec![0b011]);
    assert_eq!(semi_internal_bases(&cfg, &j2), vec![0b011, 0b101]);
    assert!(started.elapsed().as_secs() < 1, "fixture must run in under a second");
    println!("CRITERION 01 first fixture spaces and bases: PASS");
}

#[test]
fn acceptance_02_deletion_contraction_decomposition() {
    let cfg = x1();
    for j in [UpperSet::central(&cfg), j2_of(&cfg)] {
        let report = verify_exact_sequence(&cfg, 0, &j, 0).unwrap();
        assert!(report.precondition_met);
        assert!(report.px_deletion_in_kernel);
        assert!(report.middle_exact);
        assert!(report.projection_surjective);
        assert!(report.hilb_additive);
        assert!(report.literal_embedded_sum);
    }
    println!("CRITERION 02 deletion/contraction direct sum: PASS");
}

#[test]
fn acceptance_03_pair_fixture_series_and_polarized_kernel() {
    let cfg = x2();
    let j3 = UpperSet::central(&cfg);
    let j4 = UpperSet::from_generators(&cfg, &[0b10]);
    let h3 = hilb_kernel(&cfg, 2, &j3).unwrap();
    assert_eq!(h3, HilbSeries::new(vec![1, 2, 3, 2]));
    assert_eq!(h3.total(), 8);
    let h4 = hilb_kernel(&cfg, 2, &j4).unwrap();
    assert_eq!(h4, HilbSeries::new(vec![1, 2, 3, 3]));
    assert_eq!(h4.total(), 9);
    // the printed generators x^3, y^3, x^2 y^2 cut out the same kernel
    let mono = |e: Vec<u16>| MPoly::monomial(VarSpace::Normal, e, Q::one());
    let printed = vec![mono(vec![3, 0]), mono(vec![0, 3]), mono(vec![2, 2])];
    let from_printed = kernel_of_ops(2, &printed, None, 8).unwrap();
    assert!(from_printed.equals(&kernel_i(&cfg, 2, &j3, None).unwrap()));
    println!("CRITERION 03 coordinate-pair series and polarized kernel: PASS");
}

#[test]
fn acceptance_04_internal_kernel_and_membership() {
    let cfg = x3();
    let central = UpperSet::central(&cfg);
    let kernel = kernel_i(&cfg, -1, &central, None).unwrap();
    let expected = GradedBasis::span(
        VarSpace::Point,
        3,
        &[
            MPoly::one(VarSpace::Point, 3),
            MPoly::linear(VarSpace::Point, &[q(1), q(0), q(0)]),
        ],
    )
    .unwrap();
    assert!(kernel.equals(&expected), "kernel is exactly span{{1, x}}");
    assert_eq!(semi_internal_bases(&cfg, &central), vec![0b00111, 0b01011]);
    let x_plus_z = MPoly::linear(VarSpace::Point, &[q(1), q(0), q(1)]);
    assert!(!kernel.contains(&x_plus_z), "x + z must fail the membership test");
    println!("CRITERION 04 internal kernel and failed membership: PASS");
}

#[test]
fn acceptance_05_seven_column_internal_decomposition() {
    let cfg = x4();
    let central = UpperSet::central(&cfg);
    let series = hilb_kernel(&cfg, -1, &central).unwrap();
    assert_eq!(series, HilbSeries::new(vec![1, 3, 3, 1]));
    assert_eq!(series.total(), 8);
    let report = verify_exact_sequence(&cfg, -1, &central, 6).unwrap();
    assert!(report.precondition_met);
    assert_eq!(report.deletion_dims.iter().sum::<usize>(), 1);
    assert_eq!(report.contraction_dims.iter().sum::<usize>(), 7);
    assert!(report.hilb_additive, "8 = t * 1 + 7 degree by degree");
    assert!(report.middle_exact);
    println!("CRITERION 05 seven-column internal decomposition: PASS");
}

#[test]
fn acceptance_06_hilbert_routes_on_corpus() {
    let started = Instant::now();
    let mut checks = 0usize;
    for (idx, cfg) in corpus().iter().enumerate() {
        for j in seeded_uppersets(cfg, idx) {
            for k in 0..=2i64 {
                let by_kernel = hilb_of(&kernel_cached(idx, cfg, k, &j));
                assert_eq!(
                    hilb_recursive(cfg, k, &j).unwrap(),
                    by_kernel,
                    "recursion at idx {idx}, k {k}"
                );
                assert_eq!(
                    hilb_activity(cfg, k, &j).unwrap(),
                    by_kernel,
                    "activity at idx {idx}, k {k}"
                );
                if k == 0 {
                    assert_eq!(hilb_subset(cfg, &j), by_kernel, "subset at idx {idx}");
                }
                checks += 1;
            }
        }
    }
    println!(
        "CRITERION 06 hilbert route agreement ({} configs, {} cases, {:.1}s): PASS",
        corpus().len(),
        checks,
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn acceptance_07_main_theorem_on_corpus() {
    let selectors = [NormalSelector::Auto, NormalSelector::Seeded(11)];
    for (idx, cfg) in corpus().iter().enumerate() {
        let central = UpperSet::central(cfg);
        let full = UpperSet::full(cfg);
        let seeded = seeded_uppersets(cfg, idx).remove(0);
        for j in [&central, &full, &seeded] {
            for k in 0..=2i64 {
                let spanned = p_space(cfg, k, j).unwrap();
                let kernel = kernel_cached(idx, cfg, k, j);
                assert!(
                    spanned.equals(&kernel),
                    "span S = ker I at idx {idx}, k {k}"
                );
            }
            // power generators: one power per relevant flat, same kernel
            if j.contains_all_hyperplanes(cfg) {
                let kernel = kernel_cached(idx, cfg, -1, j);
                for sel in selectors {
                    let prime = kernel_iprime(cfg, -1, j, sel, None).unwrap();
                    assert!(prime.equals(&kernel), "ker I' at idx {idx}, k -1");
                }
            }
            let kernel = kernel_cached(idx, cfg, 0, j);
            for sel in selectors {
                let prime = kernel_iprime(cfg, 0, j, sel, None).unwrap();
                assert!(prime.equals(&kernel), "ker I' at idx {idx}, k 0");
            }
        }
        // the bundled report agrees with itself on the expectation flags
        let report = verify_main_theorem(cfg, 0, &seeded, &selectors).unwrap();
        assert!(report.all_expected_hold(), "main theorem report at idx {idx}");
    }
    println!(
        "CRITERION 07 main theorem span/kernel/power-kernel ({} configs): PASS",
        corpus().len()
    );
}

#[test]
fn acceptance_08_full_lattice_shift_identity() {
    for (idx, cfg) in corpus().iter().enumerate() {
        let full = UpperSet::full(cfg);
        let central = UpperSet::central(cfg);
        for k in -1..=1i64 {
            let lhs = kernel_cached(idx, cfg, k, &full);
            let rhs = kernel_cached(idx, cfg, k + 1, &central);
            assert!(lhs.equals(&rhs), "shift identity at idx {idx}, k {k}");
        }
    }
    println!(
        "CRITERION 08 full-lattice equals raised-central identity ({} configs): PASS",
        corpus().len()
    );
}

#[test]
fn acceptance_09_tutte_identities_on_corpus() {
    for (idx, cfg) in corpus().iter().enumerate() {
        let t = tutte(cfg);
        assert_eq!(t, tutte_delcon(cfg), "both Tutte routes at idx {idx}");
        let bases: u64 = t.eval_int(1, 1).to_u64().unwrap();
        assert_eq!(
            bases,
            zonotopal_core::activity::enumerate_bases(cfg).len() as u64
        );
        let shift = LaurentInt::t_pow((cfg.n() - cfg.r()) as i64);
        let inv_t = LaurentInt::t_pow(-1);
        let central = UpperSet::central(cfg);
        let at_zero = t
            .eval_laurent(&LaurentInt::one(), &inv_t)
            .mul(&shift)
            .to_hilb()
            .unwrap();
        assert_eq!(
            hilb_of(&kernel_cached(idx, cfg, 0, &central)),
            at_zero,
            "k = 0 Tutte identity at idx {idx}"
        );
        let one_plus_t = LaurentInt::one().add(&LaurentInt::t_pow(1));
        let at_one = t
            .eval_laurent(&one_plus_t, &inv_t)
            .mul(&shift)
            .to_hilb()
            .unwrap();
        assert_eq!(
            hilb_of(&kernel_cached(idx, cfg, 1, &central)),
            at_one,
            "k = 1 Tutte identity at idx {idx}"
        );
    }
    println!(
        "CRITERION 09 Tutte specializations ({} configs): PASS",
        corpus().len()
    );
}

#[test]
fn acceptance_10_semi_external_dimension_formula() {
    for (idx, cfg) in corpus().iter().enumerate() {
        let mut sets = vec![UpperSet::central(cfg), UpperSet::full(cfg)];
        sets.extend(seeded_uppersets(cfg, idx));
        for j in sets {
            let total = hilb_of(&kernel_cached(idx, cfg, 0, &j)).total();
            assert_eq!(
                total,
                dim_semi_external(cfg, &j),
                "independent-set count at idx {idx}"
            );
        }
    }
    println!(
        "CRITERION 10 semi-external dimension formula ({} configs): PASS",
        corpus().len()
    );
}

#[test]
fn acceptance_11_representation_independence() {
    for (idx, cfg) in corpus().iter().enumerate() {
        let j = seeded_uppersets(cfg, idx).remove(0);
        let central = UpperSet::central(cfg);
        let reference_j = hilb_kernel(cfg, 0, &j).unwrap();
        let reference_c = hilb_kernel(cfg, 1, &central).unwrap();

        // invertible rational change of basis, with a genuine fraction
        let r = cfg.r();
        let mut m = zonotopal_core::QMatrix::identity(r);
        *m.at_mut(0, 0) = Q::new(Z::from(3), Z::from(2));
        for i in 1..r {
            *m.at_mut(i, i) = q(if i % 2 == 0 { 5 } else { -2 });
            *m.at_mut(i, i - 1) = q(1);
        }
        let transformed = cfg.apply_transform(&m).unwrap();
        assert_eq!(hilb_kernel(&transformed, 0, &j).unwrap(), reference_j);
        assert_eq!(
            hilb_kernel(&transformed, 1, &central).unwrap(),
            reference_c,
            "basis change at idx {idx}"
        );

        // column rotation
        let n = cfg.n();
        let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let rotated = cfg.permute(&perm).unwrap();
        assert_eq!(
            hilb_kernel(&rotated, 0, &j.permute(&perm)).unwrap(),
            reference_j,
            "rotation at idx {idx}"
        );
        assert_eq!(
            hilb_kernel(&rotated, 1, &UpperSet::central(&rotated)).unwrap(),
            reference_c
        );
    }
    println!(
        "CRITERION 11 representation independence ({} configs): PASS",
        corpus().len()
    );
}

#[test]
fn acceptance_12_semi_internal_three_way() {
    let mut flats_checked = 0usize;
    for (idx, cfg) in corpus().iter().enumerate() {
        for (flat, report) in semi_internal_check_all_flats(cfg).unwrap() {
            assert!(
                report.all_agree,
                "semi-internal disagreement at idx {idx}, flat {flat:#b}: \
                 kernel {:?}, count {:?}, intersection {:?}",
                report.kernel_dims, report.bminus_dims, report.intersection_dims
            );
            flats_checked += 1;
        }
    }
    println!(
        "CRITERION 12 semi-internal three-way agreement ({} configs, {} flats): PASS",
        corpus().len(),
        flats_checked
    );
}

#[test]
fn acceptance_13_multiplicity_formulas() {
    let small: Vec<(usize, &VectorConfig)> = corpus()
        .iter()
        .enumerate()
        .filter(|(_, cfg)| cfg.n() <= 4)
        .collect();
    let mut external_checks = 0usize;
    let mut internal_checks = 0usize;
    for &(idx, cfg) in &small {
        let n = cfg.n();
        let hyps = cfg.lattice().hyperplane_masks().len();
        for acode in 0..(1u32 << n) {
            let a: Vec<u32> = (0..n).map(|i| 1 + (acode >> i & 1)).collect();
            let (expanded, new_to_old) = cfg.expand_multiplicity(&a).unwrap();

            // semi-external formula against the expanded subset route
            let mut state = (idx as u64) << 32 | acode as u64;
            let mut bs = vec![vec![true; hyps], vec![false; hyps]];
            for _ in 0..2 {
                bs.push((0..hyps).map(|_| splitmix(&mut state) & 1 == 1).collect());
            }
            for b in bs {
                let formula = cox_semiexternal_hilb(cfg, &a, &b).unwrap();
                let jb = UpperSet::from_hyperplane_mask(cfg, &b).unwrap();
                let lifted = hilb_subset(&expanded, &jb.expand(&new_to_old));
                assert_eq!(formula, lifted, "semi-external at idx {idx}, a {a:?}, b {b:?}");
                external_checks += 1;
            }

            // semi-internal formula against the expanded kernel route
            for flat in cfg.lattice().flats() {
                let c0 = flat.mask;
                let mut lifted_c0: Mask = 0;
                for (new_i, &old_i) in new_to_old.iter().enumerate() {
                    if c0 >> old_i & 1 == 1 {
                        lifted_c0 |= 1 << new_i;
                    }
                }
                let formula = cox_semiinternal_hilb(cfg, &a, c0).unwrap();
                let jc = UpperSet::above(&expanded, expanded.closure(lifted_c0));
                let lifted = hilb_kernel(&expanded, -1, &jc).unwrap();
                assert_eq!(formula, lifted, "semi-internal at idx {idx}, a {a:?}, c0 {c0:#b}");
                internal_checks += 1;
            }
        }
    }
    println!(
        "CRITERION 13 multiplicity formulas ({} configs, {} external, {} internal): PASS",
        small.len(),
        external_checks,
        internal_checks
    );
}

#[test]
fn acceptance_14_graph_polynomials() {
    let k3 = GraphInput::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
    let flow = flow_polynomial(&k3).unwrap();
    assert_eq!(flow, ZPoly::from_i64(&[-1, 1]));
    for modulus in 2..=5u64 {
        assert_eq!(
            count_nowhere_zero_flows(&k3, modulus).unwrap(),
            flow.eval(&Z::from(modulus)).to_u64().unwrap(),
            "brute-force flow count at modulus {modulus}"
        );
    }
    let chrom = chromatic_polynomial(&k3).unwrap();
    assert_eq!(chrom, ZPoly::from_i64(&[0, 2, -3, 1]), "t(t-1)(t-2)");
    println!("CRITERION 14 graph flow and chromatic polynomials: PASS");
}

#[test]
fn acceptance_15_negative_controls() {
    let cfg = x1();
    // outside the theorem's hypotheses the decomposition failure is reported,
    // never asserted
    let j5 = UpperSet::from_generators(&cfg, &[0b001]);
    let report = verify_exact_sequence(&cfg, -1, &j5, 0).unwrap();
    assert!(!report.precondition_met);
    assert!(!report.hilb_additive);
    assert!(!report.literal_embedded_sum);

    // k = -2 is rejected with the machine-readable code everywhere
    let central = UpperSet::central(&cfg);
    for err in [
        kernel_i(&cfg, -2, &central, None).unwrap_err(),
        s_set(&cfg, -2, &central).unwrap_err(),
        hilb_recursive(&cfg, -2, &central).unwrap_err(),
    ] {
        assert_eq!(err.code(), "K_BELOW_MINUS_ONE");
        assert!(matches!(err, Error::KBelowMinusOne(-2)));
    }
    println!("CRITERION 15 negative controls: PASS");
}
