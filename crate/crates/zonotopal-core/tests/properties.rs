//! Randomized invariant checks across the algebra, matroid and Hilbert
//! layers: differential operator laws, closure axioms, transport of upper
//! sets along deletion and contraction, agreement of the independent Hilbert
//! series routes, and the apolar complement between an ideal and its kernel.

use num::One;
use proptest::prelude::*;
use zonotopal_core::hilbert::{dim_semi_external, HilbSeries};
use zonotopal_core::ideal::{i_generators, ideal_component, s_set};
use zonotopal_core::matroid::mask_members;
use zonotopal_core::poly::{apply_diff, pairing, GradedBasis, MPoly, VarSpace};
use zonotopal_core::scalar::{factorial, Q, Z};
use zonotopal_core::{
    hilb_activity, hilb_kernel, hilb_recursive, hilb_subset, kernel_i, p_space, Mask, QMatrix,
    UpperSet, VectorConfig,
};

fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

/// Spanning configurations with entries in {-1, 0, 1}.
fn config_strategy(max_r: usize, max_n: usize) -> impl Strategy<Value = VectorConfig> {
    (1..=max_r)
        .prop_flat_map(move |r| {
            (r..=max_n).prop_flat_map(move |n| {
                proptest::collection::vec(proptest::collection::vec(-1i64..=1, n), r)
            })
        })
        .prop_filter_map("configuration must span", |rows| {
            let refs: Vec<&[i64]> = rows.iter().map(|row| row.as_slice()).collect();
            VectorConfig::from_int_rows(&refs).ok()
        })
}

/// A deterministic upper set derived from seed bits: sometimes the central
/// or full one, otherwise generated by a seed-chosen batch of flats.
fn seeded_upperset(cfg: &VectorConfig, seed: u64) -> UpperSet {
    match seed % 4 {
        0 => UpperSet::central(cfg),
        1 => UpperSet::full(cfg),
        _ => {
            let gens: Vec<Mask> = cfg
                .lattice()
                .flats()
                .iter()
                .enumerate()
                .filter(|&(i, _)| seed >> (i % 64) & 1 == 1)
                .map(|(_, f)| f.mask)
                .collect();
            UpperSet::from_generators(cfg, &gens)
        }
    }
}

/// Random homogeneous polynomial in `nvars` point variables.
fn homogeneous_poly(nvars: usize, degree: usize, picks: &[(Vec<u16>, i64)]) -> MPoly {
    let mut acc = MPoly::zero(VarSpace::Point, nvars);
    for (exps, c) in picks {
        let mut e = exps.clone();
        e.truncate(nvars);
        while e.len() < nvars {
            e.push(0);
        }
        let total: u16 = e.iter().sum();
        if total as usize != degree {
            continue;
        }
        acc = acc.add(&MPoly::monomial(VarSpace::Point, e, q(*c)));
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn first_order_operators_satisfy_leibniz(
        nvars in 1usize..=3,
        op_coeffs in proptest::collection::vec(-3i64..=3, 3),
        f_picks in proptest::collection::vec((proptest::collection::vec(0u16..=2, 3), -2i64..=2), 1..=3),
        g_picks in proptest::collection::vec((proptest::collection::vec(0u16..=2, 3), -2i64..=2), 1..=3),
    ) {
        let coeffs: Vec<Q> = op_coeffs.iter().take(nvars).map(|&c| q(c)).collect();
        let op = MPoly::linear(VarSpace::Normal, &coeffs);
        let build = |picks: &[(Vec<u16>, i64)]| {
            let mut acc = MPoly::zero(VarSpace::Point, nvars);
            for (exps, c) in picks {
                let mut e = exps.clone();
                e.truncate(nvars);
                while e.len() < nvars { e.push(0); }
                acc = acc.add(&MPoly::monomial(VarSpace::Point, e, q(*c)));
            }
            acc
        };
        let f = build(&f_picks);
        let g = build(&g_picks);
        let lhs = apply_diff(&op, &f.mul(&g));
        let rhs = apply_diff(&op, &f).mul(&g).add(&f.mul(&apply_diff(&op, &g)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_of_monomials_is_diagonal(
        nvars in 1usize..=3,
        a in proptest::collection::vec(0u16..=3, 3),
        b in proptest::collection::vec(0u16..=3, 3),
    ) {
        let a: Vec<u16> = a.into_iter().take(nvars).collect();
        let b: Vec<u16> = b.into_iter().take(nvars).collect();
        let op = MPoly::monomial(VarSpace::Normal, a.clone(), Q::one());
        let f = MPoly::monomial(VarSpace::Point, b.clone(), Q::one());
        let got = pairing(&op, &f);
        if a == b {
            let mut expect = Q::one();
            for &ai in &a {
                expect *= Q::from_integer(factorial(ai as usize));
            }
            prop_assert_eq!(got, expect);
        } else {
            prop_assert_eq!(got, q(0));
        }
    }

    #[test]
    fn span_is_idempotent(
        nvars in 1usize..=3,
        inputs in proptest::collection::vec(
            (0usize..=3, proptest::collection::vec((proptest::collection::vec(0u16..=3, 3), -2i64..=2), 1..=3)),
            1..=4,
        ),
    ) {
        let polys: Vec<MPoly> = inputs
            .iter()
            .map(|(d, picks)| homogeneous_poly(nvars, *d, picks))
            .collect();
        let first = GradedBasis::span(VarSpace::Point, nvars, &polys).unwrap();
        let again = GradedBasis::span(VarSpace::Point, nvars, &first.polys()).unwrap();
        prop_assert!(first.equals(&again));
        prop_assert!(first.contains_space(&again));
        for p in &polys {
            prop_assert!(first.contains(p));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn closure_is_a_closure_operator(
        cfg in config_strategy(3, 5),
        bits_a in any::<u32>(),
        bits_b in any::<u32>(),
    ) {
        let a = bits_a & cfg.full_mask();
        let b = bits_b & cfg.full_mask();
        let ca = cfg.closure(a);
        prop_assert_eq!(a & ca, a, "a set lies inside its closure");
        prop_assert_eq!(cfg.closure(ca), ca, "closure is idempotent");
        prop_assert_eq!(cfg.rank_of(ca), cfg.rank_of(a), "closure preserves rank");
        if a & b == a {
            let cb = cfg.closure(b);
            prop_assert_eq!(ca & cb, ca, "closure is monotone");
        }
        prop_assert!(cfg.lattice().is_flat(ca));
    }

    #[test]
    fn transported_upper_sets_stay_valid(
        cfg in config_strategy(3, 5),
        seed in any::<u64>(),
        pick in any::<u32>(),
    ) {
        let j = seeded_upperset(&cfg, seed);
        j.validate(&cfg).unwrap();
        let x = pick as usize % cfg.n();
        if cfg.coloops() & (1 << x) == 0 {
            // deleting a non-coloop keeps the rank, so J transports
            j.delete(&cfg, x).validate(&cfg.delete(x)).unwrap();
        }
        if cfg.loops() & (1 << x) == 0 {
            let con = cfg.contract(x).unwrap();
            j.contract(&cfg, x).validate(&con).unwrap();
            if cfg.coloops() & (1 << x) != 0 {
                j.hat_contract(&cfg, &con, x).validate(&con).unwrap();
            }
        }
    }

    #[test]
    fn one_dimensional_series_has_closed_form(
        entries in proptest::collection::vec(-1i64..=1, 1..=5),
        k in -1i64..=2,
        full in any::<bool>(),
    ) {
        prop_assume!(entries.iter().any(|&e| e != 0));
        let cfg = VectorConfig::from_int_rows(&[&entries]).unwrap();
        let j = if full { UpperSet::full(&cfg) } else { UpperSet::central(&cfg) };
        let live = entries.iter().filter(|&&e| e != 0).count() as i64;
        let chi = i64::from(j.contains_flat(cfg.loops()));
        let expect = HilbSeries::ones((live + k + chi).max(0) as usize);
        prop_assert_eq!(hilb_kernel(&cfg, k, &j).unwrap(), expect.clone());
        prop_assert_eq!(hilb_recursive(&cfg, k, &j).unwrap(), expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hilbert_routes_agree(
        cfg in config_strategy(3, 5),
        seed in any::<u64>(),
        k in 0i64..=1,
    ) {
        let j = seeded_upperset(&cfg, seed);
        let by_kernel = hilb_kernel(&cfg, k, &j).unwrap();
        prop_assert_eq!(&hilb_recursive(&cfg, k, &j).unwrap(), &by_kernel);
        if cfg.loops() == 0 {
            prop_assert_eq!(&hilb_activity(&cfg, k, &j).unwrap(), &by_kernel);
        }
        if k == 0 {
            prop_assert_eq!(&hilb_subset(&cfg, &j), &by_kernel);
            prop_assert_eq!(dim_semi_external(&cfg, &j), by_kernel.total());
        }
        let spanned = p_space(&cfg, k, &j).unwrap();
        prop_assert_eq!(spanned.dims(), kernel_i(&cfg, k, &j, None).unwrap().dims());
    }

    #[test]
    fn internal_routes_agree_when_j_has_all_hyperplanes(
        cfg in config_strategy(3, 5),
        full in any::<bool>(),
    ) {
        let j = if full { UpperSet::full(&cfg) } else { UpperSet::central(&cfg) };
        prop_assert_eq!(
            hilb_recursive(&cfg, -1, &j).unwrap(),
            hilb_kernel(&cfg, -1, &j).unwrap()
        );
    }

    #[test]
    fn kernel_is_closed_under_differentiation(
        cfg in config_strategy(3, 4),
        seed in any::<u64>(),
        k in 0i64..=1,
    ) {
        let j = seeded_upperset(&cfg, seed);
        let kernel = kernel_i(&cfg, k, &j, None).unwrap();
        let nv = cfg.r();
        for f in kernel.polys() {
            for i in 0..nv {
                let mut coeffs = vec![q(0); nv];
                coeffs[i] = q(1);
                let df = apply_diff(&MPoly::linear(VarSpace::Normal, &coeffs), &f);
                if !df.is_zero() {
                    prop_assert!(kernel.contains(&df));
                }
            }
        }
    }

    #[test]
    fn kernel_complements_ideal_in_every_degree(
        cfg in config_strategy(3, 4),
        seed in any::<u64>(),
        k in 0i64..=1,
    ) {
        let j = seeded_upperset(&cfg, seed);
        let kernel = kernel_i(&cfg, k, &j, None).unwrap();
        let ops: Vec<MPoly> = i_generators(&cfg, k, &j)
            .unwrap()
            .into_iter()
            .map(|g| g.op)
            .collect();
        let nv = cfg.r();
        for d in 0..=3usize {
            let full: usize = zonotopal_core::poly::monomials_of_degree(nv, d).len();
            let ideal_dim = ideal_component(nv, &ops, d).rows();
            prop_assert_eq!(kernel.dim_at(d) + ideal_dim, full, "degree {}", d);
        }
    }

    #[test]
    fn series_is_invariant_under_symmetry(
        cfg in config_strategy(3, 5),
        seed in any::<u64>(),
        k in 0i64..=1,
        rot in any::<u64>(),
        diag in proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], 3),
        off in proptest::collection::vec(-2i64..=2, 3),
    ) {
        let j = seeded_upperset(&cfg, seed);
        let reference = hilb_kernel(&cfg, k, &j).unwrap();

        // column permutation: rotate by a seed-chosen offset
        let n = cfg.n();
        let shift = rot as usize % n;
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let permuted = cfg.permute(&perm).unwrap();
        prop_assert_eq!(hilb_kernel(&permuted, k, &j.permute(&perm)).unwrap(), reference.clone());

        // invertible change of basis: unit-ish upper triangular
        let r = cfg.r();
        let mut m = QMatrix::identity(r);
        for i in 0..r {
            *m.at_mut(i, i) = q(diag[i % diag.len()]);
            for jj in i + 1..r {
                *m.at_mut(i, jj) = q(off[(i + jj) % off.len()]);
            }
        }
        let transformed = cfg.apply_transform(&m).unwrap();
        prop_assert_eq!(hilb_kernel(&transformed, k, &j).unwrap(), reference);
    }

    #[test]
    fn spanning_set_stays_inside_the_kernel(
        cfg in config_strategy(3, 5),
        seed in any::<u64>(),
        k in 0i64..=1,
    ) {
        let j = seeded_upperset(&cfg, seed);
        let kernel = kernel_i(&cfg, k, &j, None).unwrap();
        for f in s_set(&cfg, k, &j).unwrap() {
            prop_assert!(kernel.contains(&f));
        }
    }

    #[test]
    fn loop_columns_never_change_the_series(
        cfg in config_strategy(3, 4),
        seed in any::<u64>(),
        k in 0i64..=1,
    ) {
        // append an explicit zero column and check the series is unchanged
        let mut cols: Vec<Vec<Q>> = cfg.cols().to_vec();
        cols.push(vec![q(0); cfg.r()]);
        let with_loop = VectorConfig::new(cfg.r(), cols).unwrap();
        let j = seeded_upperset(&cfg, seed);
        let gens: Vec<Mask> = j.members().map(|m| m | (1 << cfg.n())).collect();
        let j_loop = UpperSet::from_generators(&with_loop, &gens);
        prop_assert_eq!(
            hilb_recursive(&with_loop, k, &j_loop).unwrap(),
            hilb_recursive(&cfg, k, &j).unwrap()
        );
    }
}

#[test]
fn seeded_upperset_members_are_flats() {
    let cfg = VectorConfig::from_int_rows(&[&[1, 0, 1, 1], &[0, 1, 1, -1]]).unwrap();
    for seed in 0..32u64 {
        let j = seeded_upperset(&cfg, seed);
        j.validate(&cfg).unwrap();
        assert!(j.contains_flat(cfg.full_mask()));
        for m in j.members() {
            assert!(cfg.lattice().is_flat(m));
            assert!(mask_members(m).all(|i| i < cfg.n()));
        }
    }
}
