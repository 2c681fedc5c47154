//! Internal and external activity of bases, the combinatorial index set
//! Gamma, the polynomial bases it induces, and the semi-internal basis
//! family with its greedy column reordering.
//!
//! Activity is taken with respect to the column order: an element outside a
//! basis is externally active when it lies in the closure of the smaller
//! basis elements, and a basis element is internally active when it is the
//! largest column outside the closure of the rest of the basis.

use crate::error::{Error, Result};
use crate::matroid::{mask_members, Mask, UpperSet, VectorConfig};
use crate::poly::MPoly;

/// All bases (maximal independent column sets), lexicographic by sorted
/// index tuple.
pub fn enumerate_bases(cfg: &VectorConfig) -> Vec<Mask> {
    let mut out = Vec::new();
    // DFS choosing strictly increasing indices emits tuples in lex order
    fn go(cfg: &VectorConfig, mask: Mask, rank: usize, start: usize, out: &mut Vec<Mask>) {
        if rank == cfg.r() {
            out.push(mask);
            return;
        }
        for i in start..cfg.n() {
            let next = mask | (1 << i);
            if cfg.rank_of(next) == rank + 1 {
                go(cfg, next, rank + 1, i + 1, out);
            }
        }
    }
    go(cfg, 0, 0, 0, &mut out);
    out
}

/// E(B): columns outside the basis lying in the closure of the smaller basis
/// elements. Loops are always externally active.
pub fn external_activity(cfg: &VectorConfig, basis: Mask) -> Mask {
    let mut e = 0;
    for x in 0..cfg.n() {
        if basis & (1 << x) != 0 {
            continue;
        }
        let smaller = basis & ((1 << x) - 1);
        if cfg.closure(smaller) & (1 << x) != 0 {
            e |= 1 << x;
        }
    }
    e
}

/// I(B): basis elements that are the largest column outside the closure of
/// the rest of the basis. Coloops are always internally active.
pub fn internal_activity(cfg: &VectorConfig, basis: Mask) -> Mask {
    let mut ia = 0;
    for b in mask_members(basis) {
        let rest = cfg.closure(basis & !(1 << b));
        let outside = cfg.full_mask() & !rest;
        debug_assert!(outside & (1 << b) != 0);
        let max = (0..cfg.n()).rev().find(|&i| outside & (1 << i) != 0);
        if max == Some(b) {
            ia |= 1 << b;
        }
    }
    ia
}

/// One element of Gamma: a basis, a subset of its internally active
/// elements, and a power vector on that subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaElement {
    /// The basis.
    pub basis: Mask,
    /// I(B), sorted.
    pub internal: Vec<usize>,
    /// E(B).
    pub external: Mask,
    /// The chosen I, a subset of `internal`, sorted.
    pub subset: Vec<usize>,
    /// Powers a_x >= 0, aligned with `subset`; their sum is bounded by
    /// k + chi((B u E(B)) \ I) - 1.
    pub powers: Vec<u64>,
}

impl GammaElement {
    /// The basis polynomial: the product of the linear forms over the
    /// columns outside B u E(B), times p_x^(a_x + 1) over the subset.
    pub fn poly(&self, cfg: &VectorConfig) -> MPoly {
        let covered = self.basis | self.external;
        let mut f = cfg.point_product(cfg.full_mask() & !covered);
        for (&x, &a) in self.subset.iter().zip(&self.powers) {
            f = f.mul(&cfg.point_form(x).pow(a as usize + 1));
        }
        f
    }
}

/// Power vectors of the given length with sum <= bound, lex ascending.
fn power_vectors(len: usize, bound: i64) -> Vec<Vec<u64>> {
    if bound < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0u64; len];
    fn go(cur: &mut Vec<u64>, pos: usize, left: u64, out: &mut Vec<Vec<u64>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            go(cur, pos + 1, left - v, out);
        }
    }
    go(&mut cur, 0, bound as u64, &mut out);
    out
}

/// Gamma(X, k, J) for k >= 0, in canonical order: bases lex, subsets of
/// I(B) by bitmask over the sorted internal list, powers lex.
pub fn gamma_set(cfg: &VectorConfig, k: i64, j: &UpperSet) -> Result<Vec<GammaElement>> {
    if k < -1 {
        return Err(Error::KBelowMinusOne(k));
    }
    if k < 0 {
        return Err(Error::BadArgument(
            "the Gamma index set is defined for k >= 0".into(),
        ));
    }
    let mut out = Vec::new();
    for basis in enumerate_bases(cfg) {
        let external = external_activity(cfg, basis);
        let internal: Vec<usize> = mask_members(internal_activity(cfg, basis)).collect();
        let covered = basis | external;
        for sub_bits in 0u32..(1 << internal.len()) {
            let subset: Vec<usize> = internal
                .iter()
                .enumerate()
                .filter(|(pos, _)| sub_bits & (1 << pos) != 0)
                .map(|(_, &x)| x)
                .collect();
            let mut i_mask = 0;
            for &x in &subset {
                i_mask |= 1 << x;
            }
            let chi = j.chi(cfg, covered & !i_mask) as i64;
            debug_assert_eq!(chi, j.chi(cfg, basis & !i_mask) as i64);
            let bound = k + chi - 1;
            for powers in power_vectors(subset.len(), bound) {
                out.push(GammaElement {
                    basis,
                    internal: internal.clone(),
                    external,
                    subset: subset.clone(),
                    powers,
                });
            }
        }
    }
    Ok(out)
}

/// The polynomials of Gamma(X, k, J), in Gamma order.
pub fn basis_polys(cfg: &VectorConfig, k: i64, j: &UpperSet) -> Result<Vec<MPoly>> {
    Ok(gamma_set(cfg, k, j)?.iter().map(|g| g.poly(cfg)).collect())
}

/// B_-(X, J): bases whose basis minus its internally active part has chi 1.
pub fn semi_internal_bases(cfg: &VectorConfig, j: &UpperSet) -> Vec<Mask> {
    enumerate_bases(cfg)
        .into_iter()
        .filter(|&b| {
            let i_mask = internal_activity(cfg, b);
            j.chi(cfg, b & !i_mask) == 1
        })
        .collect()
}

/// The heuristic endpoint polynomials p_{X \ (B u E(B))} over B_-.
pub fn semi_internal_polys(cfg: &VectorConfig, j: &UpperSet) -> Vec<MPoly> {
    semi_internal_bases(cfg, j)
        .iter()
        .map(|&b| cfg.point_product(cfg.full_mask() & !(b | external_activity(cfg, b))))
        .collect()
}

/// Column reorder used by the semi-internal counting theorem: a greedy
/// maximal independent subset of C0 (lowest indices first) is moved to the
/// top of the order; everything else keeps its relative order below it.
/// Returns the permutation as new-position -> old-index.
pub fn hrx_order(cfg: &VectorConfig, c0: Mask) -> Vec<usize> {
    let mut chosen: Mask = 0;
    let mut rank = 0;
    for i in mask_members(c0 & cfg.full_mask()) {
        let next = chosen | (1 << i);
        if cfg.rank_of(next) == rank + 1 {
            chosen = next;
            rank += 1;
        }
    }
    let mut perm: Vec<usize> = (0..cfg.n()).filter(|&i| chosen & (1 << i) == 0).collect();
    perm.extend(mask_members(chosen));
    perm
}
