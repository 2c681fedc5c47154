//! Vector configurations over Q, their lattices of flats, upper sets of
//! flats, deletion/contraction, and defining normals for flats.
//!
//! Columns are indexed 0..n and subsets are bitmasks, so n is capped at
//! [`MAX_COLS`]. Flats are stored as closed column masks; closures always
//! contain every loop (zero column).

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::scalar::{primitive_integer, Q, Z};
use num::{One, Zero};
use once_cell::sync::OnceCell;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::{BTreeMap, BTreeSet};

/// Column subset bitmask.
pub type Mask = u32;

/// Maximum supported number of columns.
pub const MAX_COLS: usize = 24;

/// A configuration of n column vectors spanning Q^r (r may be 0 for fully
/// contracted configurations).
#[derive(Debug, Clone)]
pub struct VectorConfig {
    r: usize,
    n: usize,
    cols: Vec<Vec<Q>>,
    lattice: OnceCell<Lattice>,
}

impl PartialEq for VectorConfig {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.cols == other.cols
    }
}
impl Eq for VectorConfig {}

impl VectorConfig {
    /// Build from columns; requires the columns to span Q^r.
    pub fn new(r: usize, cols: Vec<Vec<Q>>) -> Result<Self> {
        if cols.len() > MAX_COLS {
            return Err(Error::TooManyColumns(cols.len()));
        }
        if cols.iter().any(|c| c.len() != r) {
            return Err(Error::BadMatrix("column length differs from ambient dimension".into()));
        }
        let cfg =
            VectorConfig { r, n: cols.len(), cols, lattice: OnceCell::new() };
        let rank = cfg.rank_of(cfg.full_mask());
        if rank < r {
            return Err(Error::RankDrop { rank, dim: r });
        }
        Ok(cfg)
    }

    /// Build from a row-major matrix (rows = coordinates, columns = vectors).
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::BadMatrix("matrix has no rows".into()));
        }
        let n = rows[0].len();
        if rows.iter().any(|row| row.len() != n) {
            return Err(Error::BadMatrix("rows have unequal lengths".into()));
        }
        if n == 0 {
            return Err(Error::BadMatrix("matrix has no columns".into()));
        }
        let cols = (0..n).map(|j| rows.iter().map(|row| row[j].clone()).collect()).collect();
        VectorConfig::new(r, cols)
    }

    /// Integer-entry convenience constructor used heavily in tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        VectorConfig::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| Q::from_integer(Z::from(x))).collect())
                .collect(),
        )
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn col(&self, i: usize) -> &[Q] {
        &self.cols[i]
    }

    pub fn cols(&self) -> &[Vec<Q>] {
        &self.cols
    }

    pub fn full_mask(&self) -> Mask {
        if self.n == 0 {
            0
        } else {
            ((1u64 << self.n) - 1) as Mask
        }
    }

    fn selected_rows(&self, mask: Mask) -> QMatrix {
        let rows: Vec<Vec<Q>> =
            mask_members(mask).map(|i| self.cols[i].clone()).collect();
        if rows.is_empty() {
            QMatrix::zero(0, self.r)
        } else {
            QMatrix::from_rows(rows).expect("equal column lengths")
        }
    }

    /// Rank of the subconfiguration indexed by `mask`.
    pub fn rank_of(&self, mask: Mask) -> usize {
        self.selected_rows(mask).rank()
    }

    /// Closure: every column whose addition keeps the rank.
    pub fn closure(&self, mask: Mask) -> Mask {
        let (ech, _) = self.selected_rows(mask).rref();
        let mut out = 0;
        for i in 0..self.n {
            if mask & (1 << i) != 0 || in_row_space(&ech, &self.cols[i]) {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn is_independent(&self, mask: Mask) -> bool {
        self.rank_of(mask) == mask.count_ones() as usize
    }

    pub fn is_spanning(&self, mask: Mask) -> bool {
        self.rank_of(mask) == self.r
    }

    /// Mask of zero columns.
    pub fn loops(&self) -> Mask {
        let mut m = 0;
        for i in 0..self.n {
            if self.cols[i].iter().all(|x| x.is_zero()) {
                m |= 1 << i;
            }
        }
        m
    }

    /// Mask of columns contained in every basis (deletion drops the rank).
    pub fn coloops(&self) -> Mask {
        let mut m = 0;
        for i in 0..self.n {
            if self.rank_of(self.full_mask() & !(1 << i)) < self.r {
                m |= 1 << i;
            }
        }
        m
    }

    /// Lattice of flats (cached).
    pub fn lattice(&self) -> &Lattice {
        self.lattice.get_or_init(|| Lattice::build(self))
    }

    /// Delete column x. The result may fail to span if x was a coloop; this
    /// is the caller's responsibility (recursions only delete non-coloops).
    pub fn delete(&self, x: usize) -> VectorConfig {
        let cols: Vec<Vec<Q>> = self
            .cols
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != x)
            .map(|(_, c)| c.clone())
            .collect();
        // keep the ambient dimension; spanning is lost only for coloops
        VectorConfig { r: self.r, n: self.n - 1, cols, lattice: OnceCell::new() }
    }

    /// Contract a non-loop column x: extend x greedily to a basis by standard
    /// basis vectors (in index order), rewrite in that basis, drop the
    /// x-coordinate.
    pub fn contract(&self, x: usize) -> Result<VectorConfig> {
        self.contract_with_maps(x).map(|c| c.config)
    }

    /// Contraction together with its coordinate data (see [`Contraction`]).
    pub fn contract_with_maps(&self, x: usize) -> Result<Contraction> {
        if self.cols[x].iter().all(|c| c.is_zero()) {
            return Err(Error::ContractLoop(x));
        }
        let r = self.r;
        let mut basis_cols: Vec<Vec<Q>> = vec![self.cols[x].clone()];
        let mut embed_vars: Vec<usize> = Vec::with_capacity(r - 1);
        for i in 0..r {
            if basis_cols.len() == r {
                break;
            }
            let mut e = vec![Q::zero(); r];
            e[i] = Q::one();
            let mut probe = basis_cols.clone();
            probe.push(e.clone());
            let rank = QMatrix::from_rows(probe).expect("equal lengths").rank();
            if rank == basis_cols.len() + 1 {
                basis_cols.push(e);
                embed_vars.push(i);
            }
        }
        debug_assert_eq!(basis_cols.len(), r);
        // P has the chosen basis as columns; coordinates of y are P^{-1} y
        let mut p = QMatrix::zero(r, r);
        for (j, b) in basis_cols.iter().enumerate() {
            for i in 0..r {
                *p.at_mut(i, j) = b[i].clone();
            }
        }
        let pinv = p.inverse().expect("basis extension is invertible");
        let mut cols = Vec::with_capacity(self.n - 1);
        for (i, y) in self.cols.iter().enumerate() {
            if i == x {
                continue;
            }
            let c = pinv.mat_vec(y);
            cols.push(c[1..].to_vec());
        }
        // old variable i maps to the quotient coordinates of e_i
        let point_map = (0..r)
            .map(|i| (1..r).map(|row| pinv.at(row, i).clone()).collect())
            .collect();
        let config =
            VectorConfig { r: r - 1, n: self.n - 1, cols, lattice: OnceCell::new() };
        Ok(Contraction { config, point_map, embed_vars })
    }

    /// Apply an invertible linear transform to every column.
    pub fn apply_transform(&self, m: &QMatrix) -> Result<VectorConfig> {
        if m.rows() != self.r || m.cols() != self.r {
            return Err(Error::BadMatrix("transform has wrong shape".into()));
        }
        if m.inverse().is_none() {
            return Err(Error::BadMatrix("transform is singular".into()));
        }
        let cols = self.cols.iter().map(|c| m.mat_vec(c)).collect();
        VectorConfig::new(self.r, cols)
    }

    /// Reorder columns: new column j is old column perm[j].
    pub fn permute(&self, perm: &[usize]) -> Result<VectorConfig> {
        if perm.len() != self.n {
            return Err(Error::BadArgument("permutation length mismatch".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::BadArgument("not a permutation".into()));
            }
            seen[p] = true;
        }
        let cols = perm.iter().map(|&p| self.cols[p].clone()).collect();
        VectorConfig::new(self.r, cols)
    }

    /// Repeat column i a[i] times (a[i] = 0 drops it). The expansion must
    /// still span. Returns the expansion and the map from new to old indices.
    pub fn expand_multiplicity(&self, a: &[u32]) -> Result<(VectorConfig, Vec<usize>)> {
        if a.len() != self.n {
            return Err(Error::BadArgument("multiplicity vector length mismatch".into()));
        }
        let mut cols = Vec::new();
        let mut map = Vec::new();
        for (i, &ai) in a.iter().enumerate() {
            for _ in 0..ai {
                cols.push(self.cols[i].clone());
                map.push(i);
            }
        }
        let cfg = VectorConfig::new(self.r, cols)?;
        Ok((cfg, map))
    }

    /// Remove zero columns. Returns the stripped configuration and the map
    /// from new to old indices.
    pub fn strip_loops(&self) -> (VectorConfig, Vec<usize>) {
        let loops = self.loops();
        if loops == 0 {
            return (self.clone(), (0..self.n).collect());
        }
        let mut cols = Vec::new();
        let mut map = Vec::new();
        for i in 0..self.n {
            if loops & (1 << i) == 0 {
                cols.push(self.cols[i].clone());
                map.push(i);
            }
        }
        (
            VectorConfig { r: self.r, n: cols.len(), cols, lattice: OnceCell::new() },
            map,
        )
    }

    /// The linear form p_x of column x, in point variables.
    pub fn point_form(&self, x: usize) -> crate::poly::MPoly {
        crate::poly::MPoly::linear(crate::poly::VarSpace::Point, &self.cols[x])
    }

    /// p_Y = prod over members of the mask of p_x (1 for the empty mask).
    pub fn point_product(&self, mask: Mask) -> crate::poly::MPoly {
        let mut f = crate::poly::MPoly::one(crate::poly::VarSpace::Point, self.r);
        for i in mask_members(mask) {
            f = f.mul(&self.point_form(i));
        }
        f
    }
}

/// A contraction X/x together with its coordinate maps: `point_map[i]` is
/// the linear form (in the r-1 quotient variables) that old variable i maps
/// to, and `embed_vars[j]` is the old standard coordinate giving quotient
/// variable j, usable to rename quotient polynomials back into the big ring.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub config: VectorConfig,
    pub point_map: Vec<Vec<Q>>,
    pub embed_vars: Vec<usize>,
}

/// Iterate over the set bits of a mask.
pub fn mask_members(mask: Mask) -> impl Iterator<Item = usize> {
    (0..MAX_COLS).filter(move |i| mask & (1 << i) != 0)
}

/// Remove index x from a mask, shifting higher indices down.
pub fn mask_delete(mask: Mask, x: usize) -> Mask {
    let low = mask & ((1 << x) - 1);
    let high = (mask >> (x + 1)) << x;
    low | high
}

fn in_row_space(echelon: &QMatrix, v: &[Q]) -> bool {
    let mut row = v.to_vec();
    for i in 0..echelon.rows() {
        // pivot = first nonzero col of echelon row i
        let Some(p) = (0..echelon.cols()).find(|&j| !echelon.at(i, j).is_zero()) else {
            continue;
        };
        if !row[p].is_zero() {
            let f = row[p].clone() / echelon.at(i, p);
            for j in 0..row.len() {
                let sub = &f * echelon.at(i, j);
                row[j] = std::mem::take(&mut row[j]) - sub;
            }
        }
    }
    row.iter().all(|x| x.is_zero())
}

/// One flat: closed column mask plus rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flat {
    pub mask: Mask,
    pub rank: usize,
}

/// The lattice of flats, sorted by (rank, mask).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    flats: Vec<Flat>,
    index: BTreeMap<Mask, usize>,
    hyperplanes: Vec<usize>,
}

impl Lattice {
    fn build(cfg: &VectorConfig) -> Lattice {
        let mut closed: BTreeSet<Mask> = BTreeSet::new();
        // closures of independent sets reach every flat
        let mut indep_seen: BTreeSet<Mask> = BTreeSet::new();
        let mut stack: Vec<(Mask, usize)> = vec![(0, 0)];
        indep_seen.insert(0);
        closed.insert(cfg.closure(0));
        while let Some((mask, rank)) = stack.pop() {
            for i in 0..cfg.n {
                if mask & (1 << i) != 0 {
                    continue;
                }
                let next = mask | (1 << i);
                if indep_seen.contains(&next) {
                    continue;
                }
                if cfg.rank_of(next) == rank + 1 {
                    indep_seen.insert(next);
                    closed.insert(cfg.closure(next));
                    stack.push((next, rank + 1));
                }
            }
        }
        let mut flats: Vec<Flat> =
            closed.into_iter().map(|mask| Flat { mask, rank: cfg.rank_of(mask) }).collect();
        flats.sort_by_key(|f| (f.rank, f.mask));
        let index = flats.iter().enumerate().map(|(i, f)| (f.mask, i)).collect();
        let hyperplanes = flats
            .iter()
            .enumerate()
            .filter(|(_, f)| cfg.r >= 1 && f.rank == cfg.r - 1)
            .map(|(i, _)| i)
            .collect();
        Lattice { flats, index, hyperplanes }
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flat_id(&self, mask: Mask) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    pub fn is_flat(&self, mask: Mask) -> bool {
        self.index.contains_key(&mask)
    }

    /// Hyperplane flats (rank r-1), in lattice order (mask ascending).
    pub fn hyperplane_masks(&self) -> Vec<Mask> {
        self.hyperplanes.iter().map(|&i| self.flats[i].mask).collect()
    }

    pub fn bottom(&self) -> Flat {
        self.flats[0]
    }

    pub fn top(&self) -> Flat {
        *self.flats.last().expect("lattice is nonempty")
    }
}

/// An upper set of flats, stored by closed mask. Always contains the top
/// flat; see [`UpperSet::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperSet {
    members: BTreeSet<Mask>,
}

impl UpperSet {
    /// {X}: just the top flat.
    pub fn central(cfg: &VectorConfig) -> UpperSet {
        let mut members = BTreeSet::new();
        members.insert(cfg.lattice().top().mask);
        UpperSet { members }
    }

    /// The whole lattice of flats.
    pub fn full(cfg: &VectorConfig) -> UpperSet {
        UpperSet { members: cfg.lattice().flats().iter().map(|f| f.mask).collect() }
    }

    /// Upper set generated by the closures of the given column sets (plus the
    /// top flat).
    pub fn from_generators(cfg: &VectorConfig, gens: &[Mask]) -> UpperSet {
        let gen_flats: Vec<Mask> = gens.iter().map(|&g| cfg.closure(g)).collect();
        let mut members = BTreeSet::new();
        members.insert(cfg.lattice().top().mask);
        for f in cfg.lattice().flats() {
            if gen_flats.iter().any(|&g| f.mask & g == g) {
                members.insert(f.mask);
            }
        }
        UpperSet { members }
    }

    /// J_{C0}: all flats containing the closure of the given column set.
    pub fn above(cfg: &VectorConfig, c0: Mask) -> UpperSet {
        UpperSet::from_generators(cfg, &[c0])
    }

    /// J_b from a 0/1 vector over the hyperplanes in lattice order: flats all
    /// of whose covering hyperplanes have b = 1.
    pub fn from_hyperplane_mask(cfg: &VectorConfig, b: &[bool]) -> Result<UpperSet> {
        let hyps = cfg.lattice().hyperplane_masks();
        if b.len() != hyps.len() {
            return Err(Error::BadUpperSet(format!(
                "hyperplane mask has {} entries, expected {}",
                b.len(),
                hyps.len()
            )));
        }
        let mut members = BTreeSet::new();
        for f in cfg.lattice().flats() {
            // f sits inside hyperplane h iff f.mask & h == f.mask
            let blocked =
                hyps.iter().zip(b).any(|(&h, &bh)| !bh && (f.mask & h) == f.mask);
            if !blocked {
                members.insert(f.mask);
            }
        }
        Ok(UpperSet { members })
    }

    /// Raw member construction; validate afterwards.
    pub fn from_flat_masks(masks: impl IntoIterator<Item = Mask>) -> UpperSet {
        UpperSet { members: masks.into_iter().collect() }
    }

    pub fn members(&self) -> impl Iterator<Item = Mask> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_flat(&self, mask: Mask) -> bool {
        self.members.contains(&mask)
    }

    /// chi extended to arbitrary column sets through the closure.
    pub fn chi(&self, cfg: &VectorConfig, subset: Mask) -> u64 {
        if self.members.contains(&cfg.closure(subset)) {
            1
        } else {
            0
        }
    }

    /// Nonempty, members are flats, upward closed.
    pub fn validate(&self, cfg: &VectorConfig) -> Result<()> {
        if self.members.is_empty() {
            return Err(Error::BadUpperSet("upper set is empty".into()));
        }
        let lat = cfg.lattice();
        for &m in &self.members {
            if !lat.is_flat(m) {
                return Err(Error::BadUpperSet(format!("mask {m:#b} is not a flat")));
            }
        }
        for f in lat.flats() {
            if self.members.iter().any(|&m| f.mask & m == m && f.mask != m)
                && !self.members.contains(&f.mask)
            {
                return Err(Error::BadUpperSet("upper set is not upward closed".into()));
            }
        }
        Ok(())
    }

    /// Does J contain every hyperplane?
    pub fn contains_all_hyperplanes(&self, cfg: &VectorConfig) -> bool {
        cfg.lattice().hyperplane_masks().iter().all(|h| self.members.contains(h))
    }

    /// Is J exactly the central upper set {X}?
    pub fn is_central(&self, cfg: &VectorConfig) -> bool {
        self.members.len() == 1 && self.contains_flat(cfg.lattice().top().mask)
    }

    /// Maximal flats outside J.
    pub fn maximal_missing(&self, cfg: &VectorConfig) -> Vec<Mask> {
        let lat = cfg.lattice();
        let mut out = Vec::new();
        for f in lat.flats() {
            if self.members.contains(&f.mask) {
                continue;
            }
            let covered = lat.flats().iter().any(|g| {
                g.mask != f.mask && g.mask & f.mask == f.mask && !self.members.contains(&g.mask)
            });
            if !covered {
                out.push(f.mask);
            }
        }
        out
    }

    /// J \ x on the deleted configuration: flats C in J with
    /// clos(C \ x) = C, reindexed.
    pub fn delete(&self, cfg: &VectorConfig, x: usize) -> UpperSet {
        let mut members = BTreeSet::new();
        for &c in &self.members {
            let c_minus = c & !(1 << x);
            if cfg.closure(c_minus) == c {
                members.insert(mask_delete(c_minus, x));
            }
        }
        UpperSet { members }
    }

    /// J / x on the contracted configuration: images of flats in J that
    /// contain x.
    pub fn contract(&self, _cfg: &VectorConfig, x: usize) -> UpperSet {
        let mut members = BTreeSet::new();
        for &c in &self.members {
            if c & (1 << x) != 0 {
                members.insert(mask_delete(c, x));
            }
        }
        UpperSet { members }
    }

    /// hat-J / x for a coloop x: images of flats in J avoiding x, plus the
    /// top flat of X/x.
    pub fn hat_contract(&self, cfg: &VectorConfig, con: &VectorConfig, x: usize) -> UpperSet {
        debug_assert!(cfg.coloops() & (1 << x) != 0, "hat_contract requires a coloop");
        let mut members = BTreeSet::new();
        members.insert(con.lattice().top().mask);
        for &c in &self.members {
            if c & (1 << x) == 0 {
                let img = mask_delete(c, x);
                debug_assert!(con.lattice().is_flat(img), "coloop images are flats");
                members.insert(img);
            }
        }
        UpperSet { members }
    }

    /// Transfer along a column permutation of the configuration: new mask
    /// bit j corresponds to old bit perm[j].
    pub fn permute(&self, perm: &[usize]) -> UpperSet {
        let mut members = BTreeSet::new();
        for &c in &self.members {
            let mut m = 0;
            for (new_i, &old_i) in perm.iter().enumerate() {
                if c & (1 << old_i) != 0 {
                    m |= 1 << new_i;
                }
            }
            members.insert(m);
        }
        UpperSet { members }
    }

    /// Transfer to a multiplicity expansion (all multiplicities >= 1 makes
    /// the lattices isomorphic; copies travel together).
    pub fn expand(&self, new_to_old: &[usize]) -> UpperSet {
        let mut members = BTreeSet::new();
        for &c in &self.members {
            let mut m = 0;
            for (new_i, &old_i) in new_to_old.iter().enumerate() {
                if c & (1 << old_i) != 0 {
                    m |= 1 << new_i;
                }
            }
            members.insert(m);
        }
        UpperSet { members }
    }

    /// Transfer along loop stripping (new index i was old index map[i]).
    pub fn strip_loops(&self, cfg: &VectorConfig, new_to_old: &[usize]) -> UpperSet {
        let loops = cfg.loops();
        let mut members = BTreeSet::new();
        for &c in &self.members {
            debug_assert_eq!(c & loops, loops, "flats contain all loops");
            let mut m = 0;
            for (new_i, &old_i) in new_to_old.iter().enumerate() {
                if c & (1 << old_i) != 0 {
                    m |= 1 << new_i;
                }
            }
            members.insert(m);
        }
        UpperSet { members }
    }
}

/// m(C): number of columns outside the flat.
pub fn m_of(cfg: &VectorConfig, flat: Mask) -> usize {
    cfg.n() - flat.count_ones() as usize
}

/// Primitive integer basis of the annihilator of span(flat): all eta with
/// eta(x) = 0 for every column x in the flat.
pub fn annihilator_basis(cfg: &VectorConfig, flat: Mask) -> Vec<Vec<Z>> {
    let rows: Vec<Vec<Q>> = mask_members(flat).map(|i| cfg.col(i).to_vec()).collect();
    let m = if rows.is_empty() {
        QMatrix::zero(0, cfg.r())
    } else {
        QMatrix::from_rows(rows).expect("equal lengths")
    };
    m.nullspace().iter().map(|v| primitive_integer(v)).collect()
}

/// How to pick one defining normal per flat (of corank >= 2; hyperplane
/// normals are unique up to sign).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalSelector {
    /// Deterministic search over integer coefficient boxes.
    Auto,
    /// Seeded random sampling (deterministic per (seed, flat)).
    Seeded(u64),
}

/// A defining normal for a proper flat: integer, primitive, vanishing exactly
/// on the flat's columns.
pub fn defining_normal(cfg: &VectorConfig, flat: Mask, sel: NormalSelector) -> Result<Vec<Z>> {
    let basis = annihilator_basis(cfg, flat);
    if basis.is_empty() {
        return Err(Error::BadArgument(
            "the top flat has no defining normal".into(),
        ));
    }
    let outside: Vec<usize> =
        (0..cfg.n()).filter(|&i| flat & (1 << i) == 0).collect();
    let valid = |coeffs: &[i64]| -> Option<Vec<Z>> {
        if coeffs.iter().all(|&c| c == 0) {
            return None;
        }
        let mut eta = vec![Z::zero(); cfg.r()];
        for (c, b) in coeffs.iter().zip(&basis) {
            for (acc, bi) in eta.iter_mut().zip(b) {
                *acc += bi * Z::from(*c);
            }
        }
        for &i in &outside {
            let mut dot = Q::zero();
            for (e, x) in eta.iter().zip(cfg.col(i)) {
                dot += Q::from_integer(e.clone()) * x;
            }
            if dot.is_zero() {
                return None;
            }
        }
        Some(eta)
    };
    let normalize = |eta: Vec<Z>| -> Vec<Z> {
        let as_q: Vec<Q> = eta.into_iter().map(Q::from_integer).collect();
        primitive_integer(&as_q)
    };
    let c = basis.len();
    match sel {
        NormalSelector::Auto => {
            for radius in 1i64..=64 {
                // all coefficient tuples with max-norm exactly `radius`,
                // ordered by (sum of absolute values, lex)
                let side = 2 * radius + 1;
                let mut shell: Vec<Vec<i64>> = Vec::new();
                let total = (side as u128).pow(c as u32);
                for idx in 0..total {
                    let mut rem = idx;
                    let mut cand = vec![0i64; c];
                    for slot in cand.iter_mut().rev() {
                        *slot = (rem % side as u128) as i64 - radius;
                        rem /= side as u128;
                    }
                    if cand.iter().any(|&x| x.abs() == radius) {
                        shell.push(cand);
                    }
                }
                shell.sort_by_key(|v| {
                    (v.iter().map(|x| x.abs()).sum::<i64>(), v.clone())
                });
                for cand in shell {
                    if let Some(eta) = valid(&cand) {
                        return Ok(normalize(eta));
                    }
                }
            }
            unreachable!("a valid normal exists in a bounded box");
        }
        NormalSelector::Seeded(seed) => {
            let mix = seed ^ (flat as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let mut rng = StdRng::seed_from_u64(mix);
            let mut range = 3i64;
            let mut fails = 0u32;
            loop {
                let cand: Vec<i64> = (0..c).map(|_| rng.gen_range(-range..=range)).collect();
                if let Some(eta) = valid(&cand) {
                    return Ok(normalize(eta));
                }
                fails += 1;
                if fails % 64 == 0 {
                    range += 1;
                }
            }
        }
    }
}

/// 0/1 matrix: rows = hyperplanes in lattice order, entry (i, j) = 1 iff
/// column j is outside hyperplane i.
pub fn noncontainment_matrix(cfg: &VectorConfig) -> (Vec<Mask>, Vec<Vec<u8>>) {
    let hyps = cfg.lattice().hyperplane_masks();
    let rows = hyps
        .iter()
        .map(|&h| (0..cfg.n()).map(|j| u8::from(h & (1 << j) == 0)).collect())
        .collect();
    (hyps, rows)
}

/// A multigraph given by vertex count and (tail, head) edges, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInput {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphInput {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::BadGraph("graph needs at least one vertex".into()));
        }
        for &(t, h) in &edges {
            if t >= num_vertices || h >= num_vertices {
                return Err(Error::BadGraph(format!("edge ({t},{h}) out of range")));
            }
        }
        Ok(GraphInput { num_vertices, edges })
    }

    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.num_vertices).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(t, h) in &self.edges {
            let (a, b) = (find(&mut parent, t), find(&mut parent, h));
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.num_vertices).map(|v| find(&mut parent, v)).collect::<BTreeSet<_>>().len() == 1
    }
}

/// Oriented incidence configuration of a connected graph with the last
/// vertex's row removed: one column per edge, +1 at the head, -1 at the tail.
pub fn graph_to_config(g: &GraphInput) -> Result<VectorConfig> {
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let r = g.num_vertices - 1;
    let mut cols = Vec::with_capacity(g.edges.len());
    for &(t, h) in &g.edges {
        let mut c = vec![Q::zero(); r];
        if h < r {
            c[h] += Q::one();
        }
        if t < r {
            c[t] -= Q::one();
        }
        cols.push(c);
    }
    VectorConfig::new(r, cols)
}
