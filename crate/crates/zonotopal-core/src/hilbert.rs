//! Hilbert series by four independent routes (kernel, deletion/contraction
//! recursion, activity enumeration, subset expansion), the Tutte polynomial
//! and its zonotopal evaluations, flow and chromatic polynomials of graphs,
//! and the two Hilbert series formulas for configurations with column
//! multiplicities.

use crate::activity::{
    enumerate_bases, external_activity, hrx_order, internal_activity, semi_internal_bases,
};
use crate::error::{Error, Result};
use crate::ideal::{kernel_i, p_space};
use crate::matroid::{
    graph_to_config, mask_members, GraphInput, Mask, UpperSet, VectorConfig,
};
use crate::scalar::{binomial, Q, Z};
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// A Hilbert series: the coefficient of t^d at index d, trailing zeros
/// trimmed, so the zero series has no coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbSeries {
    coeffs: Vec<u64>,
}

impl HilbSeries {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        HilbSeries { coeffs }
    }

    pub fn zero() -> Self {
        HilbSeries { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        HilbSeries { coeffs: vec![1] }
    }

    /// 1 + t + ... + t^(len-1).
    pub fn ones(len: usize) -> Self {
        HilbSeries { coeffs: vec![1; len] }
    }

    pub fn from_dims(dims: &[usize]) -> Self {
        Self::new(dims.iter().map(|&d| d as u64).collect())
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> u64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total dimension: the value at t = 1.
    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &HilbSeries) -> HilbSeries {
        let len = self.coeffs.len().max(other.coeffs.len());
        HilbSeries::new((0..len).map(|d| self.coeff(d) + other.coeff(d)).collect())
    }

    /// Multiply by t^s.
    pub fn shift(&self, s: usize) -> HilbSeries {
        if self.is_zero() {
            return HilbSeries::zero();
        }
        let mut coeffs = vec![0; s];
        coeffs.extend_from_slice(&self.coeffs);
        HilbSeries { coeffs }
    }
}

impl fmt::Display for HilbSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, d) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (c, 1) => write!(f, "{c}t")?,
                (1, d) => write!(f, "t^{d}")?,
                (c, d) => write!(f, "{c}t^{d}")?,
            }
        }
        Ok(())
    }
}

/// A univariate integer polynomial, coefficients ascending by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZPoly {
    coeffs: Vec<Z>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<Z>) -> Self {
        while coeffs.last().map(Zero::is_zero) == Some(true) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Z::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Z] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let at = |p: &ZPoly, d: usize| p.coeffs.get(d).cloned().unwrap_or_else(Z::zero);
        ZPoly::new((0..len).map(|d| at(self, d) + at(other, d)).collect())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![Z::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn scale(&self, c: &Z) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, e: usize) -> ZPoly {
        let mut out = ZPoly::new(vec![Z::one()]);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &Z) -> Z {
        let mut acc = Z::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for d in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[d];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "t")?,
                1 => write!(f, "{a}t")?,
                d if a.is_one() => write!(f, "t^{d}")?,
                d => write!(f, "{a}t^{d}")?,
            }
        }
        Ok(())
    }
}

/// An integer Laurent polynomial in t, for evaluations involving 1/t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentInt {
    min: i64,
    coeffs: Vec<Z>,
}

impl LaurentInt {
    fn normalized(mut min: i64, mut coeffs: Vec<Z>) -> Self {
        while coeffs.last().map(Zero::is_zero) == Some(true) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            coeffs.drain(..lead);
            min += lead as i64;
        }
        if coeffs.is_empty() {
            min = 0;
        }
        LaurentInt { min, coeffs }
    }

    pub fn zero() -> Self {
        LaurentInt { min: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentInt { min: 0, coeffs: vec![Z::one()] }
    }

    /// c * t^pow.
    pub fn term(c: Z, pow: i64) -> Self {
        Self::normalized(pow, vec![c])
    }

    pub fn t_pow(pow: i64) -> Self {
        Self::term(Z::one(), pow)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &LaurentInt) -> LaurentInt {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let min = self.min.min(other.min);
        let max =
            (self.min + self.coeffs.len() as i64).max(other.min + other.coeffs.len() as i64);
        let mut coeffs = vec![Z::zero(); (max - min) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min - min) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.min - min) as usize + i] += c;
        }
        Self::normalized(min, coeffs)
    }

    pub fn mul(&self, other: &LaurentInt) -> LaurentInt {
        if self.is_zero() || other.is_zero() {
            return LaurentInt::zero();
        }
        let mut coeffs = vec![Z::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::normalized(self.min + other.min, coeffs)
    }

    pub fn pow(&self, e: usize) -> LaurentInt {
        let mut out = LaurentInt::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The polynomial part check: Some only when no negative powers remain.
    pub fn to_zpoly(&self) -> Option<ZPoly> {
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if self.min < 0 {
            return None;
        }
        let mut coeffs = vec![Z::zero(); self.min as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Some(ZPoly::new(coeffs))
    }

    /// Some only for an honest polynomial with nonnegative coefficients.
    pub fn to_hilb(&self) -> Option<HilbSeries> {
        let zp = self.to_zpoly()?;
        let mut coeffs = Vec::with_capacity(zp.coeffs.len());
        for c in &zp.coeffs {
            coeffs.push(c.to_u64()?);
        }
        Some(HilbSeries::new(coeffs))
    }
}

/// The Tutte polynomial: coefficient of x^i y^j at position (i, j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuttePoly {
    coeffs: Vec<Vec<Z>>,
}

impl TuttePoly {
    fn zero_sized(xd: usize, yd: usize) -> Self {
        TuttePoly { coeffs: vec![vec![Z::zero(); yd + 1]; xd + 1] }
    }

    fn one_poly() -> Self {
        TuttePoly { coeffs: vec![vec![Z::one()]] }
    }

    fn trim(mut self) -> Self {
        let nonzero_row = |row: &Vec<Z>| row.iter().any(|c| !c.is_zero());
        while self.coeffs.len() > 1 && !nonzero_row(self.coeffs.last().unwrap()) {
            self.coeffs.pop();
        }
        let width = self
            .coeffs
            .iter()
            .map(|row| row.iter().rposition(|c| !c.is_zero()).map_or(0, |p| p + 1))
            .max()
            .unwrap_or(0)
            .max(1);
        for row in &mut self.coeffs {
            row.truncate(width);
            row.resize(width, Z::zero());
        }
        self
    }

    pub fn coeff(&self, i: usize, j: usize) -> Z {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(Z::zero)
    }

    /// Pairs ((i, j), coefficient) of the nonzero terms, x-degree then
    /// y-degree descending.
    pub fn terms(&self) -> Vec<((usize, usize), Z)> {
        let mut out = Vec::new();
        for i in (0..self.coeffs.len()).rev() {
            for j in (0..self.coeffs[i].len()).rev() {
                if !self.coeffs[i][j].is_zero() {
                    out.push(((i, j), self.coeffs[i][j].clone()));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &TuttePoly) -> TuttePoly {
        let xd = self.coeffs.len().max(other.coeffs.len()) - 1;
        let yd = self.coeffs[0].len().max(other.coeffs[0].len()) - 1;
        let mut out = TuttePoly::zero_sized(xd, yd);
        for (i, row) in out.coeffs.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = self.coeff(i, j) + other.coeff(i, j);
            }
        }
        out.trim()
    }

    fn shift_x(&self) -> TuttePoly {
        let mut coeffs = vec![vec![Z::zero(); self.coeffs[0].len()]];
        coeffs.extend(self.coeffs.iter().cloned());
        TuttePoly { coeffs }
    }

    fn shift_y(&self) -> TuttePoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                let mut r = vec![Z::zero()];
                r.extend(row.iter().cloned());
                r
            })
            .collect();
        TuttePoly { coeffs }
    }

    pub fn eval_int(&self, x: i64, y: i64) -> Z {
        self.eval_laurent(&LaurentInt::term(Z::from(x), 0), &LaurentInt::term(Z::from(y), 0))
            .to_zpoly()
            .expect("constant")
            .eval(&Z::zero())
    }

    pub fn eval_laurent(&self, x: &LaurentInt, y: &LaurentInt) -> LaurentInt {
        let mut acc = LaurentInt::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            let xp = x.pow(i);
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = xp.mul(&y.pow(j)).mul(&LaurentInt::term(c.clone(), 0));
                acc = acc.add(&term);
            }
        }
        acc
    }
}

impl fmt::Display for TuttePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let var = |f: &mut fmt::Formatter<'_>, name: &str, d: usize| -> fmt::Result {
            match d {
                0 => Ok(()),
                1 => write!(f, "{name}"),
                d => write!(f, "{name}^{d}"),
            }
        };
        for (pos, ((i, j), c)) in terms.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() || (*i == 0 && *j == 0) {
                write!(f, "{c}")?;
                if *i > 0 || *j > 0 {
                    write!(f, "*")?;
                }
            }
            var(f, "x", *i)?;
            if *i > 0 && *j > 0 {
                write!(f, "*")?;
            }
            var(f, "y", *j)?;
        }
        Ok(())
    }
}

/// Tutte polynomial by subset expansion:
/// sum over A of (x-1)^(r - rank A) (y-1)^(|A| - rank A).
pub fn tutte(cfg: &VectorConfig) -> TuttePoly {
    let r = cfg.r();
    let mut acc = TuttePoly::zero_sized(r, cfg.n().saturating_sub(r).max(0)).trim();
    for a in 0..=cfg.full_mask() {
        let rk = cfg.rank_of(a);
        let p = r - rk;
        let q = a.count_ones() as usize - rk;
        let mut term = TuttePoly::zero_sized(p, q);
        for i in 0..=p {
            for j in 0..=q {
                let sign = if (p - i + q - j) % 2 == 1 { -Z::one() } else { Z::one() };
                term.coeffs[i][j] = binomial(p, i) * binomial(q, j) * sign;
            }
        }
        acc = acc.add(&term.trim());
    }
    acc.trim()
}

/// Tutte polynomial by deletion/contraction, the independent cross-check.
pub fn tutte_delcon(cfg: &VectorConfig) -> TuttePoly {
    if cfg.n() == 0 {
        return TuttePoly::one_poly();
    }
    if cfg.loops() & 1 != 0 {
        return tutte_delcon(&cfg.delete(0)).shift_y();
    }
    if cfg.coloops() & 1 != 0 {
        return tutte_delcon(&cfg.contract(0).expect("column 0 is not a loop")).shift_x();
    }
    let del = tutte_delcon(&cfg.delete(0));
    let con = tutte_delcon(&cfg.contract(0).expect("column 0 is not a loop"));
    del.add(&con)
}

/// Hilbert series of ker I(X, k, J), the kernel route.
pub fn hilb_kernel(cfg: &VectorConfig, k: i64, j: &UpperSet) -> Result<HilbSeries> {
    Ok(HilbSeries::from_dims(&kernel_i(cfg, k, j, None)?.dims()))
}

/// Hilbert series by deletion/contraction recursion. For k = -1 every node
/// taking a non-coloop step needs J to contain all hyperplanes or none.
pub fn hilb_recursive(cfg: &VectorConfig, k: i64, j: &UpperSet) -> Result<HilbSeries> {
    if k < -1 {
        return Err(Error::KBelowMinusOne(k));
    }
    recurse(cfg, k, j)
}

fn recurse(cfg: &VectorConfig, k: i64, j: &UpperSet) -> Result<HilbSeries> {
    if cfg.loops() != 0 {
        let (stripped, map) = cfg.strip_loops();
        let js = j.strip_loops(cfg, &map);
        return recurse(&stripped, k, &js);
    }
    let r = cfg.r();
    if r == 0 {
        return Ok(HilbSeries::one());
    }
    if r == 1 {
        // one-dimensional closed form: powers of the point up to N - 1 + k
        // plus one more when the bottom flat lies in J
        let chi = i64::from(j.contains_flat(0));
        let len = cfg.n() as i64 + k + chi;
        return Ok(HilbSeries::ones(len.max(0) as usize));
    }
    let coloops = cfg.coloops();
    if let Some(x) = (0..cfg.n()).find(|&x| coloops & (1 << x) == 0) {
        if k == -1 && !j.contains_all_hyperplanes(cfg) && !j.is_central(cfg) {
            return Err(Error::JMissingHyperplanes);
        }
        let del = recurse(&cfg.delete(x), k, &j.delete(cfg, x))?;
        let con = recurse(&cfg.contract(x)?, k, &j.contract(cfg, x))?;
        return Ok(del.shift(1).add(&con));
    }
    // all columns are coloops; split off the first
    let x = 0;
    let deletion_flat_in_j = j.contains_flat(cfg.full_mask() & !1);
    let con = cfg.contract(x)?;
    if k == -1 {
        return if deletion_flat_in_j {
            recurse(&con, -1, &j.contract(cfg, x))
        } else {
            Ok(HilbSeries::zero())
        };
    }
    let eps = i64::from(!deletion_flat_in_j);
    let j_hat = j.hat_contract(cfg, &con, x);
    let mut total = recurse(&con, k, &j.contract(cfg, x))?;
    let mut step = 0;
    while step <= k - eps {
        let part = recurse(&con, k - step, &j_hat)?;
        total = total.add(&part.shift(step as usize + 1));
        step += 1;
    }
    Ok(total)
}

/// Hilbert series by the basis-activity formula, k >= 0 only.
pub fn hilb_activity(cfg: &VectorConfig, k: i64, j: &UpperSet) -> Result<HilbSeries> {
    if k < 0 {
        return Err(Error::MethodInapplicable {
            method: "activity",
            reason: format!("the activity formula needs k >= 0, got {k}"),
        });
    }
    let n = cfg.n();
    let r = cfg.r();
    let mut coeffs = vec![0u64; n + k as usize + 2];
    for b in enumerate_bases(cfg) {
        let base = n - r - external_activity(cfg, b).count_ones() as usize;
        coeffs[base] += 1;
        let iset: Vec<usize> = mask_members(internal_activity(cfg, b)).collect();
        for sub in 1u32..1 << iset.len() {
            let i_mask: Mask = iset
                .iter()
                .enumerate()
                .filter(|&(p, _)| sub >> p & 1 == 1)
                .map(|(_, &x)| 1u32 << x)
                .sum();
            let isz = i_mask.count_ones() as usize;
            let top = j.chi(cfg, b & !i_mask) as i64 + k - 1;
            let mut step = 0i64;
            while step <= top {
                let c = binomial(step as usize + isz - 1, isz - 1)
                    .to_u64()
                    .expect("activity multiplicities fit u64");
                coeffs[base + isz + step as usize] += c;
                step += 1;
            }
        }
    }
    Ok(HilbSeries::new(coeffs))
}

/// Hilbert series for k = 0 by subset expansion:
/// t^(N-r) times the sum of t^(r - rank A) (1/t - 1)^(|A| - rank A) over the
/// subsets A with chi(A) = 1, expanded in the Laurent ring.
pub fn hilb_subset(cfg: &VectorConfig, j: &UpperSet) -> HilbSeries {
    let r = cfg.r();
    let inv = LaurentInt::t_pow(-1).add(&LaurentInt::term(-Z::one(), 0));
    let mut acc = LaurentInt::zero();
    for a in 0..=cfg.full_mask() {
        if j.chi(cfg, a) != 1 {
            continue;
        }
        let rk = cfg.rank_of(a);
        let term = LaurentInt::t_pow((r - rk) as i64).mul(&inv.pow(a.count_ones() as usize - rk));
        acc = acc.add(&term);
    }
    acc.mul(&LaurentInt::t_pow((cfg.n() - r) as i64))
        .to_hilb()
        .expect("subset expansion must produce a nonnegative polynomial")
}

/// The number of independent sets whose closure lies in J; equals
/// hilb_subset at t = 1.
pub fn dim_semi_external(cfg: &VectorConfig, j: &UpperSet) -> u64 {
    (0..=cfg.full_mask())
        .filter(|&y| cfg.is_independent(y) && j.contains_flat(cfg.closure(y)))
        .count() as u64
}

/// Hilbert series of ker I(X, -1, J_C0) counted over the semi-internal bases
/// in the activity-compatible order, cross-checked against the kernel in the
/// original order.
pub fn hilb_semi_internal(cfg: &VectorConfig, c0: Mask) -> Result<HilbSeries> {
    if !cfg.lattice().is_flat(c0) {
        return Err(Error::BadArgument(format!("mask {c0:#b} is not a flat")));
    }
    let order = hrx_order(cfg, c0);
    let rcfg = cfg.permute(&order)?;
    let mut rc0: Mask = 0;
    for (new_i, &old_i) in order.iter().enumerate() {
        if c0 & (1 << old_i) != 0 {
            rc0 |= 1 << new_i;
        }
    }
    let rj = UpperSet::above(&rcfg, rc0);
    let n = rcfg.n();
    let r = rcfg.r();
    let mut coeffs = vec![0u64; n - r + 1];
    for b in semi_internal_bases(&rcfg, &rj) {
        coeffs[n - r - external_activity(&rcfg, b).count_ones() as usize] += 1;
    }
    let series = HilbSeries::new(coeffs);
    let kernel = hilb_kernel(cfg, -1, &UpperSet::above(cfg, c0))?;
    assert_eq!(
        series, kernel,
        "semi-internal count disagrees with the kernel route"
    );
    Ok(series)
}

/// Reference count of nowhere-zero flows with values in Z_modulus, by direct
/// enumeration over all edge assignments.
pub fn count_nowhere_zero_flows(g: &GraphInput, modulus: u64) -> Result<u64> {
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    if modulus < 1 {
        return Err(Error::BadArgument("modulus must be at least 1".into()));
    }
    let m = g.edges.len();
    let mut count = 0u64;
    let mut values = vec![1u64; m];
    if m == 0 {
        return Ok(1);
    }
    'outer: loop {
        let mut net = vec![0i64; g.num_vertices];
        for (e, &(u, v)) in g.edges.iter().enumerate() {
            net[u] += values[e] as i64;
            net[v] -= values[e] as i64;
        }
        if net.iter().all(|&x| x.rem_euclid(modulus as i64) == 0) {
            count += 1;
        }
        for e in 0..m {
            if values[e] + 1 < modulus {
                values[e] += 1;
                continue 'outer;
            }
            values[e] = 1;
        }
        return Ok(count);
    }
}

/// Flow polynomial of a connected graph, through the Hilbert series of the
/// internal space of its incidence configuration:
/// (t-1)^(N-r) hilb(P(X, -1, {X}), 1/(1-t)), simplified exactly.
pub fn flow_polynomial(g: &GraphInput) -> Result<ZPoly> {
    let cfg = graph_to_config(g)?;
    let space = p_space(&cfg, -1, &UpperSet::central(&cfg))?;
    let nr = cfg.n() - cfg.r();
    let mut acc = ZPoly::zero();
    for (d, &dim) in space.dims().iter().enumerate() {
        if dim == 0 {
            continue;
        }
        // h_d (t-1)^(N-r) (1/(1-t))^d = h_d (-1)^d (t-1)^(N-r-d)
        assert!(d <= nr, "internal space degree exceeds N - r");
        let sign = if d % 2 == 1 { -Z::one() } else { Z::one() };
        let term = ZPoly::from_i64(&[-1, 1]).pow(nr - d).scale(&(Z::from(dim) * sign));
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Chromatic polynomial of a connected graph via the Tutte evaluation
/// (-1)^r t T(1 - t, 0).
pub fn chromatic_polynomial(g: &GraphInput) -> Result<ZPoly> {
    let cfg = graph_to_config(g)?;
    let t = tutte(&cfg);
    let one_minus_t = LaurentInt::one().add(&LaurentInt::term(-Z::one(), 1));
    let val = t
        .eval_laurent(&one_minus_t, &LaurentInt::zero())
        .mul(&LaurentInt::t_pow(1));
    let zp = val.to_zpoly().expect("chromatic evaluation is a polynomial");
    Ok(if cfg.r() % 2 == 1 { zp.neg() } else { zp })
}

fn restrict_columns(cfg: &VectorConfig, keep: Mask) -> Result<(VectorConfig, Vec<usize>)> {
    let idx: Vec<usize> = mask_members(keep).collect();
    let cols: Vec<Vec<Q>> = idx.iter().map(|&i| cfg.col(i).to_vec()).collect();
    Ok((VectorConfig::new(cfg.r(), cols)?, idx))
}

/// Reduce (X, a, b) to the columns with positive multiplicity: the surviving
/// configuration, its multiplicities, and the upper set cut out by carrying
/// b over along closures of the surviving hyperplanes.
fn cox_external_reduce(
    cfg: &VectorConfig,
    a: &[u32],
    b: &[bool],
) -> Result<(VectorConfig, Vec<u32>, UpperSet)> {
    if a.len() != cfg.n() {
        return Err(Error::BadArgument(format!(
            "multiplicity vector has length {}, expected {}",
            a.len(),
            cfg.n()
        )));
    }
    let hyps = cfg.lattice().hyperplane_masks();
    if b.len() != hyps.len() {
        return Err(Error::BadArgument(format!(
            "hyperplane vector has length {}, expected {}",
            b.len(),
            hyps.len()
        )));
    }
    let mut keep: Mask = 0;
    for (i, &ai) in a.iter().enumerate() {
        if ai > 0 {
            keep |= 1 << i;
        }
    }
    let (sub, idx) = restrict_columns(cfg, keep)?;
    let ra: Vec<u32> = idx.iter().map(|&i| a[i]).collect();
    let mut bsub = Vec::new();
    for h in sub.lattice().hyperplane_masks() {
        let mut xmask: Mask = 0;
        for (new_i, &old_i) in idx.iter().enumerate() {
            if h & (1 << new_i) != 0 {
                xmask |= 1 << old_i;
            }
        }
        let cl = cfg.closure(xmask);
        let pos = hyps
            .iter()
            .position(|&hm| hm == cl)
            .expect("closure of a corank-1 set is a hyperplane");
        bsub.push(b[pos]);
    }
    let jb = UpperSet::from_hyperplane_mask(&sub, &bsub)?;
    Ok((sub, ra, jb))
}

/// Hilbert series of the multiplicity analogue of the k = 0 space, by the
/// closed binomial formula over subsets and per-column copy counts.
pub fn cox_semiexternal_hilb(cfg: &VectorConfig, a: &[u32], b: &[bool]) -> Result<HilbSeries> {
    let (sub, ra, jb) = cox_external_reduce(cfg, a, b)?;
    let r = sub.r();
    let asum: i64 = ra.iter().map(|&x| x as i64).sum();
    let inv = LaurentInt::t_pow(-1).add(&LaurentInt::term(-Z::one(), 0));
    let mut acc = LaurentInt::zero();
    for amask in 0..=sub.full_mask() {
        if jb.chi(&sub, amask) != 1 {
            continue;
        }
        let rk = sub.rank_of(amask);
        let members: Vec<usize> = mask_members(amask).collect();
        // sum over 1 <= s_i <= a_i of (prod C(a_i, s_i)) (1/t - 1)^(|s| - rank)
        let mut svec: Vec<u32> = vec![1; members.len()];
        loop {
            let ssum: usize = svec.iter().map(|&s| s as usize).sum();
            let mut c = Z::one();
            for (pos, &i) in members.iter().enumerate() {
                c *= binomial(ra[i] as usize, svec[pos] as usize);
            }
            let term = LaurentInt::term(c, (r - rk) as i64).mul(&inv.pow(ssum - rk));
            acc = acc.add(&term);
            let mut done = true;
            for pos in 0..svec.len() {
                if svec[pos] < ra[members[pos]] {
                    svec[pos] += 1;
                    for s in svec.iter_mut().take(pos) {
                        *s = 1;
                    }
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    Ok(acc
        .mul(&LaurentInt::t_pow(asum - r as i64))
        .to_hilb()
        .expect("multiplicity expansion must produce a nonnegative polynomial"))
}

/// The same series through the expansion: replace each column by its copies
/// and run the subset route there.
pub fn cox_semiexternal_lifted(cfg: &VectorConfig, a: &[u32], b: &[bool]) -> Result<HilbSeries> {
    let (sub, ra, jb) = cox_external_reduce(cfg, a, b)?;
    let (expanded, new_to_old) = sub.expand_multiplicity(&ra)?;
    Ok(hilb_subset(&expanded, &jb.expand(&new_to_old)))
}

/// Reduce (X, a, C0) to the positive-multiplicity columns and put the result
/// into the activity-compatible order for the reduced C0.
fn cox_internal_reduce(
    cfg: &VectorConfig,
    a: &[u32],
    c0: Mask,
) -> Result<(VectorConfig, Vec<u32>, Mask)> {
    if a.len() != cfg.n() {
        return Err(Error::BadArgument(format!(
            "multiplicity vector has length {}, expected {}",
            a.len(),
            cfg.n()
        )));
    }
    if !cfg.lattice().is_flat(c0) {
        return Err(Error::BadArgument(format!("mask {c0:#b} is not a flat")));
    }
    let mut keep: Mask = 0;
    for (i, &ai) in a.iter().enumerate() {
        if ai > 0 {
            keep |= 1 << i;
        }
    }
    let (sub, idx) = restrict_columns(cfg, keep)?;
    let mut reduced: Mask = 0;
    for (new_i, &old_i) in idx.iter().enumerate() {
        if c0 & (1 << old_i) != 0 {
            reduced |= 1 << new_i;
        }
    }
    let c0s = sub.closure(reduced);
    let order = hrx_order(&sub, c0s);
    let rcfg = sub.permute(&order)?;
    let ra: Vec<u32> = order.iter().map(|&p| a[idx[p]]).collect();
    let mut rc0: Mask = 0;
    for (new_i, &old_i) in order.iter().enumerate() {
        if c0s & (1 << old_i) != 0 {
            rc0 |= 1 << new_i;
        }
    }
    Ok((rcfg, ra, rc0))
}

/// Hilbert series of ker I(X(a), -1, J_C0) by the copy-shift formula: for
/// every basis B and shift vector s (0 <= s_i <= a_i - 1 on B), the term
/// t^e(B, s) survives when the closure of B minus its zero-shift internally
/// active part lies in J_C0, with
/// e(B, s) = sum of a_i over columns not externally active, minus r, minus
/// the total shift. With all multiplicities 1 this is the semi-internal
/// basis count.
pub fn cox_semiinternal_hilb(cfg: &VectorConfig, a: &[u32], c0: Mask) -> Result<HilbSeries> {
    let (rcfg, ra, rc0) = cox_internal_reduce(cfg, a, c0)?;
    let j = UpperSet::above(&rcfg, rc0);
    let n = rcfg.n();
    let r = rcfg.r();
    let mut coeffs: Vec<u64> = Vec::new();
    for bmask in enumerate_bases(&rcfg) {
        let emask = external_activity(&rcfg, bmask);
        let imask = internal_activity(&rcfg, bmask);
        let base: u64 = (0..n)
            .filter(|&i| emask & (1 << i) == 0)
            .map(|i| ra[i] as u64)
            .sum();
        let bmem: Vec<usize> = mask_members(bmask).collect();
        let mut svec: Vec<u32> = vec![0; bmem.len()];
        loop {
            let mut zero_shift_active: Mask = 0;
            let mut ssum = 0u64;
            for (pos, &i) in bmem.iter().enumerate() {
                ssum += svec[pos] as u64;
                if svec[pos] == 0 && imask & (1 << i) != 0 {
                    zero_shift_active |= 1 << i;
                }
            }
            if j.contains_flat(rcfg.closure(bmask & !zero_shift_active)) {
                let deg = (base - r as u64 - ssum) as usize;
                if coeffs.len() <= deg {
                    coeffs.resize(deg + 1, 0);
                }
                coeffs[deg] += 1;
            }
            let mut done = true;
            for pos in 0..svec.len() {
                if svec[pos] + 1 < ra[bmem[pos]] {
                    svec[pos] += 1;
                    for s in svec.iter_mut().take(pos) {
                        *s = 0;
                    }
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    Ok(HilbSeries::new(coeffs))
}

/// The same series through the expansion: replace each column by its copies
/// and run the kernel route there.
pub fn cox_semiinternal_lifted(cfg: &VectorConfig, a: &[u32], c0: Mask) -> Result<HilbSeries> {
    let (rcfg, ra, rc0) = cox_internal_reduce(cfg, a, c0)?;
    let (expanded, new_to_old) = rcfg.expand_multiplicity(&ra)?;
    let mut exc0: Mask = 0;
    for (new_i, &old_i) in new_to_old.iter().enumerate() {
        if rc0 & (1 << old_i) != 0 {
            exc0 |= 1 << new_i;
        }
    }
    hilb_kernel(&expanded, -1, &UpperSet::above(&expanded, expanded.closure(exc0)))
}
