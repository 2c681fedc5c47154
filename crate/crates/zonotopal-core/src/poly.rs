//! Sparse multivariate polynomials over Q, the differentiation pairing
//! between normal-variable operators and point-variable polynomials, and
//! canonical graded spans.
//!
//! Every space this crate manipulates is graded, so spans are stored per
//! degree as reduced row echelon coefficient matrices; identical subspaces
//! always produce identical representations.

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::scalar::{factorial, falling, Q};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Which polynomial ring a polynomial lives in: symmetric algebra on the
/// ambient space (points / kernel elements) or on its dual (differential
/// operators built from normals).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VarSpace {
    Point,
    Normal,
}

/// Sparse polynomial: exponent vector -> coefficient. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MPoly {
    nvars: usize,
    space: VarSpace,
    terms: BTreeMap<Vec<u16>, Q>,
}

impl MPoly {
    pub fn zero(space: VarSpace, nvars: usize) -> Self {
        MPoly { nvars, space, terms: BTreeMap::new() }
    }

    pub fn constant(space: VarSpace, nvars: usize, c: Q) -> Self {
        let mut p = MPoly::zero(space, nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(space: VarSpace, nvars: usize) -> Self {
        MPoly::constant(space, nvars, Q::one())
    }

    /// Monomial c * prod x_i^{e_i}.
    pub fn monomial(space: VarSpace, exps: Vec<u16>, c: Q) -> Self {
        let mut p = MPoly::zero(space, exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Linear form sum_i coeffs[i] * x_i.
    pub fn linear(space: VarSpace, coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = MPoly::zero(space, n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u16; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: usize = e.iter().map(|&x| x as usize).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return false,
                _ => {}
            }
        }
        true
    }

    pub fn coeff(&self, exps: &[u16]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    fn insert_add(&mut self, exps: Vec<u16>, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.space, other.space);
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.space, self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.space, other.space);
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.space, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> MPoly {
        let mut out = MPoly::one(self.space, self.nvars);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Substitute each variable x_i by the linear form subst[i] (coefficients
    /// over the new variable set). Used for contraction maps and embeddings.
    pub fn substitute_linear(&self, subst: &[Vec<Q>], new_nvars: usize, space: VarSpace) -> MPoly {
        assert_eq!(subst.len(), self.nvars);
        let forms: Vec<MPoly> = subst
            .iter()
            .map(|c| {
                assert_eq!(c.len(), new_nvars);
                MPoly::linear(space, c)
            })
            .collect();
        let mut out = MPoly::zero(space, new_nvars);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(space, new_nvars, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    term = term.mul(&forms[i].pow(ei as usize));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_component(&self, d: usize) -> MPoly {
        let mut out = MPoly::zero(self.space, self.nvars);
        for (e, c) in &self.terms {
            if e.iter().map(|&x| x as usize).sum::<usize>() == d {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }
}

/// The differentiation action of a normal-variable operator on a
/// point-variable polynomial. On terms: a monomial operator with exponent a
/// sends x^b (a <= b componentwise) to prod_i b_i!/(b_i-a_i)! * x^{b-a}.
pub fn apply_diff(op: &MPoly, f: &MPoly) -> MPoly {
    debug_assert_eq!(op.space, VarSpace::Normal);
    debug_assert_eq!(f.space, VarSpace::Point);
    assert_eq!(op.nvars, f.nvars);
    let mut out = MPoly::zero(VarSpace::Point, f.nvars);
    for (a, ca) in &op.terms {
        'term: for (b, cb) in &f.terms {
            let mut coeff = ca * cb;
            let mut e = Vec::with_capacity(b.len());
            for (&ai, &bi) in a.iter().zip(b) {
                if ai > bi {
                    continue 'term;
                }
                if ai > 0 {
                    coeff *= Q::from_integer(falling(bi as usize, ai as usize));
                }
                e.push(bi - ai);
            }
            out.insert_add(e, coeff);
        }
    }
    out
}

/// The apolarity pairing <op, f> = sum over shared exponents a of
/// c_op(a) * c_f(a) * prod_i a_i!.
pub fn pairing(op: &MPoly, f: &MPoly) -> Q {
    debug_assert_eq!(op.space, VarSpace::Normal);
    debug_assert_eq!(f.space, VarSpace::Point);
    assert_eq!(op.nvars, f.nvars);
    let mut acc = Q::zero();
    for (a, ca) in &op.terms {
        if let Some(cf) = f.terms.get(a) {
            let mut fac = Q::one();
            for &ai in a {
                if ai > 1 {
                    fac *= Q::from_integer(factorial(ai as usize));
                }
            }
            acc += ca * cf * fac;
        }
    }
    acc
}

/// All exponent vectors of the given total degree, lexicographically
/// descending (x1-heavy first). Canonical column order for coefficient
/// matrices.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(nvars: usize, pos: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if pos == nvars {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if pos == nvars - 1 {
            cur[pos] = left as u16;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e as u16;
            rec(nvars, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, 0, d, &mut cur, &mut out);
    out
}

/// Monomial basis of one degree with index lookup.
pub struct DegreeMonomials {
    pub monos: Vec<Vec<u16>>,
    pub index: BTreeMap<Vec<u16>, usize>,
}

pub fn degree_monomials(nvars: usize, d: usize) -> DegreeMonomials {
    let monos = monomials_of_degree(nvars, d);
    let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    DegreeMonomials { monos, index }
}

/// Dense coefficient row of a homogeneous polynomial in the canonical
/// monomial order of its degree.
pub fn coeff_row(f: &MPoly, dm: &DegreeMonomials) -> Vec<Q> {
    let mut row = vec![Q::zero(); dm.monos.len()];
    for (e, c) in &f.terms {
        let idx = dm.index.get(e).expect("monomial outside degree basis");
        row[*idx] = c.clone();
    }
    row
}

pub fn poly_from_row(space: VarSpace, nvars: usize, dm: &DegreeMonomials, row: &[Q]) -> MPoly {
    let mut p = MPoly::zero(space, nvars);
    for (j, c) in row.iter().enumerate() {
        if !c.is_zero() {
            p.terms.insert(dm.monos[j].clone(), c.clone());
        }
    }
    p
}

/// One graded component: canonical rref rows over the degree's monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Component {
    matrix: QMatrix,
    pivots: Vec<usize>,
}

impl Component {
    fn empty(ncols: usize) -> Self {
        Component { matrix: QMatrix::zero(0, ncols), pivots: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Reduce a row against the echelon rows; returns the remainder.
    fn reduce(&self, mut row: Vec<Q>) -> Vec<Q> {
        for (i, &p) in self.pivots.iter().enumerate() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in 0..row.len() {
                    let sub = &f * self.matrix.at(i, j);
                    row[j] = std::mem::take(&mut row[j]) - sub;
                }
            }
        }
        row
    }

    fn contains_row(&self, row: Vec<Q>) -> bool {
        self.reduce(row).iter().all(|x| x.is_zero())
    }
}

/// A graded subspace of the polynomial ring, stored degree by degree in
/// canonical echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    space: VarSpace,
    nvars: usize,
    components: Vec<Component>,
}

impl GradedBasis {
    pub fn zero(space: VarSpace, nvars: usize) -> Self {
        GradedBasis { space, nvars, components: Vec::new() }
    }

    /// Span of homogeneous polynomials (zero polys are skipped; inputs must be
    /// homogeneous).
    pub fn span(space: VarSpace, nvars: usize, polys: &[MPoly]) -> Result<Self> {
        let mut by_degree: BTreeMap<usize, Vec<&MPoly>> = BTreeMap::new();
        for p in polys {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return Err(Error::BadArgument("span requires homogeneous polynomials".into()));
            }
            debug_assert_eq!(p.nvars(), nvars);
            by_degree.entry(p.degree().unwrap()).or_default().push(p);
        }
        let max_d = by_degree.keys().last().copied().unwrap_or(0);
        let mut components = Vec::new();
        for d in 0..=max_d {
            let dm = degree_monomials(nvars, d);
            match by_degree.get(&d) {
                None => components.push(Component::empty(dm.monos.len())),
                Some(ps) => {
                    let rows: Vec<Vec<Q>> = ps.iter().map(|p| coeff_row(p, &dm)).collect();
                    let (m, pivots) = QMatrix::from_rows(rows)?.rref();
                    components.push(Component { matrix: m, pivots });
                }
            }
        }
        let mut g = GradedBasis { space, nvars, components };
        g.trim();
        Ok(g)
    }

    /// Install a precomputed canonical component (rows already rref) for a
    /// degree; used by the kernel scan which produces echelon rows directly.
    pub fn push_component(&mut self, d: usize, matrix: QMatrix, pivots: Vec<usize>) {
        while self.components.len() < d {
            let dm = degree_monomials(self.nvars, self.components.len());
            self.components.push(Component::empty(dm.monos.len()));
        }
        assert_eq!(self.components.len(), d, "components must be pushed in degree order");
        self.components.push(Component { matrix, pivots });
    }

    fn trim(&mut self) {
        while self.components.last().is_some_and(|c| c.dim() == 0) {
            self.components.pop();
        }
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> Option<usize> {
        if self.components.is_empty() {
            None
        } else {
            Some(self.components.len() - 1)
        }
    }

    /// Dimension per degree, trailing zeros trimmed.
    pub fn dims(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.components.iter().map(|c| c.dim()).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(|c| c.dim()).sum()
    }

    pub fn dim_at(&self, d: usize) -> usize {
        self.components.get(d).map_or(0, |c| c.dim())
    }

    /// Membership test for a homogeneous polynomial.
    pub fn contains(&self, f: &MPoly) -> bool {
        if f.is_zero() {
            return true;
        }
        if !f.is_homogeneous() {
            return false;
        }
        let d = f.degree().unwrap();
        let Some(c) = self.components.get(d) else {
            return false;
        };
        let dm = degree_monomials(self.nvars, d);
        c.contains_row(coeff_row(f, &dm))
    }

    pub fn contains_space(&self, other: &GradedBasis) -> bool {
        other.polys().iter().all(|p| self.contains(p))
    }

    /// Graded equality. Canonical storage makes this a direct comparison.
    pub fn equals(&self, other: &GradedBasis) -> bool {
        self.components == other.components
    }

    /// Degreewise intersection.
    pub fn intersect(&self, other: &GradedBasis) -> GradedBasis {
        let n = self.components.len().min(other.components.len());
        let mut out = GradedBasis::zero(self.space, self.nvars);
        for d in 0..n {
            let a = &self.components[d];
            let b = &other.components[d];
            let dm_len = a.matrix.cols();
            if a.dim() == 0 || b.dim() == 0 {
                out.components.push(Component::empty(dm_len));
                continue;
            }
            // rows u = (uA, uB) with uA*A + uB*B = 0 give uA*A in the
            // intersection, and every intersection element arises this way.
            let mut stacked = Vec::new();
            for i in 0..a.dim() {
                stacked.push(a.matrix.row_slice(i).to_vec());
            }
            for i in 0..b.dim() {
                stacked.push(b.matrix.row_slice(i).to_vec());
            }
            let stacked = QMatrix::from_rows(stacked).expect("equal row lengths");
            let lns = stacked.left_nullspace();
            let mut rows = Vec::new();
            for u in lns {
                let mut row = vec![Q::zero(); dm_len];
                for (i, coef) in u.iter().take(a.dim()).enumerate() {
                    if !coef.is_zero() {
                        for j in 0..dm_len {
                            let add = coef * a.matrix.at(i, j);
                            row[j] = std::mem::take(&mut row[j]) + add;
                        }
                    }
                }
                rows.push(row);
            }
            let (m, pivots) = QMatrix::from_rows(rows)
                .map(|m| m.rref())
                .unwrap_or_else(|_| (QMatrix::zero(0, dm_len), Vec::new()));
            out.components.push(Component { matrix: m, pivots });
        }
        out.trim();
        out
    }

    /// Degreewise sum.
    pub fn sum(&self, other: &GradedBasis) -> GradedBasis {
        let mut polys = self.polys();
        polys.extend(other.polys());
        GradedBasis::span(self.space, self.nvars, &polys).expect("homogeneous rows")
    }

    /// Canonical basis polynomials, degree by degree.
    pub fn polys(&self) -> Vec<MPoly> {
        let mut out = Vec::new();
        for (d, c) in self.components.iter().enumerate() {
            let dm = degree_monomials(self.nvars, d);
            for i in 0..c.dim() {
                out.push(poly_from_row(self.space, self.nvars, &dm, c.matrix.row_slice(i)));
            }
        }
        out
    }

    /// Multiply the whole space by one polynomial (e.g. a linear form).
    pub fn mul_poly(&self, f: &MPoly) -> GradedBasis {
        let polys: Vec<MPoly> = self.polys().iter().map(|p| p.mul(f)).collect();
        GradedBasis::span(self.space, self.nvars, &polys).expect("homogeneous products")
    }

    /// Apply a linear variable substitution to every basis element and re-span.
    pub fn substitute_linear(&self, subst: &[Vec<Q>], new_nvars: usize) -> GradedBasis {
        let polys: Vec<MPoly> =
            self.polys().iter().map(|p| p.substitute_linear(subst, new_nvars, self.space)).collect();
        GradedBasis::span(self.space, new_nvars, &polys).expect("homogeneous images")
    }
}

/// Variable display names: x,y,z for up to three variables, t1..tn beyond.
pub fn var_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"].iter().take(nvars).map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("t{i}")).collect()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = var_names(self.nvars);
        let mut first = true;
        // highest degree first, then lex descending: matches monomial order
        let mut terms: Vec<(&Vec<u16>, &Q)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: usize = a.0.iter().map(|&x| x as usize).sum();
            let db: usize = b.0.iter().map(|&x| x as usize).sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (e, c) in terms {
            let mut mono = String::new();
            for (i, &ei) in e.iter().enumerate() {
                if ei == 1 {
                    mono.push_str(&format!("{}*", names[i]));
                } else if ei > 1 {
                    mono.push_str(&format!("{}^{}*", names[i], ei));
                }
            }
            let mono = mono.trim_end_matches('*');
            let cs = crate::scalar::format_q(c);
            let (sign, mag) = if let Some(stripped) = cs.strip_prefix('-') {
                ("-", stripped.to_string())
            } else {
                ("+", cs)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}
