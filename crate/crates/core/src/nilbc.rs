//! Bott-Chern cohomology of nilmanifolds from invariant forms.
//!
//! A nilmanifold with left-invariant complex structure is described by
//! structure equations: the differential of each invariant (1,0)-form as a
//! combination of `w^i ^ w^j` (the (2,0) part) and `w^i ^ conj(w^j)` (the
//! (1,1) part); integrability of the complex structure leaves no (0,2)
//! part, and `d` of the conjugate generators is induced by conjugation.
//!
//! The finite-dimensional bicomplex of invariant forms is assembled by the
//! graded Leibniz rule, and the Bott-Chern groups
//! `(ker del intersect ker delbar) / im (del delbar)` are computed by exact
//! linear algebra over Gaussian rationals. Computing with invariant forms
//! identifies these groups with the manifold's Bott-Chern cohomology for
//! the shipped presets (complex tori and the Iwasawa threefold); that
//! identification is assumed, not verified.
//!
//! Coefficients are Gaussian rationals `a + b i` with exact rational parts,
//! so conjugation is exact and no floating point appears anywhere.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rat::{self, Rational};
use crate::report::CheckReport;
use num::Zero;

/// Gaussian rational `re + im * sqrt(-1)` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussQ {
    pub re: Rational,
    pub im: Rational,
}

impl GaussQ {
    pub fn zero() -> Self {
        GaussQ {
            re: rat::rat_int(0),
            im: rat::rat_int(0),
        }
    }

    pub fn one() -> Self {
        GaussQ {
            re: rat::rat_int(1),
            im: rat::rat_int(0),
        }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussQ {
            re,
            im: rat::rat_int(0),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussQ::from_rational(rat::rat_int(n))
    }

    pub fn new(re: Rational, im: Rational) -> Self {
        GaussQ { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussQ {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        GaussQ {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussQ {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussQ {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        let norm = &self.re * &self.re + &self.im * &self.im;
        assert!(!norm.is_zero(), "division by zero Gaussian rational");
        GaussQ {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        }
    }
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            let (neg, abs) = rat::signed_parts(&self.im);
            write!(f, "{}{}{}i", self.re, if neg { " - " } else { " + " }, abs)
        }
    }
}

// ---------------------------------------------------------------------------
// Structure equations
// ---------------------------------------------------------------------------

/// One term of a structure differential: a coefficient and the two indices
/// of the wedge monomial (1-based generator indices).
pub type DTerm = (GaussQ, u32, u32);

/// Differentials of the invariant (1,0)-generators. For generator `k`
/// (1-based), `d_hol[k-1]` holds the (2,0)-part of `d w^k` as terms
/// `c . w^i ^ w^j` with `i < j`, and `d_mix[k-1]` holds the (1,1)-part as
/// terms `c . w^i ^ conj(w^j)`. The conjugate equations are induced.
#[derive(Debug, Clone)]
pub struct StructureEquations {
    n: u32,
    d_hol: Vec<Vec<DTerm>>,
    d_mix: Vec<Vec<DTerm>>,
}

impl StructureEquations {
    /// Validates index ranges and checks `d(d(w^k)) = 0` for every
    /// generator.
    pub fn new(n: u32, d_hol: Vec<Vec<DTerm>>, d_mix: Vec<Vec<DTerm>>) -> Result<Self> {
        if d_hol.len() != n as usize || d_mix.len() != n as usize {
            return Err(Error::Invalid(format!(
                "expected differentials for {n} generators"
            )));
        }
        for (k, terms) in d_hol.iter().enumerate() {
            for (_, i, j) in terms {
                if !(1..=n).contains(i) || !(1..=n).contains(j) || i >= j {
                    return Err(Error::Invalid(format!(
                        "bad (2,0) term indices ({i},{j}) in d w^{}",
                        k + 1
                    )));
                }
            }
        }
        for (k, terms) in d_mix.iter().enumerate() {
            for (_, i, j) in terms {
                if !(1..=n).contains(i) || !(1..=n).contains(j) {
                    return Err(Error::Invalid(format!(
                        "bad (1,1) term indices ({i},{j}) in d w^{}",
                        k + 1
                    )));
                }
            }
        }
        let se = StructureEquations { n, d_hol, d_mix };
        for k in 1..=n {
            let omega = InvariantForm::basis_monomial(n, &[k], &[]);
            let h2 = omega.del(&se);
            let m2 = omega.delbar(&se);
            let dd_30 = h2.del(&se);
            let dd_21 = h2.delbar(&se).add(&m2.del(&se))?;
            let dd_12 = m2.delbar(&se);
            if !dd_30.is_zero() || !dd_21.is_zero() || !dd_12.is_zero() {
                return Err(Error::NotIntegrable(format!("d(d w^{k}) is nonzero")));
            }
        }
        Ok(se)
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    /// Complex torus of dimension `n`: every differential vanishes.
    pub fn torus(n: u32) -> Self {
        StructureEquations {
            n,
            d_hol: vec![vec![]; n as usize],
            d_mix: vec![vec![]; n as usize],
        }
    }

    /// The Iwasawa threefold: `d w^1 = d w^2 = 0`,
    /// `d w^3 = -w^1 ^ w^2`.
    pub fn iwasawa() -> Self {
        let mut d_hol = vec![vec![]; 3];
        d_hol[2] = vec![(GaussQ::from_int(-1), 1, 2)];
        StructureEquations::new(3, d_hol, vec![vec![]; 3]).expect("holomorphic structure")
    }
}

// ---------------------------------------------------------------------------
// Invariant forms
// ---------------------------------------------------------------------------

/// An invariant `(p, q)`-form: Gaussian-rational coefficients on the basis
/// monomials `w^I ^ conj(w^J)` with strictly increasing index sets, stored
/// as bitmasks. Antisymmetry is handled by canonical ordering with tracked
/// signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantForm {
    n: u32,
    p: u32,
    q: u32,
    terms: BTreeMap<(u32, u32), GaussQ>,
}

fn mask_of(indices: &[u32]) -> u32 {
    let mut m = 0u32;
    for &i in indices {
        m |= 1 << (i - 1);
    }
    m
}

fn indices_of(mask: u32) -> Vec<u32> {
    (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

/// Sign of merging two disjoint increasing index blocks `a ^ b` into one
/// increasing block: `(-1)^inversions`.
fn merge_sign(a: u32, b: u32) -> i32 {
    let mut inversions = 0u32;
    for bit in 0..32 {
        if a & (1 << bit) != 0 {
            inversions += (b & ((1u32 << bit) - 1)).count_ones();
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Wedge of two canonical monomials `(h1, a1) ^ (h2, a2)`; `None` when a
/// generator repeats.
fn wedge_monomials(h1: u32, a1: u32, h2: u32, a2: u32) -> Option<((u32, u32), i32)> {
    if h1 & h2 != 0 || a1 & a2 != 0 {
        return None;
    }
    // move the holomorphic block of the second factor past the
    // antiholomorphic block of the first
    let cross = (a1.count_ones() * h2.count_ones()) % 2;
    let mut sign = if cross == 0 { 1 } else { -1 };
    sign *= merge_sign(h1, h2);
    sign *= merge_sign(a1, a2);
    Some(((h1 | h2, a1 | a2), sign))
}

impl InvariantForm {
    pub fn zero(n: u32, p: u32, q: u32) -> Self {
        InvariantForm {
            n,
            p,
            q,
            terms: BTreeMap::new(),
        }
    }

    /// The monomial `w^I ^ conj(w^J)` with coefficient 1. Indices are
    /// 1-based and must be strictly increasing; a repeated or unsorted list
    /// has no canonical sign and is rejected.
    pub fn basis_monomial(n: u32, hol: &[u32], anti: &[u32]) -> Self {
        for block in [hol, anti] {
            assert!(
                block.windows(2).all(|w| w[0] < w[1]),
                "monomial indices must be strictly increasing, got {block:?}"
            );
        }
        let mut form = InvariantForm::zero(n, hol.len() as u32, anti.len() as u32);
        form.add_term(mask_of(hol), mask_of(anti), GaussQ::one());
        form
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.p, self.q)
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussQ)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, hol: u32, anti: u32, c: GaussQ) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(hol.count_ones(), self.p);
        debug_assert_eq!(anti.count_ones(), self.q);
        match self.terms.entry((hol, anti)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.p, self.q) != (other.p, other.q) || self.n != other.n {
            return Err(Error::Invalid("bidegree mismatch in form sum".to_string()));
        }
        let mut out = self.clone();
        for ((h, a), c) in &other.terms {
            out.add_term(*h, *a, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        InvariantForm {
            n: self.n,
            p: self.p,
            q: self.q,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussQ) -> Self {
        if c.is_zero() {
            return InvariantForm::zero(self.n, self.p, self.q);
        }
        InvariantForm {
            n: self.n,
            p: self.p,
            q: self.q,
            terms: self.terms.iter().map(|(k, v)| (*k, v.mul(c))).collect(),
        }
    }

    /// Complex conjugate: a `(q, p)`-form, with the block-swap sign
    /// `(-1)^{pq}` and conjugated coefficients.
    pub fn conj(&self) -> Self {
        let mut out = InvariantForm::zero(self.n, self.q, self.p);
        let swap = if (self.p * self.q).is_multiple_of(2) { 1 } else { -1 };
        for ((h, a), c) in &self.terms {
            let mut coeff = c.conj();
            if swap < 0 {
                coeff = coeff.neg();
            }
            out.add_term(*a, *h, coeff);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Invalid("wedge across different dimensions".to_string()));
        }
        let mut out = InvariantForm::zero(self.n, self.p + other.p, self.q + other.q);
        for ((h1, a1), c1) in &self.terms {
            for ((h2, a2), c2) in &other.terms {
                if let Some(((h, a), sign)) = wedge_monomials(*h1, *a1, *h2, *a2) {
                    let mut c = c1.mul(c2);
                    if sign < 0 {
                        c = c.neg();
                    }
                    out.add_term(h, a, c);
                }
            }
        }
        Ok(out)
    }

    /// Expansion pieces of the differential of one generator factor:
    /// `(coefficient, hol-mask, anti-mask)` of 2-forms.
    fn factor_derivative(
        se: &StructureEquations,
        index: u32,
        factor_is_hol: bool,
        take_del: bool,
    ) -> Vec<(GaussQ, u32, u32)> {
        let k = (index - 1) as usize;
        match (factor_is_hol, take_del) {
            // del w^k: the (2,0) part
            (true, true) => se.d_hol[k]
                .iter()
                .map(|(c, i, j)| (c.clone(), mask_of(&[*i, *j]), 0))
                .collect(),
            // delbar w^k: the (1,1) part
            (true, false) => se.d_mix[k]
                .iter()
                .map(|(c, i, j)| (c.clone(), mask_of(&[*i]), mask_of(&[*j])))
                .collect(),
            // del conj(w^k) = conj(delbar w^k): c w^i ^ conj(w^j) becomes
            // -conj(c) w^j ^ conj(w^i)
            (false, true) => se.d_mix[k]
                .iter()
                .map(|(c, i, j)| (c.conj().neg(), mask_of(&[*j]), mask_of(&[*i])))
                .collect(),
            // delbar conj(w^k) = conj(del w^k): the (0,2) part
            (false, false) => se.d_hol[k]
                .iter()
                .map(|(c, i, j)| (c.conj(), 0, mask_of(&[*i, *j])))
                .collect(),
        }
    }

    fn derive(&self, se: &StructureEquations, take_del: bool) -> Self {
        let (dp, dq) = if take_del { (1, 0) } else { (0, 1) };
        let mut out = InvariantForm::zero(self.n, self.p + dp, self.q + dq);
        for ((hol, anti), coeff) in &self.terms {
            let hol_indices = indices_of(*hol);
            let anti_indices = indices_of(*anti);
            let total = hol_indices.len() + anti_indices.len();
            for t in 0..total {
                let (index, factor_is_hol) = if t < hol_indices.len() {
                    (hol_indices[t], true)
                } else {
                    (anti_indices[t - hol_indices.len()], false)
                };
                // remaining monomial with factor t removed
                let (rest_h, rest_a) = if factor_is_hol {
                    (hol & !(1 << (index - 1)), *anti)
                } else {
                    (*hol, anti & !(1 << (index - 1)))
                };
                let leibniz_sign = if t % 2 == 0 { 1 } else { -1 };
                for (c, dh, da) in Self::factor_derivative(se, index, factor_is_hol, take_del) {
                    if let Some(((h, a), sign)) = wedge_monomials(dh, da, rest_h, rest_a) {
                        let mut term = coeff.mul(&c);
                        if leibniz_sign * sign < 0 {
                            term = term.neg();
                        }
                        out.add_term(h, a, term);
                    }
                }
            }
        }
        out
    }

    /// The holomorphic differential, a `(p+1, q)`-form.
    pub fn del(&self, se: &StructureEquations) -> Self {
        self.derive(se, true)
    }

    /// The antiholomorphic differential, a `(p, q+1)`-form.
    pub fn delbar(&self, se: &StructureEquations) -> Self {
        self.derive(se, false)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for ((h, a), c) in &self.terms {
            let hs: String = indices_of(*h).iter().map(|i| i.to_string()).collect();
            let as_: String = indices_of(*a).iter().map(|i| i.to_string()).collect();
            let name = match (hs.is_empty(), as_.is_empty()) {
                (true, true) => "1".to_string(),
                (false, true) => format!("w^{{{hs}}}"),
                (true, false) => format!("w^{{|{as_}}}"),
                (false, false) => format!("w^{{{hs}|{as_}}}"),
            };
            parts.push(format!("({c})*{name}"));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for InvariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Basis of invariant `(p, q)`-forms in a fixed deterministic order.
pub fn bidegree_basis(n: u32, p: u32, q: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let masks = |k: u32| -> Vec<u32> {
        (0u32..(1 << n)).filter(|m| m.count_ones() == k).collect()
    };
    for h in masks(p) {
        for a in masks(q) {
            out.push((h, a));
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Exact linear algebra over Gaussian rationals
// ---------------------------------------------------------------------------

/// Dense matrix over Gaussian rationals with exact elimination.
#[derive(Debug, Clone)]
pub struct MatrixGQ {
    rows: usize,
    cols: usize,
    data: Vec<Vec<GaussQ>>,
}

impl MatrixGQ {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixGQ {
            rows,
            cols,
            data: vec![vec![GaussQ::zero(); cols]; rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussQ) {
        self.data[r][c] = v;
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussQ {
        &self.data[r][c]
    }

    /// Rank by exact Gaussian elimination (on a working copy).
    #[allow(clippy::needless_range_loop)] // row operations over index ranges
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !work[r][col].is_zero()) else {
                continue;
            };
            work.swap(rank, pivot);
            let inv = work[rank][col].inv();
            for c in col..self.cols {
                work[rank][c] = work[rank][c].mul(&inv);
            }
            for r in 0..self.rows {
                if r != rank && !work[r][col].is_zero() {
                    let factor = work[r][col].clone();
                    for c in col..self.cols {
                        let delta = factor.mul(&work[rank][c]);
                        work[r][c] = work[r][c].sub(&delta);
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Solves `A x = b` exactly; returns any solution, or `None` when the
    /// system is inconsistent.
    #[allow(clippy::needless_range_loop)] // row operations over index ranges
    pub fn solve(&self, b: &[GaussQ]) -> Option<Vec<GaussQ>> {
        assert_eq!(b.len(), self.rows);
        let mut work = self.data.clone();
        let mut rhs = b.to_vec();
        let mut pivot_col_of_row = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(pivot) = (row..self.rows).find(|&r| !work[r][col].is_zero()) else {
                continue;
            };
            work.swap(row, pivot);
            rhs.swap(row, pivot);
            let inv = work[row][col].inv();
            for c in col..self.cols {
                work[row][c] = work[row][c].mul(&inv);
            }
            rhs[row] = rhs[row].mul(&inv);
            for r in 0..self.rows {
                if r != row && !work[r][col].is_zero() {
                    let factor = work[r][col].clone();
                    for c in col..self.cols {
                        let delta = factor.mul(&work[row][c]);
                        work[r][c] = work[r][c].sub(&delta);
                    }
                    let delta = factor.mul(&rhs[row]);
                    rhs[r] = rhs[r].sub(&delta);
                }
            }
            pivot_col_of_row.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        for r in row..self.rows {
            if !rhs[r].is_zero() {
                return None;
            }
        }
        let mut x = vec![GaussQ::zero(); self.cols];
        for (r, col) in pivot_col_of_row.iter().enumerate() {
            x[*col] = rhs[r].clone();
        }
        Some(x)
    }
}

// ---------------------------------------------------------------------------
// The bicomplex and the Bott-Chern groups
// ---------------------------------------------------------------------------

/// The matrices of `del` and `delbar` on every bidegree, with the graded
/// identities verified.
#[derive(Debug)]
pub struct Bicomplex {
    n: u32,
    /// `del[(p, q)]`: matrix of `del: (p,q) -> (p+1,q)` in the bases of
    /// [`bidegree_basis`].
    pub del: BTreeMap<(u32, u32), MatrixGQ>,
    /// `delbar[(p, q)]`: matrix of `delbar: (p,q) -> (p,q+1)`.
    pub delbar: BTreeMap<(u32, u32), MatrixGQ>,
}

fn operator_matrix(
    se: &StructureEquations,
    p: u32,
    q: u32,
    take_del: bool,
) -> MatrixGQ {
    let n = se.dim();
    let source = bidegree_basis(n, p, q);
    let (tp, tq) = if take_del { (p + 1, q) } else { (p, q + 1) };
    let target = bidegree_basis(n, tp, tq);
    let target_index: BTreeMap<(u32, u32), usize> = target
        .iter()
        .copied()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let mut m = MatrixGQ::zero(target.len(), source.len());
    for (j, (h, a)) in source.iter().enumerate() {
        let form = {
            let mut f = InvariantForm::zero(n, p, q);
            f.add_term(*h, *a, GaussQ::one());
            f
        };
        let image = form.derive(se, take_del);
        for (key, c) in image.terms() {
            m.set(target_index[key], j, c.clone());
        }
    }
    m
}

/// Composition of two operator matrices.
fn compose(outer: &MatrixGQ, inner: &MatrixGQ) -> MatrixGQ {
    assert_eq!(outer.cols(), inner.rows());
    let mut out = MatrixGQ::zero(outer.rows(), inner.cols());
    for i in 0..outer.rows() {
        for j in 0..inner.cols() {
            let mut acc = GaussQ::zero();
            for k in 0..outer.cols() {
                acc = acc.add(&outer.get(i, k).mul(inner.get(k, j)));
            }
            out.set(i, j, acc);
        }
    }
    out
}

fn matrix_is_zero(m: &MatrixGQ) -> bool {
    (0..m.rows()).all(|r| (0..m.cols()).all(|c| m.get(r, c).is_zero()))
}

fn matrix_add(a: &MatrixGQ, b: &MatrixGQ) -> MatrixGQ {
    let mut out = MatrixGQ::zero(a.rows(), a.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, a.get(r, c).add(b.get(r, c)));
        }
    }
    out
}

/// Builds the full bicomplex and verifies `del^2 = delbar^2 = 0` and
/// `del delbar + delbar del = 0` on every bidegree.
pub fn build_bicomplex(se: &StructureEquations) -> Result<Bicomplex> {
    let n = se.dim();
    let mut del = BTreeMap::new();
    let mut delbar = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            del.insert((p, q), operator_matrix(se, p, q, true));
            delbar.insert((p, q), operator_matrix(se, p, q, false));
        }
    }
    for p in 0..=n {
        for q in 0..=n {
            if p < n {
                let dd = compose(&del[&(p + 1, q)], &del[&(p, q)]);
                if p + 2 <= n && !matrix_is_zero(&dd) {
                    return Err(Error::NotIntegrable(format!("del^2 != 0 at ({p},{q})")));
                }
            }
            if q < n {
                let dd = compose(&delbar[&(p, q + 1)], &delbar[&(p, q)]);
                if q + 2 <= n && !matrix_is_zero(&dd) {
                    return Err(Error::NotIntegrable(format!("delbar^2 != 0 at ({p},{q})")));
                }
            }
            if p < n && q < n {
                let ab = compose(&delbar[&(p + 1, q)], &del[&(p, q)]);
                let ba = compose(&del[&(p, q + 1)], &delbar[&(p, q)]);
                if !matrix_is_zero(&matrix_add(&ab, &ba)) {
                    return Err(Error::NotIntegrable(format!(
                        "del delbar + delbar del != 0 at ({p},{q})"
                    )));
                }
            }
        }
    }
    Ok(Bicomplex { n, del, delbar })
}

impl Bicomplex {
    pub fn dim(&self) -> u32 {
        self.n
    }
}

fn coords(form: &InvariantForm, basis: &[(u32, u32)]) -> Vec<GaussQ> {
    let index: BTreeMap<(u32, u32), usize> = basis
        .iter()
        .copied()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let mut v = vec![GaussQ::zero(); basis.len()];
    for (key, c) in form.terms() {
        v[index[key]] = c.clone();
    }
    v
}

/// Matrix of `del delbar: (p-1, q-1) -> (p, q)`; `None` when `p` or `q`
/// is zero.
fn del_delbar_matrix(se: &StructureEquations, p: u32, q: u32) -> Option<MatrixGQ> {
    if p == 0 || q == 0 {
        return None;
    }
    let inner = operator_matrix(se, p - 1, q - 1, false); // delbar
    let outer = operator_matrix(se, p - 1, q, true); // del
    Some(compose(&outer, &inner))
}

/// Dimension of the Bott-Chern group at bidegree `(p, q)`:
/// `dim(ker del intersect ker delbar) - rank(del delbar)`.
pub fn bc_dimension(se: &StructureEquations, p: u32, q: u32) -> usize {
    let n = se.dim();
    assert!(p <= n && q <= n, "bidegree out of range");
    let source = bidegree_basis(n, p, q);
    let del = operator_matrix(se, p, q, true);
    let delbar = operator_matrix(se, p, q, false);
    // stacked matrix [del; delbar]
    let mut stacked = MatrixGQ::zero(del.rows() + delbar.rows(), source.len());
    for r in 0..del.rows() {
        for c in 0..source.len() {
            stacked.set(r, c, del.get(r, c).clone());
        }
    }
    for r in 0..delbar.rows() {
        for c in 0..source.len() {
            stacked.set(del.rows() + r, c, delbar.get(r, c).clone());
        }
    }
    let kernel = source.len() - stacked.rank();
    let image = del_delbar_matrix(se, p, q).map_or(0, |m| m.rank());
    kernel - image
}

/// The full table of Bott-Chern dimensions, indexed by `(p, q)`.
pub fn bc_dimension_table(se: &StructureEquations) -> BTreeMap<(u32, u32), usize> {
    let n = se.dim();
    let mut table = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            table.insert((p, q), bc_dimension(se, p, q));
        }
    }
    table
}

/// Outcome of an exactness test: either an explicit potential with
/// `del delbar(potential) = form`, or a rank certificate that none exists.
#[derive(Debug, Clone)]
pub enum BcExactness {
    Exact { primitive: InvariantForm },
    NotExact { image_rank: usize, augmented_rank: usize },
}

/// Decides whether a bi-closed form is `del delbar`-exact, producing an
/// explicit primitive on success.
pub fn is_bc_exact(se: &StructureEquations, form: &InvariantForm) -> Result<BcExactness> {
    let n = se.dim();
    let (p, q) = form.bidegree();
    if !form.del(se).is_zero() || !form.delbar(se).is_zero() {
        return Err(Error::NotAClass(format!(
            "{} is not closed under both differentials",
            form.render()
        )));
    }
    let target = bidegree_basis(n, p, q);
    let rhs = coords(form, &target);
    let Some(matrix) = del_delbar_matrix(se, p, q) else {
        return Ok(if form.is_zero() {
            BcExactness::Exact {
                primitive: InvariantForm::zero(n, p.saturating_sub(1), q.saturating_sub(1)),
            }
        } else {
            BcExactness::NotExact {
                image_rank: 0,
                augmented_rank: 1,
            }
        });
    };
    match matrix.solve(&rhs) {
        Some(x) => {
            let source = bidegree_basis(n, p - 1, q - 1);
            let mut primitive = InvariantForm::zero(n, p - 1, q - 1);
            for (j, c) in x.into_iter().enumerate() {
                let (h, a) = source[j];
                primitive.add_term(h, a, c);
            }
            // the solver's output is re-verified through the operators
            let check = primitive.delbar(se).del(se);
            if &check != form {
                return Err(Error::InconsistencyReport(
                    "solver produced an invalid primitive".to_string(),
                ));
            }
            Ok(BcExactness::Exact { primitive })
        }
        None => {
            let image_rank = matrix.rank();
            // augmented rank via one extra column
            let mut aug = MatrixGQ::zero(matrix.rows(), matrix.cols() + 1);
            for (r, rhs_entry) in rhs.iter().enumerate() {
                for c in 0..matrix.cols() {
                    aug.set(r, c, matrix.get(r, c).clone());
                }
                aug.set(r, matrix.cols(), rhs_entry.clone());
            }
            Ok(BcExactness::NotExact {
                image_rank,
                augmented_rank: aug.rank(),
            })
        }
    }
}

/// The Iwasawa blow-up scenario: certifies that the fiber class bounds
/// (its representative is `del delbar`-exact), assembles the curve blow-up
/// with trivial tangent data, and checks the resulting Chern classes.
pub fn iwasawa_blowup_check() -> Result<Vec<CheckReport>> {
    let se = StructureEquations::iwasawa();
    let mut reports = Vec::new();

    // the bicomplex identities hold
    build_bicomplex(&se)?;
    reports.push(CheckReport::pass(
        "iwasawa-bicomplex",
        "del^2 = delbar^2 = del delbar + delbar del = 0 on all bidegrees",
    ));

    // del delbar(-w^{3|3}) = w^{12|12} as an exact operator identity
    let w33 = InvariantForm::basis_monomial(3, &[3], &[3]);
    let w1212 = InvariantForm::basis_monomial(3, &[1, 2], &[1, 2]);
    let dd = w33.neg().delbar(&se).del(&se);
    reports.push(CheckReport::from_eq(
        "iwasawa-volume-primitive",
        dd == w1212,
        &dd.render(),
        &w1212.render(),
    ));

    // the fiber class is exact, certified by an explicit primitive
    match is_bc_exact(&se, &w1212)? {
        BcExactness::Exact { primitive } => {
            let verified = primitive.delbar(&se).del(&se) == w1212;
            reports.push(CheckReport {
                key: "iwasawa-fiber-class-bounds".to_string(),
                passed: verified,
                detail: format!("primitive {}", primitive.render()),
            });
        }
        BcExactness::NotExact { .. } => {
            reports.push(CheckReport::fail(
                "iwasawa-fiber-class-bounds",
                "no primitive found",
            ));
        }
    }

    // conjugation symmetry of the dimension table, and the volume class
    let table = bc_dimension_table(&se);
    let symmetric = table
        .iter()
        .all(|(&(p, q), &d)| table[&(q, p)] == d);
    reports.push(CheckReport {
        key: "iwasawa-conjugation-symmetry".to_string(),
        passed: symmetric,
        detail: render_table(&table, 3),
    });
    reports.push(CheckReport {
        key: "iwasawa-top-class".to_string(),
        passed: table[&(3, 3)] >= 1,
        detail: format!("h^(3,3) = {}", table[&(3, 3)]),
    });

    // assemble the blow-up along the fiber and read off the Chern classes
    let br = crate::presets::iwasawa_blowup()?;
    let total = br.total_chern()?;
    let e = br.exceptional_class();
    let c1 = br.component(&total, 1);
    reports.push(CheckReport::from_eq(
        "iwasawa-first-chern",
        c1 == br.neg(&e),
        &br.render(&c1),
        &format!("-({})", br.render(&e)),
    ));
    let c2 = br.component(&total, 2);
    reports.push(CheckReport::from_eq(
        "iwasawa-second-chern",
        c2.is_zero(),
        &br.render(&c2),
        "0",
    ));
    let c3 = br.component(&total, 3);
    reports.push(CheckReport::from_eq(
        "iwasawa-third-chern",
        c3.is_zero(),
        &br.render(&c3),
        "0",
    ));
    Ok(reports)
}

/// Renders a dimension table row by row, `q` increasing left to right.
pub fn render_table(table: &BTreeMap<(u32, u32), usize>, n: u32) -> String {
    let mut lines = Vec::new();
    for p in 0..=n {
        let row: Vec<String> = (0..=n).map(|q| table[&(p, q)].to_string()).collect();
        lines.push(format!("p={p}: [{}]", row.join(", ")));
    }
    lines.join("; ")
}
