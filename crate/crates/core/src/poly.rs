//! Sparse multivariate polynomial kernel over exact rationals.
//!
//! A [`Poly`] stores nonzero coefficients on [`Monomial`]s in a `BTreeMap`
//! ordered by graded lexicographic order: higher weighted degree first, ties
//! broken by exponent comparison with the earliest-declared variable most
//! significant. Each monomial caches its weighted total degree so products
//! never need to consult the variable degree table.
//!
//! Invariants:
//! - no zero coefficient is ever stored;
//! - all monomials in one polynomial have the same number of variables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::rat::{self, Rational};
use num::Zero;

/// Exponent vector with cached weighted total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    /// Builds a monomial from an exponent vector and the per-variable
    /// weighted degrees.
    pub fn new(exps: Vec<u32>, var_degrees: &[u32]) -> Self {
        assert_eq!(exps.len(), var_degrees.len(), "exponent/degree mismatch");
        let degree = exps
            .iter()
            .zip(var_degrees)
            .map(|(e, d)| e * d)
            .sum::<u32>();
        Monomial { degree, exps }
    }

    pub fn unit(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; nvars],
        }
    }

    pub fn var(i: usize, nvars: usize, var_degrees: &[u32]) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial::new(exps, var_degrees)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_unit(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            degree: self.degree + other.degree,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn quotient_into(&self, other: &Self) -> Self {
        debug_assert!(self.divides(other));
        Monomial {
            degree: other.degree - self.degree,
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    /// True when the two monomials share no variable.
    pub fn disjoint_support(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Least common multiple; the weighted degree is recomputed from
    /// `var_degrees`.
    pub fn lcm_of(a: &Self, b: &Self, var_degrees: &[u32]) -> Self {
        let exps: Vec<u32> = a
            .exps
            .iter()
            .zip(&b.exps)
            .map(|(x, y)| *x.max(y))
            .collect();
        Monomial::new(exps, var_degrees)
    }
}

/// Sparse polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, rat::rat_int(1))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(nvars), c);
        }
        p
    }

    pub fn var(i: usize, nvars: usize, var_degrees: &[u32]) -> Self {
        Poly::from_monomial(Monomial::var(i, nvars, var_degrees), rat::rat_int(1))
    }

    pub fn from_monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::unit(self.nvars))
    }

    /// Greatest monomial in graded-lex order, with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Product truncated above `max_degree`; skips dead term pairs early.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            if ma.degree() > max_degree {
                continue;
            }
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > max_degree {
                    continue;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (mm, cc) in &self.terms {
            out.add_term(mm.mul(m), cc * c);
        }
        out
    }

    pub fn pow_truncated(&self, e: u32, max_degree: u32) -> Self {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul_truncated(self, max_degree);
        }
        acc
    }

    /// Drops all terms of weighted degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous part of weighted degree `k`.
    pub fn component(&self, k: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Some(d)` when every monomial has weighted degree `d` (zero counts as
    /// homogeneous of any degree and reports `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = it.next()?.degree();
        if it.all(|m| m.degree() == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Exact division by the variable `i` (of weighted degree `var_degree`).
    /// Fails with `DivisibilityViolation` if any monomial misses the variable.
    pub fn divide_by_var(&self, i: usize, var_degree: u32) -> Result<Self> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.exps[i] == 0 {
                return Err(Error::DivisibilityViolation(format!(
                    "monomial {:?} has no factor of variable {}",
                    m.exps, i
                )));
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            out.add_term(
                Monomial {
                    degree: m.degree - var_degree,
                    exps,
                },
                c.clone(),
            );
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series with constant term 1, truncated at
    /// `max_degree` (geometric series in the augmentation part).
    pub fn inverse_truncated(&self, max_degree: u32) -> Result<Self> {
        let c0 = self.constant_term();
        if !rat::is_one(&c0) {
            return Err(Error::NotUnital(c0.to_string()));
        }
        let mut tail = self.clone();
        tail.add_term(Monomial::unit(self.nvars), rat::rat_int(-1));
        let tail = tail.neg(); // 1 - self
        let mut acc = Poly::one(self.nvars);
        let mut power = Poly::one(self.nvars);
        // tail has no constant term, so powers gain at least one degree each.
        for _ in 0..max_degree {
            power = power.mul_truncated(&tail, max_degree);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc)
    }

    /// Evaluates the polynomial in any commutative algebra, mapping variable
    /// `i` to `images[i]`.
    pub fn eval<T: AlgebraElem>(&self, one: &T, zero: &T, images: &[T]) -> T {
        assert_eq!(images.len(), self.nvars, "image count mismatch");
        let mut acc = zero.clone();
        for (m, c) in &self.terms {
            let mut term = one.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul_elem(&images[i]);
                }
            }
            acc = acc.add_elem(&term.scale_elem(c));
        }
        acc
    }

    /// Renders with the given variable names; terms are printed by ascending
    /// degree, descending lex within a degree.
    pub fn render(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| b.exps.cmp(&a.exps))
        });
        let mut out = String::new();
        for (idx, m) in keys.iter().enumerate() {
            let c = &self.terms[*m];
            let (neg, abs) = rat::signed_parts(c);
            let mono = render_monomial(m, names);
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&abs);
            } else if abs == "1" {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{}*{}", abs, mono);
            }
        }
        out
    }
}

fn render_monomial(m: &Monomial, names: &[&str]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 1 {
            parts.push(names[i].to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", names[i], e));
        }
    }
    parts.join("*")
}

/// Minimal commutative-algebra interface for [`Poly::eval`].
pub trait AlgebraElem: Clone {
    fn add_elem(&self, other: &Self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
    fn scale_elem(&self, c: &Rational) -> Self;
}

impl AlgebraElem for Poly {
    fn add_elem(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scale_elem(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

impl AlgebraElem for Rational {
    fn add_elem(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_elem(&self, c: &Rational) -> Self {
        self * c
    }
}
