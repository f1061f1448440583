//! Symmetric-function calculus over Chern roots.
//!
//! Chern roots never appear inside ring elements; they exist only inside the
//! universal computations of this module, whose outputs are polynomials in
//! the elementary symmetric classes. A root computation works in a scratch
//! polynomial ring with one degree-1 variable per root, gets reduced to the
//! elementary basis by leading-monomial subtraction under graded-lex order,
//! and is then specialized at actual Chern classes of a presented ring.
//!
//! Newton sums carry the factorial normalization
//! `S_k = (x_1^k + ... + x_r^k) / k!`, and the conversion polynomials `P_m`
//! (elementary to Newton) and `Q_m` (Newton to elementary) are generated on
//! demand and cached per degree. The cache is a mutex-guarded map: single
//! writer on first use, then shared reads of immutable `Arc`s.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::gring::{GradedClass, RingRef};
use crate::poly::{Monomial, Poly};
use crate::rat::{self, Rational};

/// A polynomial in two groups of degree-1 root variables, verified at
/// construction to be invariant under permutations within each group.
#[derive(Debug, Clone)]
pub struct SymmetricPoly {
    nvars_x: usize,
    nvars_y: usize,
    poly: Poly,
}

impl SymmetricPoly {
    /// Wraps a polynomial in `u + v` root variables, checking invariance
    /// under all adjacent transpositions of the x-block and of the y-block
    /// (adjacent transpositions generate the full symmetric groups).
    pub fn new(poly: Poly, nvars_x: usize, nvars_y: usize) -> Result<Self> {
        if poly.nvars() != nvars_x + nvars_y {
            return Err(Error::Invalid(format!(
                "expected {} root variables, polynomial has {}",
                nvars_x + nvars_y,
                poly.nvars()
            )));
        }
        for i in 0..nvars_x.saturating_sub(1) {
            if swap_vars(&poly, i, i + 1) != poly {
                return Err(Error::Invalid(format!(
                    "not symmetric under x{} <-> x{}",
                    i + 1,
                    i + 2
                )));
            }
        }
        for j in 0..nvars_y.saturating_sub(1) {
            let a = nvars_x + j;
            if swap_vars(&poly, a, a + 1) != poly {
                return Err(Error::Invalid(format!(
                    "not symmetric under y{} <-> y{}",
                    j + 1,
                    j + 2
                )));
            }
        }
        Ok(SymmetricPoly {
            nvars_x,
            nvars_y,
            poly,
        })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }
}

fn swap_vars(p: &Poly, i: usize, j: usize) -> Poly {
    let degrees = vec![1u32; p.nvars()];
    let mut out = Poly::zero(p.nvars());
    for (m, c) in p.terms() {
        let mut exps = m.exps().to_vec();
        exps.swap(i, j);
        out.add_term(Monomial::new(exps, &degrees), c.clone());
    }
    out
}

/// Degree table for the elementary-basis output ring: `z_1..z_u` of degrees
/// `1..u` followed by `w_1..w_v` of degrees `1..v`.
pub fn elementary_degrees(u: usize, v: usize) -> Vec<u32> {
    (1..=u as u32).chain(1..=v as u32).collect()
}

/// Elementary symmetric polynomial `e_k` of the variable block starting at
/// `offset` with `count` variables, inside an `nvars`-variable ring.
pub fn elementary_poly(k: usize, offset: usize, count: usize, nvars: usize) -> Poly {
    let degrees = vec![1u32; nvars];
    let mut acc = Poly::zero(nvars);
    for subset in combinations(count, k) {
        let mut exps = vec![0u32; nvars];
        for s in subset {
            exps[offset + s] = 1;
        }
        acc.add_term(Monomial::new(exps, &degrees), rat::rat_int(1));
    }
    acc
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rewrites a doubly symmetric polynomial as a polynomial in the elementary
/// symmetric functions of each block, by repeated subtraction of the leading
/// elementary product. The output lives in the variable layout of
/// [`elementary_degrees`].
pub fn reduce_to_elementary(sym: &SymmetricPoly) -> Result<Poly> {
    let u = sym.nvars_x;
    let v = sym.nvars_y;
    let out_degrees = elementary_degrees(u, v);
    let mut out = Poly::zero(u + v);

    let ex: Vec<Poly> = (0..=u).map(|k| elementary_poly(k, 0, u, u + v)).collect();
    let ey: Vec<Poly> = (0..=v).map(|k| elementary_poly(k, u, v, u + v)).collect();

    let max_deg = sym.poly.max_degree();
    for d in 0..=max_deg {
        let mut work = sym.poly.component(d);
        while let Some((lm, lc)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let exps = lm.exps();
            let lambda = &exps[..u];
            let mu = &exps[u..];
            if !is_non_increasing(lambda) || !is_non_increasing(mu) {
                return Err(Error::Invalid(format!(
                    "leading monomial {exps:?} is not a partition pair; input not symmetric"
                )));
            }
            let mut e_exps = vec![0u32; u + v];
            let mut subtract = Poly::one(u + v);
            for i in 0..u {
                let next = if i + 1 < u { lambda[i + 1] } else { 0 };
                let a = lambda[i] - next;
                if a > 0 {
                    e_exps[i] = a;
                    subtract = subtract.mul(&ex[i + 1].pow_truncated(a, u32::MAX));
                }
            }
            for j in 0..v {
                let next = if j + 1 < v { mu[j + 1] } else { 0 };
                let b = mu[j] - next;
                if b > 0 {
                    e_exps[u + j] = b;
                    subtract = subtract.mul(&ey[j + 1].pow_truncated(b, u32::MAX));
                }
            }
            out.add_term(Monomial::new(e_exps, &out_degrees), lc.clone());
            work = work.sub(&subtract.scale(&lc));
        }
    }
    Ok(out)
}

fn is_non_increasing(xs: &[u32]) -> bool {
    xs.windows(2).all(|w| w[0] >= w[1])
}

// ---------------------------------------------------------------------------
// Newton / elementary conversion polynomials, cached per degree.
// ---------------------------------------------------------------------------

type PolyCache = Mutex<BTreeMap<u32, Arc<Poly>>>;

fn p_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

fn q_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// `P_m`: polynomial in variables `T_1..T_m` of weighted degree `1..m` with
/// `S_m = P_m(sigma_1, ..., sigma_m)`.
pub fn newton_conversion(m: u32) -> Arc<Poly> {
    if let Some(p) = p_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let nvars = m as usize;
    let degrees: Vec<u32> = (1..=m).collect();
    // power sums by the classical recursion:
    // p_k = sum_{i=1..k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    let mut power: Vec<Poly> = vec![Poly::zero(nvars); nvars + 1];
    for k in 1..=nvars {
        let mut acc = Poly::zero(nvars);
        for i in 1..k {
            let ei = Poly::var(i - 1, nvars, &degrees);
            acc = acc.add(&ei.mul(&power[k - i]).scale(&rat::alt_sign((i - 1) as u32)));
        }
        let ek = Poly::var(k - 1, nvars, &degrees);
        acc = acc.add(&ek.scale(&(rat::alt_sign((k - 1) as u32) * rat::rat_int(k as i64))));
        power[k] = acc;
    }
    let result = Arc::new(
        power[nvars]
            .clone()
            .scale(&(rat::rat_int(1) / rat::big_to_rat(rat::factorial(m)))),
    );
    p_cache().lock().unwrap().insert(m, result.clone());
    result
}

/// `Q_m`: polynomial in variables `T_1..T_m` of weighted degree `1..m` with
/// `sigma_m = Q_m(S_1, ..., S_m)`.
pub fn elementary_conversion(m: u32) -> Arc<Poly> {
    if let Some(p) = q_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let nvars = m as usize;
    let degrees: Vec<u32> = (1..=m).collect();
    // e_k = (1/k) sum_{i=1..k} (-1)^{i-1} p_i e_{k-i} with p_i = i! S_i
    let mut elem: Vec<Poly> = vec![Poly::zero(nvars); nvars + 1];
    elem[0] = Poly::one(nvars);
    for k in 1..=nvars {
        let mut acc = Poly::zero(nvars);
        for i in 1..=k {
            let si = Poly::var(i - 1, nvars, &degrees);
            let coeff = rat::alt_sign((i - 1) as u32) * rat::big_to_rat(rat::factorial(i as u32));
            acc = acc.add(&si.mul(&elem[k - i]).scale(&coeff));
        }
        elem[k] = acc.scale(&rat::rat(1, k as i64));
    }
    let result = Arc::new(elem[nvars].clone());
    q_cache().lock().unwrap().insert(m, result.clone());
    result
}

fn check_indexed_degrees(values: &[GradedClass], what: &str) -> Result<()> {
    for (k, val) in values.iter().enumerate() {
        let expected = (k + 1) as u32;
        if !val.is_zero() && val.homogeneous_degree() != Some(expected) {
            return Err(Error::DegreeMismatch {
                index: expected,
                expected,
                found: format!("{what}_{expected} = {}", val.render()),
            });
        }
    }
    Ok(())
}

/// `S_m` from the elementary classes `sigma_1..sigma_m`.
pub fn newton_from_elementary(m: u32, sigma: &[GradedClass]) -> Result<GradedClass> {
    if sigma.len() != m as usize || m == 0 {
        return Err(Error::Invalid(format!(
            "expected {m} elementary inputs (m >= 1), got {}",
            sigma.len()
        )));
    }
    check_indexed_degrees(sigma, "sigma")?;
    let ring = sigma[0].ring().clone();
    let p = newton_conversion(m);
    Ok(p.eval(&GradedClass::one(&ring), &GradedClass::zero(&ring), sigma))
}

/// `sigma_m` from the Newton classes `S_1..S_m`.
pub fn elementary_from_newton(m: u32, s: &[GradedClass]) -> Result<GradedClass> {
    if s.len() != m as usize || m == 0 {
        return Err(Error::Invalid(format!(
            "expected {m} Newton inputs (m >= 1), got {}",
            s.len()
        )));
    }
    check_indexed_degrees(s, "S")?;
    let ring = s[0].ring().clone();
    let q = elementary_conversion(m);
    Ok(q.eval(&GradedClass::one(&ring), &GradedClass::zero(&ring), s))
}

// ---------------------------------------------------------------------------
// Total classes
// ---------------------------------------------------------------------------

/// A unital total class `1 + higher terms`; invertible in the truncated ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalClass {
    cls: GradedClass,
}

// GradedClass equality already accounts for ring identity.

impl TotalClass {
    pub fn new(cls: GradedClass) -> Result<Self> {
        let c0 = cls.constant_term();
        if !rat::is_one(&c0) {
            return Err(Error::NotUnital(c0.to_string()));
        }
        Ok(TotalClass { cls })
    }

    pub fn one(ring: &RingRef) -> Self {
        TotalClass {
            cls: GradedClass::one(ring),
        }
    }

    pub fn class(&self) -> &GradedClass {
        &self.cls
    }

    pub fn into_class(self) -> GradedClass {
        self.cls
    }

    pub fn ring(&self) -> &RingRef {
        self.cls.ring()
    }

    pub fn component(&self, k: u32) -> GradedClass {
        self.cls.component(k)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(TotalClass {
            cls: self.cls.mul(&other.cls)?,
        })
    }

    /// Inverse by the geometric series in the positive-degree part; exact in
    /// the truncated ring, so `t * t^{-1} = 1` on the nose.
    pub fn inv(&self) -> Result<Self> {
        let ring = self.cls.ring().clone();
        let one = GradedClass::one(&ring);
        let tail = self.cls.sub(&one)?;
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..ring.dim() {
            power = power.mul(&tail)?.neg();
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(TotalClass { cls: acc })
    }
}

// ---------------------------------------------------------------------------
// Formal bundles
// ---------------------------------------------------------------------------

/// A rank together with Chern classes `c_1..c_rank` in a presented ring.
/// The unit total class is implicit; `c_i = 0` for `i > rank`.
#[derive(Debug, Clone)]
pub struct FormalBundle {
    ring: RingRef,
    rank: u32,
    chern: Vec<GradedClass>,
}

impl PartialEq for FormalBundle {
    fn eq(&self, other: &Self) -> bool {
        self.ring.id() == other.ring.id() && self.rank == other.rank && self.chern == other.chern
    }
}

impl Eq for FormalBundle {}

impl FormalBundle {
    pub fn new(ring: &RingRef, rank: u32, chern: Vec<GradedClass>) -> Result<Self> {
        if chern.len() != rank as usize {
            return Err(Error::Invalid(format!(
                "rank {rank} bundle needs {rank} Chern classes, got {}",
                chern.len()
            )));
        }
        for (k, c) in chern.iter().enumerate() {
            if c.ring().id() != ring.id() {
                return Err(Error::RingMismatch(format!("Chern class {}", k + 1)));
            }
            let expected = (k + 1) as u32;
            if !c.is_zero() && c.homogeneous_degree() != Some(expected) {
                return Err(Error::DegreeMismatch {
                    index: expected,
                    expected,
                    found: c.render(),
                });
            }
        }
        Ok(FormalBundle {
            ring: ring.clone(),
            rank,
            chern,
        })
    }

    pub fn trivial(ring: &RingRef, rank: u32) -> Self {
        FormalBundle {
            ring: ring.clone(),
            rank,
            chern: vec![GradedClass::zero(ring); rank as usize],
        }
    }

    pub fn line(c1: GradedClass) -> Result<Self> {
        let ring = c1.ring().clone();
        FormalBundle::new(&ring, 1, vec![c1])
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `c_k`, with `c_0 = 1` and `c_k = 0` for `k > rank`.
    pub fn chern(&self, k: u32) -> GradedClass {
        if k == 0 {
            return GradedClass::one(&self.ring);
        }
        self.chern
            .get((k - 1) as usize)
            .cloned()
            .unwrap_or_else(|| GradedClass::zero(&self.ring))
    }

    pub fn chern_list(&self) -> &[GradedClass] {
        &self.chern
    }

    /// Total class `1 + c_1 + ... + c_rank`.
    pub fn total(&self) -> TotalClass {
        let mut acc = GradedClass::one(&self.ring);
        for c in &self.chern {
            acc = acc.add(c).expect("same ring");
        }
        TotalClass { cls: acc }
    }

    /// Dual bundle: `c_i -> (-1)^i c_i`.
    pub fn dual(&self) -> Self {
        let chern = self
            .chern
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&rat::alt_sign((k + 1) as u32)))
            .collect();
        FormalBundle {
            ring: self.ring.clone(),
            rank: self.rank,
            chern,
        }
    }

    /// Exterior power via Chern roots: the roots of the i-th wedge are the
    /// sums of roots over i-element subsets.
    pub fn wedge(&self, i: u32) -> Result<Self> {
        if i > self.rank {
            return Err(Error::IndexError {
                index: i,
                max: self.rank,
            });
        }
        let u = self.rank as usize;
        let dim = self.ring.dim();
        let degrees = vec![1u32; u];
        let mut total = Poly::one(u);
        for subset in combinations(u, i as usize) {
            let mut root = Poly::zero(u);
            for s in subset {
                root = root.add(&Poly::var(s, u, &degrees));
            }
            total = total.mul_truncated(&Poly::one(u).add(&root), dim);
        }
        let new_rank = count_combinations(u, i as usize);
        self.bundle_from_universal_total(total, u, 0, &[], new_rank)
    }

    /// Tensor product via Chern roots: the roots are the pairwise sums.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.ring.id() != other.ring.id() {
            return Err(Error::RingMismatch("tensor of bundles".to_string()));
        }
        if self.rank == 0 || other.rank == 0 {
            return Ok(FormalBundle::trivial(&self.ring, 0));
        }
        let u = self.rank as usize;
        let v = other.rank as usize;
        let dim = self.ring.dim();
        let nvars = u + v;
        let degrees = vec![1u32; nvars];
        let mut total = Poly::one(nvars);
        for i in 0..u {
            for j in 0..v {
                let root = Poly::var(i, nvars, &degrees).add(&Poly::var(u + j, nvars, &degrees));
                total = total.mul_truncated(&Poly::one(nvars).add(&root), dim);
            }
        }
        let new_rank = self.rank * other.rank;
        self.bundle_from_universal_total(total, u, v, other.chern_list(), new_rank)
    }

    fn bundle_from_universal_total(
        &self,
        total: Poly,
        u: usize,
        v: usize,
        other_chern: &[GradedClass],
        new_rank: u32,
    ) -> Result<Self> {
        let sym = SymmetricPoly::new(total, u, v)?;
        let reduced = reduce_to_elementary(&sym)?;
        let mut images = Vec::with_capacity(u + v);
        for k in 1..=u {
            images.push(self.chern(k as u32));
        }
        for k in 1..=v {
            images.push(
                other_chern
                    .get(k - 1)
                    .cloned()
                    .unwrap_or_else(|| GradedClass::zero(&self.ring)),
            );
        }
        let specialized = reduced.eval(
            &GradedClass::one(&self.ring),
            &GradedClass::zero(&self.ring),
            &images,
        );
        let chern: Vec<GradedClass> = (1..=new_rank).map(|k| specialized.component(k)).collect();
        FormalBundle::new(&self.ring, new_rank, chern)
    }

    /// Chern character `rank + sum_m S_m` with `S_m = P_m(c_1..c_m)` in the
    /// factorial normalization, truncated at the ring dimension.
    pub fn chern_character(&self) -> GradedClass {
        let ring = &self.ring;
        let mut acc = GradedClass::scalar(ring, rat::rat_int(self.rank as i64));
        for m in 1..=ring.dim() {
            let sigma: Vec<GradedClass> = (1..=m).map(|k| self.chern(k)).collect();
            let p = newton_conversion(m);
            let sm = p.eval(&GradedClass::one(ring), &GradedClass::zero(ring), &sigma);
            acc = acc.add(&sm).expect("same ring");
        }
        acc
    }

    /// Todd class `prod_i x_i / (1 - e^{-x_i})`, truncated at the ring
    /// dimension and reduced to the Chern classes.
    pub fn todd(&self) -> Result<GradedClass> {
        let ring = &self.ring;
        let dim = ring.dim();
        if self.rank == 0 {
            return Ok(GradedClass::one(ring));
        }
        let u = self.rank as usize;
        let degrees = vec![1u32; u];
        let coeffs = todd_coefficients(dim);
        let mut total = Poly::one(u);
        for i in 0..u {
            let x = Poly::var(i, u, &degrees);
            let mut factor = Poly::zero(u);
            let mut xk = Poly::one(u);
            for c in coeffs.iter() {
                factor = factor.add(&xk.scale(c));
                xk = xk.mul_truncated(&x, dim);
            }
            total = total.mul_truncated(&factor, dim);
        }
        let sym = SymmetricPoly::new(total, u, 0)?;
        let reduced = reduce_to_elementary(&sym)?;
        let images: Vec<GradedClass> = (1..=u).map(|k| self.chern(k as u32)).collect();
        Ok(reduced.eval(&GradedClass::one(ring), &GradedClass::zero(ring), &images))
    }
}

fn count_combinations(n: usize, k: usize) -> u32 {
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc as u32
}

/// Coefficients of `x / (1 - e^{-x})` up to degree `max_degree`.
pub fn todd_coefficients(max_degree: u32) -> Vec<Rational> {
    // (1 - e^{-x})/x = sum_{k>=0} (-1)^k x^k / (k+1)!; invert the series.
    let n = max_degree as usize;
    let a: Vec<Rational> = (0..=n)
        .map(|k| rat::alt_sign(k as u32) / rat::big_to_rat(rat::factorial(k as u32 + 1)))
        .collect();
    invert_series(&a)
}

/// Coefficients of `1 / sum a_k x^k` given `a_0 = 1`.
pub fn invert_series(a: &[Rational]) -> Vec<Rational> {
    assert!(rat::is_one(&a[0]), "series must start with 1");
    let mut b = vec![rat::rat_int(0); a.len()];
    b[0] = rat::rat_int(1);
    for n in 1..a.len() {
        let mut acc = rat::rat_int(0);
        for k in 1..=n {
            acc += &a[k] * &b[n - k];
        }
        b[n] = -acc;
    }
    b
}

/// `sum coeffs[k] * x^k` evaluated over graded classes.
pub fn series_in_class(coeffs: &[Rational], x: &GradedClass) -> GradedClass {
    let ring = x.ring();
    let mut acc = GradedClass::zero(ring);
    let mut xk = GradedClass::one(ring);
    for (idx, c) in coeffs.iter().enumerate() {
        acc = acc.add(&xk.scale(c)).expect("same ring");
        if idx + 1 < coeffs.len() {
            xk = xk.mul(x).expect("same ring");
            if xk.is_zero() {
                break;
            }
        }
    }
    acc
}

/// Coefficients of `e^x` up to `max_degree`.
pub fn exp_coefficients(max_degree: u32) -> Vec<Rational> {
    (0..=max_degree)
        .map(|k| rat::rat_int(1) / rat::big_to_rat(rat::factorial(k)))
        .collect()
}
