//! The universal power series of Riemann-Roch without denominators.
//!
//! For bundles `U` of rank `u` and `V` of rank `v` there is a unique power
//! series `f(z_1..z_u; w_1..w_v)` with integer coefficients such that
//!
//! ```text
//! prod_{i=0}^{u} c(wedge^i U* (x) V)^{(-1)^i} - 1 = c_u(U) * f(U, V)
//! ```
//!
//! where `f(U, V)` substitutes `z_i = c_i(U)`, `w_j = c_j(V)`. This module
//! computes `f` to a degree bound by assembling the left side over Chern
//! roots, dividing exactly by the product of the `U`-roots (the top Chern
//! class), and reducing to the elementary basis. Integrality is enforced
//! structurally: coefficients are stored as big integers, and a non-integer
//! coefficient aborts the computation.
//!
//! Results are cached per `(u, v, max_degree)`; the cache is written once
//! per key and shared afterwards.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::blowup::EmbeddingData;
use crate::error::{Error, Result};
use crate::gring::GradedClass;
use crate::poly::{Monomial, Poly};
use crate::rat::{self, BigInt};
use crate::symchern::{
    combinations, reduce_to_elementary, FormalBundle, SymmetricPoly,
    TotalClass,
};

/// The series `f` truncated at `max_degree`, with integer coefficients on
/// monomials in `z_1..z_u, w_1..w_v` graded by `deg z_i = i`, `deg w_j = j`.
#[derive(Debug, Clone)]
pub struct FSeries {
    u: u32,
    v: u32,
    max_degree: u32,
    coeffs: BTreeMap<Monomial, BigInt>,
}

impl FSeries {
    pub fn u(&self) -> u32 {
        self.u
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// The degree-0 coefficient, equal to `(-1)^{u-1} (u-1)! v`.
    pub fn constant_term(&self) -> BigInt {
        self.coeffs
            .get(&Monomial::unit((self.u + self.v) as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficient table in graded-lex order.
    pub fn entries(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.coeffs.iter()
    }

    /// Variable names `z1..zu, w1..wv` for rendering.
    pub fn variable_names(&self) -> Vec<String> {
        (1..=self.u)
            .map(|i| format!("z{i}"))
            .chain((1..=self.v).map(|j| format!("w{j}")))
            .collect()
    }

    /// The series as a rational polynomial (for substitution and checks).
    pub fn as_poly(&self) -> Poly {
        let mut p = Poly::zero((self.u + self.v) as usize);
        for (m, c) in &self.coeffs {
            p.add_term(m.clone(), rat::big_to_rat(c.clone()));
        }
        p
    }

    /// Substitutes `z_i = c_i(U)`, `w_j = c_j(V)`; the result is truncated by
    /// the ring of the bundles.
    pub fn specialize(&self, u_bundle: &FormalBundle, v_bundle: &FormalBundle) -> Result<GradedClass> {
        if u_bundle.rank() != self.u {
            return Err(Error::RankMismatch {
                expected: self.u,
                found: u_bundle.rank(),
            });
        }
        if v_bundle.rank() != self.v {
            return Err(Error::RankMismatch {
                expected: self.v,
                found: v_bundle.rank(),
            });
        }
        if u_bundle.ring().id() != v_bundle.ring().id() {
            return Err(Error::RingMismatch("bundles for specialization".to_string()));
        }
        let ring = u_bundle.ring();
        let mut images = Vec::with_capacity((self.u + self.v) as usize);
        for k in 1..=self.u {
            images.push(u_bundle.chern(k));
        }
        for k in 1..=self.v {
            images.push(v_bundle.chern(k));
        }
        Ok(self
            .as_poly()
            .eval(&GradedClass::one(ring), &GradedClass::zero(ring), &images))
    }
}

type FCache = Mutex<HashMap<(u32, u32, u32), Arc<FSeries>>>;

fn f_cache() -> &'static FCache {
    static CACHE: OnceLock<FCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Assembles the Koszul-type alternating product over Chern roots, truncated
/// above `max_degree`:
/// `prod_{i=0}^{u} c(wedge^i U* (x) V)^{(-1)^i} - 1`
/// in `u + v` degree-1 root variables (x-block then y-block).
pub fn koszul_left_side(u: u32, v: u32, max_degree: u32) -> Result<Poly> {
    let nvars = (u + v) as usize;
    let degrees = vec![1u32; nvars];
    let mut numerator = Poly::one(nvars);
    let mut denominator = Poly::one(nvars);
    for i in 0..=u {
        let mut total = Poly::one(nvars);
        for subset in combinations(u as usize, i as usize) {
            for l in 0..v as usize {
                // root of wedge^i U* (x) V: y_l - (x_{s1} + ... + x_{si})
                let mut root = Poly::var(u as usize + l, nvars, &degrees);
                for s in &subset {
                    root = root.sub(&Poly::var(*s, nvars, &degrees));
                }
                total = total.mul_truncated(&Poly::one(nvars).add(&root), max_degree);
            }
        }
        if i % 2 == 0 {
            numerator = numerator.mul_truncated(&total, max_degree);
        } else {
            denominator = denominator.mul_truncated(&total, max_degree);
        }
    }
    let inv = denominator.inverse_truncated(max_degree)?;
    Ok(numerator.mul_truncated(&inv, max_degree).sub(&Poly::one(nvars)))
}

/// Computes the universal series for ranks `(u, v)` up to `max_degree`.
pub fn compute_f(u: u32, v: u32, max_degree: u32) -> Result<Arc<FSeries>> {
    if u == 0 {
        return Err(Error::Invalid("u must be at least 1".to_string()));
    }
    if let Some(f) = f_cache().lock().unwrap().get(&(u, v, max_degree)) {
        return Ok(f.clone());
    }

    let work_degree = u + max_degree;
    let left = koszul_left_side(u, v, work_degree)?;

    // exact division by e_u(x) = x_1 * ... * x_u, variable by variable
    let mut quotient = left;
    for i in 0..u as usize {
        quotient = quotient.divide_by_var(i, 1)?;
    }

    let sym = SymmetricPoly::new(quotient, u as usize, v as usize)?;
    let reduced = reduce_to_elementary(&sym)?;

    let mut coeffs = BTreeMap::new();
    for (m, c) in reduced.terms() {
        let int = rat::as_integer(c).ok_or_else(|| {
            Error::IntegralityViolation(format!("{c} on monomial {:?}", m.exps()))
        })?;
        coeffs.insert(m.clone(), int);
    }

    let f = FSeries {
        u,
        v,
        max_degree,
        coeffs,
    };
    // lowest term is pinned by the theory: (-1)^{u-1} (u-1)! v
    let expected = rat::alt_big(u - 1, rat::factorial(u - 1) * BigInt::from(v));
    assert_eq!(
        f.constant_term(),
        expected,
        "degree-0 coefficient of f({u},{v}) must be (-1)^{{u-1}}(u-1)! v",
    );

    let arc = Arc::new(f);
    f_cache()
        .lock()
        .unwrap()
        .insert((u, v, max_degree), arc.clone());
    Ok(arc)
}

/// Total Chern class of a pushforward: `c(i_* F) = 1 + i_*( f(N, F) )`,
/// computed on the ambient ring of the embedding. The components in degrees
/// `1..r-1` vanish because the pushforward raises degree by `r`.
pub fn rr_without_denominators(embed: &EmbeddingData, bundle: &FormalBundle) -> Result<TotalClass> {
    if bundle.ring().id() != embed.ring_x().id() {
        return Err(Error::RingMismatch(
            "bundle must live on the center".to_string(),
        ));
    }
    let r = embed.codim();
    let n = embed.ring_y().dim();
    let max_degree = n.saturating_sub(r);
    let f = compute_f(r, bundle.rank(), max_degree)?;
    let on_center = f.specialize(embed.normal(), bundle)?;
    let pushed = embed.push().apply(&on_center)?;
    TotalClass::new(GradedClass::one(embed.ring_y()).add(&pushed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::RingPresentation;
    use crate::symchern::elementary_degrees;
    use crate::rat::{rat_int, Rational};

    fn mono(exps: Vec<u32>, degrees: &[u32]) -> Monomial {
        Monomial::new(exps, degrees)
    }

    #[test]
    fn lowest_terms_match_factorial_formula() {
        for u in 1..=3u32 {
            for v in 0..=2u32 {
                let f = compute_f(u, v, 1).unwrap();
                let expected = rat::alt_big(u - 1, rat::factorial(u - 1) * BigInt::from(v));
                assert_eq!(f.constant_term(), expected, "(u,v) = ({u},{v})");
            }
        }
    }

    #[test]
    fn rank_zero_twist_gives_zero_series() {
        // v = 0: every wedge term is tensored with a rank-0 bundle, the
        // alternating product collapses to 1, and f = 0 identically.
        let f = compute_f(2, 0, 2).unwrap();
        assert_eq!(f.entries().count(), 0);
        // brute-force root expansion of the left side agrees
        let left = koszul_left_side(2, 0, 4).unwrap();
        assert!(left.is_zero());
    }

    #[test]
    fn line_line_series_is_alternating_geometric() {
        // u = v = 1: c(V)/c(U* (x) V) - 1 = c_1(U) f gives
        // f = sum_k (-1)^k (w_1 - z_1)^k, so
        // f_0 = 1, f_1 = z_1 - w_1, f_2 = (z_1 - w_1)^2, ...
        let f = compute_f(1, 1, 2).unwrap();
        let d = elementary_degrees(1, 1);
        assert_eq!(f.constant_term(), BigInt::from(1));
        assert_eq!(f.coeffs[&mono(vec![1, 0], &d)], BigInt::from(1));
        assert_eq!(f.coeffs[&mono(vec![0, 1], &d)], BigInt::from(-1));
        assert_eq!(f.coeffs[&mono(vec![2, 0], &d)], BigInt::from(1));
        assert_eq!(f.coeffs[&mono(vec![1, 1], &d)], BigInt::from(-2));
        assert_eq!(f.coeffs[&mono(vec![0, 2], &d)], BigInt::from(1));
    }

    #[test]
    fn defining_identity_closes_for_small_ranks() {
        // e_u(x) * f(e(x); e(y)) must reproduce the alternating product
        // exactly, term by term in the roots.
        for (u, v, d) in [(1u32, 1u32, 3u32), (2, 1, 3), (2, 2, 2)] {
            let f = compute_f(u, v, d).unwrap();
            let nvars = (u + v) as usize;
            let left = koszul_left_side(u, v, u + d).unwrap();
            let images: Vec<Poly> = (1..=u as usize)
                .map(|k| crate::symchern::elementary_poly(k, 0, u as usize, nvars))
                .chain((1..=v as usize).map(|k| {
                    crate::symchern::elementary_poly(k, u as usize, v as usize, nvars)
                }))
                .collect();
            let f_in_roots = f
                .as_poly()
                .eval(&Poly::one(nvars), &Poly::zero(nvars), &images);
            let e_u = crate::symchern::elementary_poly(u as usize, 0, u as usize, nvars);
            let recomposed = e_u.mul(&f_in_roots).truncate(u + d);
            assert_eq!(recomposed, left, "identity failed for (u,v) = ({u},{v})");
        }
    }

    #[test]
    fn specialization_at_trivial_bundles_is_constant() {
        let ring = RingPresentation::new(vec![("t".to_string(), 1)], vec![], 3).unwrap();
        let n = FormalBundle::trivial(&ring, 3);
        let f0 = FormalBundle::trivial(&ring, 2);
        let f = compute_f(3, 2, 3).unwrap();
        let s = f.specialize(&n, &f0).unwrap();
        // (-1)^2 * 2! * 2 = 4
        assert_eq!(s, GradedClass::scalar(&ring, rat_int(4)));
    }

    #[test]
    fn specialization_rank_mismatch() {
        let ring = RingPresentation::new(vec![], vec![], 2).unwrap();
        let f = compute_f(2, 1, 1).unwrap();
        let wrong = FormalBundle::trivial(&ring, 3);
        let line = FormalBundle::trivial(&ring, 1);
        assert!(matches!(
            f.specialize(&wrong, &line),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn truncation_respects_ring_dimension() {
        // in a dim-1 ring only f_0 + f_1 survive specialization
        let ring = RingPresentation::new(vec![("t".to_string(), 1)], vec![], 1).unwrap();
        let t = GradedClass::generator(&ring, 0).unwrap();
        let u_bundle = FormalBundle::new(&ring, 1, vec![t.clone()]).unwrap();
        let v_bundle = FormalBundle::new(&ring, 1, vec![t.scale(&rat_int(2))]).unwrap();
        let f = compute_f(1, 1, 4).unwrap();
        let s = f.specialize(&u_bundle, &v_bundle).unwrap();
        // f = 1 + (z - w) + ... -> 1 + (t - 2t) = 1 - t, higher terms die
        let expected = GradedClass::one(&ring).sub(&t).unwrap();
        assert_eq!(s, expected);
    }

    /// Dense exact Gaussian elimination used only as a test oracle.
    #[allow(clippy::needless_range_loop)] // row operations over index ranges
    fn solve_exact(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
        use num::Zero;
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut pivot_of_col = vec![usize::MAX; cols];
        let mut row = 0;
        for col in 0..cols {
            let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            b.swap(row, p);
            let inv = rat_int(1) / a[row][col].clone();
            for c in col..cols {
                a[row][c] = &a[row][c] * &inv;
            }
            b[row] = &b[row] * &inv;
            for r in 0..rows {
                if r != row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in col..cols {
                        let delta = &factor * &a[row][c];
                        a[r][c] = &a[r][c] - &delta;
                    }
                    let delta = &factor * &b[row];
                    b[r] = &b[r] - &delta;
                }
            }
            pivot_of_col[col] = row;
            row += 1;
            if row == rows {
                break;
            }
        }
        // consistency: zero rows must have zero rhs
        for r in row..rows {
            if !b[r].is_zero() {
                return None;
            }
        }
        // uniqueness: every column must have a pivot
        if pivot_of_col.contains(&usize::MAX) {
            return None;
        }
        Some((0..cols).map(|c| b[pivot_of_col[c]].clone()).collect())
    }

    #[test]
    fn uniqueness_by_linear_solve() {
        // independent route: solve for the unknown coefficients of f from
        // the defining identity and compare with the root-division result
        for (u, v, d) in [(1u32, 1u32, 3u32), (2, 1, 3), (2, 2, 3), (1, 2, 3)] {
            let f = compute_f(u, v, d).unwrap();
            let nvars = (u + v) as usize;

            // unknowns: monomials in the elementary variables up to degree d
            let gens: Vec<(String, u32)> = (1..=u)
                .map(|i| (format!("z{i}"), i))
                .chain((1..=v).map(|j| (format!("w{j}"), j)))
                .collect();
            let free = RingPresentation::new(gens, vec![], d).unwrap();
            let unknowns = free.basis();

            let e_u = crate::symchern::elementary_poly(u as usize, 0, u as usize, nvars);
            let images: Vec<Poly> = (1..=u as usize)
                .map(|k| crate::symchern::elementary_poly(k, 0, u as usize, nvars))
                .chain((1..=v as usize).map(|k| {
                    crate::symchern::elementary_poly(k, u as usize, v as usize, nvars)
                }))
                .collect();

            // row space: all root monomials of degree <= u + d
            let left = koszul_left_side(u, v, u + d).unwrap();
            let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
            let mut columns: Vec<Poly> = Vec::new();
            for unknown in &unknowns {
                let mut as_poly = Poly::zero((u + v) as usize);
                as_poly.add_term(unknown.clone(), rat_int(1));
                let in_roots = as_poly.eval(&Poly::one(nvars), &Poly::zero(nvars), &images);
                let col = e_u.mul(&in_roots).truncate(u + d);
                for (m, _) in col.terms() {
                    let next = row_index.len();
                    row_index.entry(m.clone()).or_insert(next);
                }
                columns.push(col);
            }
            for (m, _) in left.terms() {
                let next = row_index.len();
                row_index.entry(m.clone()).or_insert(next);
            }

            let nrows = row_index.len();
            let mut a = vec![vec![rat_int(0); unknowns.len()]; nrows];
            let mut b = vec![rat_int(0); nrows];
            for (j, col) in columns.iter().enumerate() {
                for (m, c) in col.terms() {
                    a[row_index[m]][j] = c.clone();
                }
            }
            for (m, c) in left.terms() {
                b[row_index[m]] = c.clone();
            }

            let solution = solve_exact(a, b).expect("identity must determine f uniquely");
            for (j, unknown) in unknowns.iter().enumerate() {
                let direct = f
                    .coeffs
                    .get(unknown)
                    .cloned()
                    .map(rat::big_to_rat)
                    .unwrap_or_else(|| rat_int(0));
                assert_eq!(
                    solution[j], direct,
                    "coefficient mismatch at {:?} for (u,v)=({u},{v})",
                    unknown.exps()
                );
            }
        }
    }
}
