//! Ready-made blow-up scenarios.
//!
//! Geometric presets (surface point, threefold point, threefold curve,
//! Iwasawa curve) present just enough of the ambient cohomology to express
//! the classes the formulas produce. Universal presets adjoin the tangent
//! and normal classes as formal generators and model the ambient ring as a
//! formal tube around the center, so the identities are verified as formal
//! consequences with fully generic Chern classes.
//!
//! In a tube, the ambient ring carries a copy of every center generator, a
//! degree-`r` class `h` playing the role of the center's cycle class, and
//! the relations `h^2 = h n_r` (self-intersection) and
//! `h c_i = h [c(X) c(N)]_i` (Whitney restriction), which make the
//! tautological pushforward `a -> h a` satisfy the projection formula.

use crate::blowup::{BlowupRing, EmbeddingData};
use crate::error::{Error, Result};
use crate::gring::{GradedClass, LinearRingMap, RingPresentation, RingRef};
use crate::poly::{Monomial, Poly};
use crate::rat::rat_int;
use crate::report::CheckReport;
use crate::symchern::{FormalBundle, TotalClass};

fn gen(ring: &RingRef, name: &str) -> GradedClass {
    GradedClass::generator_named(ring, name).expect("preset generator")
}

fn total(cls: GradedClass) -> TotalClass {
    TotalClass::new(cls).expect("unital by construction")
}

fn point_ring() -> RingRef {
    RingPresentation::new(vec![], vec![], 0).expect("point ring")
}

fn zero_pull(ring_y: &RingRef, ring_x: &RingRef) -> LinearRingMap {
    let images = vec![GradedClass::zero(ring_x); ring_y.num_generators()];
    LinearRingMap::ring_hom(ring_y, ring_x, images).expect("degree reasons")
}

/// Blow-up of a surface at a point, with generic surface Chern classes.
/// Ambient ring: `c1, c2` (tangent components) and `p` (the point class).
pub fn surface_point() -> Result<BlowupRing> {
    let ring_y = RingPresentation::new(
        vec![
            ("c1".to_string(), 1),
            ("c2".to_string(), 2),
            ("p".to_string(), 2),
        ],
        vec![],
        2,
    )?;
    let ring_x = point_ring();
    let pull = zero_pull(&ring_y, &ring_x);
    let push = LinearRingMap::module_map(
        &ring_x,
        &ring_y,
        2,
        vec![(GradedClass::one(&ring_x), gen(&ring_y, "p"))],
    )?;
    let normal = FormalBundle::trivial(&ring_x, 2);
    let tangent_y = total(
        GradedClass::one(&ring_y)
            .add(&gen(&ring_y, "c1"))?
            .add(&gen(&ring_y, "c2"))?,
    );
    let tangent_x = TotalClass::one(&ring_x);
    let embed = EmbeddingData::new(pull, push, normal, Some(tangent_y), Some(tangent_x))?;
    BlowupRing::new(embed)
}

/// Blow-up of a threefold at a point. Ambient ring: `c1, c2, c3` and the
/// point class `p` of degree 3.
pub fn threefold_point() -> Result<BlowupRing> {
    let ring_y = RingPresentation::new(
        vec![
            ("c1".to_string(), 1),
            ("c2".to_string(), 2),
            ("c3".to_string(), 3),
            ("p".to_string(), 3),
        ],
        vec![],
        3,
    )?;
    let ring_x = point_ring();
    let pull = zero_pull(&ring_y, &ring_x);
    let push = LinearRingMap::module_map(
        &ring_x,
        &ring_y,
        3,
        vec![(GradedClass::one(&ring_x), gen(&ring_y, "p"))],
    )?;
    let normal = FormalBundle::trivial(&ring_x, 3);
    let tangent_y = total(
        GradedClass::one(&ring_y)
            .add(&gen(&ring_y, "c1"))?
            .add(&gen(&ring_y, "c2"))?
            .add(&gen(&ring_y, "c3"))?,
    );
    let tangent_x = TotalClass::one(&ring_x);
    let embed = EmbeddingData::new(pull, push, normal, Some(tangent_y), Some(tangent_x))?;
    BlowupRing::new(embed)
}

/// Blow-up of a threefold along a smooth curve, everything symbolic: the
/// curve carries `x1 = c_1(X)` and `m1 = c_1(N)`, the ambient ring carries
/// `c1, c2, c3`, the curve class `q`, and `t = i_*(x1)`. The pullback
/// encodes the Whitney restriction `i^* c_1(Y) = c_1(X) + c_1(N)`.
pub fn threefold_curve() -> Result<BlowupRing> {
    let ring_x = RingPresentation::new(
        vec![("x1".to_string(), 1), ("m1".to_string(), 1)],
        vec![],
        1,
    )?;
    let ring_y = RingPresentation::new(
        vec![
            ("c1".to_string(), 1),
            ("c2".to_string(), 2),
            ("q".to_string(), 2),
            ("c3".to_string(), 3),
            ("t".to_string(), 3),
        ],
        vec![],
        3,
    )?;
    let x1 = gen(&ring_x, "x1");
    let m1 = gen(&ring_x, "m1");
    let zero_x = GradedClass::zero(&ring_x);
    let pull = LinearRingMap::ring_hom(
        &ring_y,
        &ring_x,
        vec![
            x1.add(&m1)?,
            zero_x.clone(),
            zero_x.clone(),
            zero_x.clone(),
            zero_x,
        ],
    )?;
    let c1 = gen(&ring_y, "c1");
    let q = gen(&ring_y, "q");
    let t = gen(&ring_y, "t");
    let push = LinearRingMap::module_map(
        &ring_x,
        &ring_y,
        2,
        vec![
            (GradedClass::one(&ring_x), q.clone()),
            (x1.clone(), t.clone()),
            (m1.clone(), c1.mul(&q)?.sub(&t)?),
        ],
    )?;
    let normal = FormalBundle::new(&ring_x, 2, vec![m1, GradedClass::zero(&ring_x)])?;
    let tangent_y = total(
        GradedClass::one(&ring_y)
            .add(&gen(&ring_y, "c1"))?
            .add(&gen(&ring_y, "c2"))?
            .add(&gen(&ring_y, "c3"))?,
    );
    let tangent_x = total(GradedClass::one(&ring_x).add(&x1)?);
    let embed = EmbeddingData::new(pull, push, normal, Some(tangent_y), Some(tangent_x))?;
    BlowupRing::new(embed)
}

/// Blow-up of the Iwasawa threefold along a torus fiber. The fiber class is
/// zero in degree (2,2) (it bounds, as certified by the invariant-form
/// computation), both tangent bundles are holomorphically trivial, and the
/// normal bundle has vanishing Chern classes.
pub fn iwasawa_blowup() -> Result<BlowupRing> {
    let ring_x = RingPresentation::new(vec![("w".to_string(), 1)], vec![], 1)?;
    let ring_y = RingPresentation::new(vec![("vol".to_string(), 3)], vec![], 3)?;
    let pull = zero_pull(&ring_y, &ring_x);
    let w = gen(&ring_x, "w");
    let push = LinearRingMap::module_map(
        &ring_x,
        &ring_y,
        2,
        vec![
            (GradedClass::one(&ring_x), GradedClass::zero(&ring_y)),
            (w, gen(&ring_y, "vol")),
        ],
    )?;
    let normal = FormalBundle::trivial(&ring_x, 2);
    let embed = EmbeddingData::new(
        pull,
        push,
        normal,
        Some(TotalClass::one(&ring_y)),
        Some(TotalClass::one(&ring_x)),
    )?;
    BlowupRing::new(embed)
}

/// Universal blow-up of codimension `r`: all Chern classes of the center,
/// the normal bundle, and the ambient manifold are independent formal
/// generators, and the ambient ring is the formal tube around the center.
pub fn universal(r: u32) -> Result<BlowupRing> {
    if r < 2 {
        return Err(Error::Invalid("universal presets need r >= 2".to_string()));
    }
    // the center must be deep enough that no Chern class of the normal
    // bundle dies by truncation
    let dim_x = r;
    let n = dim_x + r;

    let mut x_gens = vec![("x1".to_string(), 1), ("x2".to_string(), 2)];
    for i in 1..=r {
        x_gens.push((format!("n{i}"), i));
    }
    let ring_x = RingPresentation::new(x_gens, vec![], dim_x)?;

    let mut y_gens: Vec<(String, u32)> = (1..=n).map(|i| (format!("c{i}"), i)).collect();
    y_gens.push(("h".to_string(), r));
    y_gens.push(("x1".to_string(), 1));
    y_gens.push(("x2".to_string(), 2));
    for i in 1..=r {
        y_gens.push((format!("n{i}"), i));
    }
    let names: Vec<String> = y_gens.iter().map(|(s, _)| s.clone()).collect();
    let degrees: Vec<u32> = y_gens.iter().map(|(_, d)| *d).collect();
    let nvars = names.len();
    let var = |name: &str| -> Poly {
        let idx = names.iter().position(|n| n == name).expect("generator");
        Poly::var(idx, nvars, &degrees)
    };

    // Whitney product c(X) c(N) inside the tube generators
    let mut whitney = Poly::one(nvars).add(&var("x1")).add(&var("x2"));
    let mut n_total = Poly::one(nvars);
    for i in 1..=r {
        n_total = n_total.add(&var(&format!("n{i}")));
    }
    whitney = whitney.mul(&n_total);

    let mut relations = Vec::new();
    // h^2 = h n_r
    relations.push(var("h").mul(&var("h")).sub(&var("h").mul(&var(&format!("n{r}")))));
    // h c_i = h [c(X) c(N)]_i for the degrees that survive truncation
    for i in 1..=dim_x.min(n.saturating_sub(r)) {
        let rel = var("h")
            .mul(&var(&format!("c{i}")))
            .sub(&var("h").mul(&whitney.component(i)));
        relations.push(rel);
    }
    let ring_y = RingPresentation::new(y_gens, relations, n)?;

    // pullback: c_i -> [c(X) c(N)]_i, h -> n_r, tube copies -> originals
    let x1 = gen(&ring_x, "x1");
    let x2 = gen(&ring_x, "x2");
    let n_classes: Vec<GradedClass> = (1..=r).map(|i| gen(&ring_x, &format!("n{i}"))).collect();
    let mut cx_cn = GradedClass::one(&ring_x).add(&x1)?.add(&x2)?;
    let mut cn_total = GradedClass::one(&ring_x);
    for c in &n_classes {
        cn_total = cn_total.add(c)?;
    }
    cx_cn = cx_cn.mul(&cn_total)?;

    let mut images = Vec::new();
    for i in 1..=n {
        images.push(cx_cn.component(i));
    }
    images.push(n_classes[(r - 1) as usize].clone()); // h
    images.push(x1.clone());
    images.push(x2.clone());
    for c in &n_classes {
        images.push(c.clone());
    }
    let pull = LinearRingMap::ring_hom(&ring_y, &ring_x, images)?;

    // pushforward: basis monomial a -> h * (copy of a in the tube)
    let h = gen(&ring_y, "h");
    let mut push_images = Vec::new();
    for m in ring_x.basis() {
        let key = GradedClass::from_poly(&ring_x, Poly::from_monomial(m.clone(), rat_int(1)));
        // tube copies sit after the c-block and h in the generator list
        let mut exps = vec![0u32; nvars];
        exps[(n + 1) as usize..].copy_from_slice(m.exps());
        let copy = GradedClass::from_poly(&ring_y, Poly::from_monomial(
            Monomial::new(exps, &degrees),
            rat_int(1),
        ));
        push_images.push((key, h.mul(&copy)?));
    }
    let push = LinearRingMap::module_map(&ring_x, &ring_y, r, push_images)?;

    let normal = FormalBundle::new(&ring_x, r, n_classes)?;
    let mut tangent_y_cls = GradedClass::one(&ring_y);
    for i in 1..=n {
        tangent_y_cls = tangent_y_cls.add(&gen(&ring_y, &format!("c{i}")))?;
    }
    let tangent_y = total(tangent_y_cls);
    let tangent_x = total(GradedClass::one(&ring_x).add(&x1)?.add(&x2)?);

    let embed = EmbeddingData::new(pull, push, normal, Some(tangent_y), Some(tangent_x))?;
    BlowupRing::new(embed)
}

/// Tube embedding without tangent data, used for the pushforward vanishing
/// checks: a generic center with generic normal bundle and a generic
/// twisting bundle of rank `f_rank` (0, 1 or 2).
pub fn rr_tube(r: u32, f_rank: u32) -> Result<(EmbeddingData, FormalBundle)> {
    if r < 2 {
        return Err(Error::Invalid("tube embeddings need r >= 2".to_string()));
    }
    let dim_x = 3u32;
    let n = dim_x + r;

    let mut x_gens: Vec<(String, u32)> = (1..=r).map(|i| (format!("n{i}"), i)).collect();
    for j in 1..=f_rank {
        x_gens.push((format!("f{j}"), j));
    }
    let ring_x = RingPresentation::new(x_gens.clone(), vec![], dim_x)?;

    let mut y_gens: Vec<(String, u32)> = vec![("h".to_string(), r)];
    y_gens.extend(x_gens.iter().cloned());
    let names: Vec<String> = y_gens.iter().map(|(s, _)| s.clone()).collect();
    let degrees: Vec<u32> = y_gens.iter().map(|(_, d)| *d).collect();
    let nvars = names.len();
    let h_poly = Poly::var(0, nvars, &degrees);
    let nr_poly = Poly::var(r as usize, nvars, &degrees); // n_r sits right after h
    let relations = vec![h_poly.mul(&h_poly).sub(&h_poly.mul(&nr_poly))];
    let ring_y = RingPresentation::new(y_gens, relations, n)?;

    let n_classes: Vec<GradedClass> = (1..=r).map(|i| gen(&ring_x, &format!("n{i}"))).collect();
    let mut images = vec![n_classes[(r - 1) as usize].clone()]; // h -> n_r
    for i in 0..ring_x.num_generators() {
        images.push(GradedClass::generator(&ring_x, i)?);
    }
    let pull = LinearRingMap::ring_hom(&ring_y, &ring_x, images)?;

    let h = GradedClass::generator(&ring_y, 0)?;
    let mut push_images = Vec::new();
    for m in ring_x.basis() {
        let key = GradedClass::from_poly(&ring_x, Poly::from_monomial(m.clone(), rat_int(1)));
        let mut exps = vec![0u32; nvars];
        exps[1..].copy_from_slice(m.exps());
        let copy = GradedClass::from_poly(
            &ring_y,
            Poly::from_monomial(Monomial::new(exps, &degrees), rat_int(1)),
        );
        push_images.push((key, h.mul(&copy)?));
    }
    let push = LinearRingMap::module_map(&ring_x, &ring_y, r, push_images)?;

    let normal = FormalBundle::new(&ring_x, r, n_classes)?;
    let twist = match f_rank {
        0 => FormalBundle::trivial(&ring_x, 0),
        _ => {
            let chern: Result<Vec<GradedClass>> = (1..=f_rank)
                .map(|j| GradedClass::generator_named(&ring_x, &format!("f{j}")))
                .collect();
            FormalBundle::new(&ring_x, f_rank, chern?)?
        }
    };
    let embed = EmbeddingData::new(pull, push, normal, None, None)?;
    Ok((embed, twist))
}

/// Names of the shipped presets, as accepted by [`verify_preset`].
pub const PRESET_NAMES: [&str; 6] = [
    "surface-point",
    "threefold-point",
    "threefold-curve",
    "iwasawa",
    "universal-r2",
    "universal-r3",
];

/// Builds a preset blow-up ring by name.
pub fn blowup_preset(name: &str) -> Result<BlowupRing> {
    match name {
        "surface-point" => surface_point(),
        "threefold-point" => threefold_point(),
        "threefold-curve" => threefold_curve(),
        "iwasawa" => iwasawa_blowup(),
        "universal-r2" => universal(2),
        "universal-r3" => universal(3),
        _ => Err(Error::Invalid(format!(
            "unknown preset {name}; available: {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}

/// Runs the identity suite of a preset plus its scenario-specific checks.
pub fn verify_preset(name: &str) -> Result<Vec<CheckReport>> {
    let br = blowup_preset(name)?;
    let mut reports = br.verify_identities()?;
    match name {
        "surface-point" => reports.extend(surface_specific(&br)?),
        "threefold-point" => reports.extend(threefold_point_specific(&br)?),
        "threefold-curve" => reports.extend(threefold_curve_specific(&br)?),
        "iwasawa" => reports.extend(crate::nilbc::iwasawa_blowup_check()?),
        _ => {}
    }
    Ok(reports)
}

fn surface_specific(br: &BlowupRing) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    let ring_y = br.embedding().ring_y();
    let e = br.exceptional_class();
    let diff = br.total_chern_difference()?;
    let j_zeta = br.push_j(br.exceptional().zeta())?;

    // c(blow-up) - pi^* c(Y) = -[E] + j_* zeta, with j_* zeta = pi^* p
    let expected = br.sub(&j_zeta, &e)?;
    reports.push(CheckReport::from_eq(
        "surface-difference",
        diff == expected,
        &br.render(&diff),
        &br.render(&expected),
    ));
    reports.push(CheckReport::from_eq(
        "surface-point-class",
        j_zeta == br.pi_star(&gen(ring_y, "p")),
        &br.render(&j_zeta),
        "pi*(p)",
    ));

    // the exceptional curve has self-intersection -1: [E]^2 = -j_* zeta,
    // so the difference also reads -[E] - [E]^2
    let e2 = br.mul(&e, &e)?;
    reports.push(CheckReport::from_eq(
        "exceptional-self-intersection",
        e2 == br.neg(&j_zeta),
        &br.render(&e2),
        &format!("-({})", br.render(&j_zeta)),
    ));
    let corrected = br.sub(&br.neg(&e), &e2)?;
    reports.push(CheckReport::from_eq(
        "surface-difference-signed-square",
        diff == corrected,
        &br.render(&diff),
        &br.render(&corrected),
    ));
    Ok(reports)
}

fn threefold_point_specific(br: &BlowupRing) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    let diff = br.total_chern_difference()?;
    let c2 = br.component(&diff, 2);
    reports.push(CheckReport::from_eq(
        "threefold-point-c2",
        c2.is_zero(),
        &br.render(&c2),
        "0",
    ));
    let e = br.exceptional_class();
    let e3 = br.pow(&e, 3)?;
    let c3 = br.component(&diff, 3);
    let expected = br.scale(&e3, &rat_int(2));
    reports.push(CheckReport::from_eq(
        "threefold-point-c3",
        c3 == expected,
        &br.render(&c3),
        &br.render(&expected),
    ));
    // j_* zeta^2 = [E]^3 here (two sign flips cancel)
    let j_zeta2 = br.push_j(&br.exceptional().zeta().pow(2))?;
    reports.push(CheckReport::from_eq(
        "threefold-point-cube",
        j_zeta2 == e3,
        &br.render(&j_zeta2),
        &br.render(&e3),
    ));
    Ok(reports)
}

fn threefold_curve_specific(br: &BlowupRing) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    let ring_y = br.embedding().ring_y();
    let ring_x = br.embedding().ring_x();
    let diff = br.total_chern_difference()?;

    // c_2 comparison: -pi^* c_1(Y) [E] + pi^* [X]
    let c2 = br.component(&diff, 2);
    let e = br.exceptional_class();
    let minus_c1_e = br.mul(&br.pi_star(&gen(ring_y, "c1").neg()), &e)?;
    let expected2 = br.add(&minus_c1_e, &br.pi_star(&gen(ring_y, "q")))?;
    reports.push(CheckReport::from_eq(
        "threefold-curve-c2",
        c2 == expected2,
        &br.render(&c2),
        &br.render(&expected2),
    ));

    // c_3 comparison: j_*( zeta rho^* c_1(X) )
    let c3 = br.component(&diff, 3);
    let zeta = br.exceptional().zeta();
    let lifted_x1 = br.exceptional().lift(&gen(ring_x, "x1"))?;
    let expected3 = br.push_j(&zeta.mul(&lifted_x1)?)?;
    reports.push(CheckReport::from_eq(
        "threefold-curve-c3",
        c3 == expected3,
        &br.render(&c3),
        &br.render(&expected3),
    ));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_construct() {
        for name in PRESET_NAMES {
            blowup_preset(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}
