//! Acceptance suite: every identity the engine is contracted to reproduce,
//! each criterion as one test with a printed verdict line. All checks are
//! exact; there are no tolerances anywhere because every computation is in
//! exact rational arithmetic.

use bcblow_core::blowup::{alpha_binomial_form, alpha_division_form, ZetaPoly};
use bcblow_core::gring::{
    confluence_check, projection_formula_check, GradedClass, RingPresentation, RingRef,
};
use bcblow_core::nilbc::{self, BcExactness, InvariantForm, StructureEquations};
use bcblow_core::poly::Poly;
use bcblow_core::presets;
use bcblow_core::rat::{self, rat, rat_int, BigInt};
use bcblow_core::report::all_passed;
use bcblow_core::rrwd::{compute_f, koszul_left_side, rr_without_denominators};
use bcblow_core::symchern::{
    combinations, elementary_conversion, elementary_poly, newton_conversion, FormalBundle,
};

fn passed(criterion: &str) {
    println!("[acceptance] {criterion}: pass");
}

fn free_ring(gens: Vec<(&str, u32)>, dim: u32) -> RingRef {
    RingPresentation::new(
        gens.into_iter().map(|(n, d)| (n.to_string(), d)).collect(),
        vec![],
        dim,
    )
    .unwrap()
}

fn named(ring: &RingRef, name: &str) -> GradedClass {
    GradedClass::generator_named(ring, name).unwrap()
}

#[test]
fn criterion_01_f_series_lowest_term() {
    for u in 1..=4u32 {
        for v in 0..=3u32 {
            let f = compute_f(u, v, 3).unwrap();
            let expected = rat::alt_big(u - 1, rat::factorial(u - 1) * BigInt::from(v));
            assert_eq!(
                f.constant_term(),
                expected,
                "constant term of f for (u,v) = ({u},{v})"
            );
        }
    }
    passed("criterion 01 (f-series lowest term, u in 1..4, v in 0..3, exact)");
}

#[test]
fn criterion_02_f_series_integrality_and_defining_identity() {
    for u in 1..=3u32 {
        for v in 0..=3u32 {
            let degree = 4u32;
            let f = compute_f(u, v, degree).unwrap();
            // integrality is structural (coefficients are big integers);
            // confirm none of the stored entries vanished into rationals
            for (_, c) in f.entries() {
                let _: &BigInt = c;
            }
            // re-expand into roots and compare with the alternating product
            let nvars = (u + v) as usize;
            let images: Vec<Poly> = (1..=u as usize)
                .map(|k| elementary_poly(k, 0, u as usize, nvars))
                .chain(
                    (1..=v as usize).map(|k| elementary_poly(k, u as usize, v as usize, nvars)),
                )
                .collect();
            let in_roots = f
                .as_poly()
                .eval(&Poly::one(nvars), &Poly::zero(nvars), &images);
            let e_u = elementary_poly(u as usize, 0, u as usize, nvars);
            let recomposed = e_u.mul(&in_roots).truncate(u + degree);
            let left = koszul_left_side(u, v, u + degree).unwrap();
            assert_eq!(recomposed, left, "defining identity for (u,v) = ({u},{v})");
        }
    }
    passed("criterion 02 (f-series integrality and defining identity, u,v <= 3, degree <= 4)");
}

#[test]
fn criterion_03_pushforward_vanishing_range() {
    for r in 2..=4u32 {
        for f_rank in [1u32, 2] {
            let (embed, twist) = presets::rr_tube(r, f_rank).unwrap();
            let total = rr_without_denominators(&embed, &twist).unwrap();
            for q in 1..r {
                assert!(
                    total.component(q).is_zero(),
                    "component {q} must vanish for r = {r}, rank = {f_rank}"
                );
            }
            // the first surviving component is the pushforward of the
            // constant term: (-1)^(r-1) (r-1)! rank . [X]
            let x_class = embed.push().apply(&GradedClass::one(embed.ring_x())).unwrap();
            let coeff = rat::big_to_rat(rat::alt_big(
                r - 1,
                rat::factorial(r - 1) * BigInt::from(f_rank),
            ));
            assert_eq!(
                total.component(r),
                x_class.scale(&coeff),
                "degree-r component for r = {r}, rank = {f_rank}"
            );
        }
    }
    passed("criterion 03 (pushforward components 1..r-1 vanish, r in 2..4, exact)");
}

#[test]
fn criterion_04_alpha_forms_agree() {
    for r in 2..=4u32 {
        // fully generic symbolic normal bundle: c_i(N) independent generators
        let gens: Vec<(String, u32)> = (1..=r).map(|i| (format!("n{i}"), i)).collect();
        let ring = RingPresentation::new(gens, vec![], 2 * r + 1).unwrap();
        let chern: Vec<GradedClass> = (1..=r)
            .map(|i| named(&ring, &format!("n{i}")))
            .collect();
        let normal = FormalBundle::new(&ring, r, chern).unwrap();
        let division = alpha_division_form(&normal).unwrap();
        let binomial = alpha_binomial_form(&normal);
        assert_eq!(
            division, binomial,
            "free zeta-polynomial forms of alpha differ at r = {r}"
        );
    }
    passed("criterion 04 (division-form alpha equals binomial-form alpha, r in 2..4, exact)");
}

#[test]
fn criterion_05_first_and_second_chern_specializations() {
    // free zeta-module level, fully symbolic in c_1(X), c_1(N) for r in 2..4
    for r in 2..=4u32 {
        let mut gens = vec![("x1".to_string(), 1), ("x2".to_string(), 2)];
        for i in 1..=r {
            gens.push((format!("n{i}"), i));
        }
        let ring = RingPresentation::new(gens, vec![], 2 * r + 2).unwrap();
        let chern: Vec<GradedClass> = (1..=r)
            .map(|i| named(&ring, &format!("n{i}")))
            .collect();
        let normal = FormalBundle::new(&ring, r, chern).unwrap();
        let alpha = alpha_division_form(&normal).unwrap();
        let cx = GradedClass::one(&ring)
            .add(&named(&ring, "x1"))
            .unwrap()
            .add(&named(&ring, "x2"))
            .unwrap();
        let arg = alpha.mul_class(&cx).unwrap();

        // degree-0 part: (1 - r), giving the (1-r)[E] correction
        let expected0 = ZetaPoly::from_class(GradedClass::scalar(&ring, rat_int(1 - r as i64)));
        assert_eq!(arg.component(0), expected0, "degree 0 at r = {r}");

        // degree-1 part: r(3-r)/2 zeta + (2-r) c_1(N) + (1-r) c_1(X)
        let scalar_part = named(&ring, "n1")
            .scale(&rat_int(2 - r as i64))
            .add(&named(&ring, "x1").scale(&rat_int(1 - r as i64)))
            .unwrap();
        let zeta_part = GradedClass::scalar(&ring, rat(r as i64 * (3 - r as i64), 2));
        let expected1 = ZetaPoly::from_class(scalar_part)
            .add(&ZetaPoly::from_class(zeta_part).mul_zeta_series(&[rat_int(0), rat_int(1)]))
            .unwrap();
        assert_eq!(arg.component(1), expected1, "degree 1 at r = {r}");
    }

    // pushed through the blow-up ring on the universal presets
    for (name, r) in [("universal-r2", 2u32), ("universal-r3", 3)] {
        let br = presets::blowup_preset(name).unwrap();
        let diff = br.total_chern_difference().unwrap();
        let e = br.exceptional_class();
        assert_eq!(
            br.component(&diff, 1),
            br.scale(&e, &rat_int(1 - r as i64)),
            "first Chern correction on {name}"
        );
        let exc = br.exceptional();
        let zeta_term = exc.zeta().scale(&rat(r as i64 * (3 - r as i64), 2));
        let n_term = exc
            .lift(&br.embedding().normal().chern(1))
            .unwrap()
            .scale(&rat_int(2 - r as i64));
        let x_term = exc
            .lift(&br.embedding().tangent_x().unwrap().component(1))
            .unwrap()
            .scale(&rat_int(1 - r as i64));
        let rhs = br
            .push_j(&zeta_term.add(&n_term).unwrap().add(&x_term).unwrap())
            .unwrap();
        assert_eq!(br.component(&diff, 2), rhs, "second Chern correction on {name}");
    }
    passed("criterion 05 (degree-1 and degree-2 corrections, symbolic, r in 2..4, exact)");
}

#[test]
fn criterion_06_surface_preset() {
    let br = presets::surface_point().unwrap();
    let ring_y = br.embedding().ring_y();
    let diff = br.total_chern_difference().unwrap();
    let e = br.exceptional_class();
    let j_zeta = br.push_j(br.exceptional().zeta()).unwrap();
    let pt = br.pi_star(&named(ring_y, "p"));

    // the difference is -[E] + j_* zeta, and j_* zeta is the point class
    assert_eq!(diff, br.sub(&j_zeta, &e).unwrap());
    assert_eq!(j_zeta, pt);

    // frozen normal form: y-part p, single slot entry -1
    assert_eq!(diff.y_part(), &named(ring_y, "p"));
    assert_eq!(
        diff.slot(0),
        &GradedClass::scalar(br.embedding().ring_x(), rat_int(-1))
    );

    // the exceptional curve has self-intersection -1, so [E]^2 = -j_* zeta
    // and the difference equals -[E] - [E]^2 (not -[E] + [E]^2)
    let e2 = br.mul(&e, &e).unwrap();
    assert_eq!(e2, br.neg(&j_zeta));
    assert_eq!(diff, br.sub(&br.neg(&e), &e2).unwrap());
    assert_ne!(diff, br.add(&br.neg(&e), &e2).unwrap());

    // total class against the ambient tangent data
    let total = br.total_chern().unwrap();
    let expected = br
        .add(
            &br.pi_star(br.embedding().tangent_y().unwrap().class()),
            &diff,
        )
        .unwrap();
    assert_eq!(total, expected);

    // degree-2 component: pi^* c_2(Y) + j_* zeta = pi^* c_2(Y) - [E]^2
    let c2 = br.component(&total, 2);
    let expected_c2 = br
        .add(&br.pi_star(&named(ring_y, "c2")), &j_zeta)
        .unwrap();
    assert_eq!(c2, expected_c2);

    let reports = presets::verify_preset("surface-point").unwrap();
    assert!(all_passed(&reports), "surface identity suite");
    passed("criterion 06 (surface point blow-up, exact, with the self-intersection sign pinned)");
}

#[test]
fn criterion_07_threefold_point_preset() {
    let br = presets::threefold_point().unwrap();
    let diff = br.total_chern_difference().unwrap();

    // c_2 correction vanishes
    assert!(br.component(&diff, 2).is_zero());

    // c_3 correction is 2 [E]^3 exactly
    let e = br.exceptional_class();
    let e3 = br.pow(&e, 3).unwrap();
    assert_eq!(br.component(&diff, 3), br.scale(&e3, &rat_int(2)));

    // and [E]^3 = j_* zeta^2 = pi^* p
    let j_zeta2 = br.push_j(&br.exceptional().zeta().pow(2)).unwrap();
    assert_eq!(e3, j_zeta2);
    assert_eq!(e3, br.pi_star(&named(br.embedding().ring_y(), "p")));

    // frozen slot values of the difference: (-2) [E] + 2 j_* zeta^2
    assert_eq!(
        diff.slot(0),
        &GradedClass::scalar(br.embedding().ring_x(), rat_int(-2))
    );
    assert!(diff.slot(1).is_zero());
    assert_eq!(
        diff.y_part(),
        &named(br.embedding().ring_y(), "p").scale(&rat_int(2))
    );

    let reports = presets::verify_preset("threefold-point").unwrap();
    assert!(all_passed(&reports), "threefold point identity suite");
    passed("criterion 07 (threefold point blow-up: c2 correction 0, c3 correction 2[E]^3, exact)");
}

#[test]
fn criterion_08_threefold_curve_preset() {
    let br = presets::threefold_curve().unwrap();
    let ring_y = br.embedding().ring_y();
    let ring_x = br.embedding().ring_x();
    let diff = br.total_chern_difference().unwrap();

    // c_2 identity: -pi^* c_1(Y) [E] + pi^* [X]
    let e = br.exceptional_class();
    let lhs2 = br.component(&diff, 2);
    let rhs2 = br
        .add(
            &br.mul(&br.pi_star(&named(ring_y, "c1").neg()), &e).unwrap(),
            &br.pi_star(&named(ring_y, "q")),
        )
        .unwrap();
    assert_eq!(lhs2, rhs2);

    // c_3 identity: j_*( zeta rho^* c_1(X) ), which evaluates to pi^* i_*(c_1(X))
    let lhs3 = br.component(&diff, 3);
    let zeta = br.exceptional().zeta();
    let lifted = br.exceptional().lift(&named(ring_x, "x1")).unwrap();
    let rhs3 = br.push_j(&zeta.mul(&lifted).unwrap()).unwrap();
    assert_eq!(lhs3, rhs3);
    assert_eq!(lhs3, br.pi_star(&named(ring_y, "t")));

    let reports = presets::verify_preset("threefold-curve").unwrap();
    assert!(all_passed(&reports), "threefold curve identity suite");
    passed("criterion 08 (threefold curve blow-up: both symbolic identities, exact)");
}

#[test]
fn criterion_09_chern_character_cross_check() {
    for name in ["surface-point", "threefold-point", "threefold-curve"] {
        let br = presets::blowup_preset(name).unwrap();
        let (lhs, rhs) = br.chern_character_check().unwrap();
        assert_eq!(lhs, rhs, "character comparison on {name}");

        // degree-1 sanity: the character correction starts at (r-1)[E]
        let r = br.embedding().codim();
        let e = br.exceptional_class();
        assert_eq!(
            br.component(&lhs, 1),
            br.scale(&e, &rat_int(r as i64 - 1)),
            "degree-1 character correction on {name}"
        );

        // Newton-conversion oracle: on the blow-up, the elementary classes
        // recovered from the character match the total-Chern components
        let n = br.embedding().ring_y().dim();
        let total = br.total_chern().unwrap();
        let ch = br.chern_character_of_total(&total, n).unwrap();
        for p in 1..=n {
            let args: Vec<_> = (1..=p).map(|k| br.component(&ch, k)).collect();
            let sigma = br.eval_conversion(&elementary_conversion(p), &args);
            assert_eq!(
                sigma,
                br.component(&total, p),
                "conversion round trip at degree {p} on {name}"
            );
        }
    }
    passed("criterion 09 (character comparison agrees with the total-Chern formula, exact)");
}

#[test]
fn criterion_10_appendix_semantics() {
    for name in [
        "surface-point",
        "threefold-point",
        "threefold-curve",
        "universal-r2",
        "universal-r3",
    ] {
        let br = presets::blowup_preset(name).unwrap();
        let exc = br.exceptional();
        let r = br.embedding().codim();

        // j^* j_* = (-zeta) on every basis class of the exceptional ring
        for m in exc.ring().basis() {
            let cls = GradedClass::from_poly(
                exc.ring(),
                Poly::from_monomial(m, rat_int(1)),
            );
            let lhs = br.j_star(&br.push_j(&cls).unwrap()).unwrap();
            let rhs = exc.zeta().neg().mul(&cls).unwrap();
            assert_eq!(lhs, rhs, "self-intersection on {name}");
        }

        // key formula on a basis of the center
        let top_q = exc.q_chern(r - 1).unwrap();
        for m in br.embedding().ring_x().basis() {
            let a = GradedClass::from_poly(
                br.embedding().ring_x(),
                Poly::from_monomial(m, rat_int(1)),
            );
            let lhs = br
                .push_j(&exc.lift(&a).unwrap().mul(&top_q).unwrap())
                .unwrap();
            let rhs = br.pi_star(&br.embedding().push().apply(&a).unwrap());
            assert_eq!(lhs, rhs, "key formula on {name}");
        }

        // uniqueness of the decomposition: a class vanishes exactly when
        // its y-part and every slot vanish
        let one_x = GradedClass::one(br.embedding().ring_x());
        for i in 0..(r - 1) as usize {
            let single = br.pure_slot(i, one_x.clone());
            assert!(!single.is_zero(), "slot {i} class nonzero on {name}");
            assert!(br.sub(&single, &single).unwrap().is_zero());
        }
        let mixed = br.add(
            &br.pi_star(&GradedClass::one(br.embedding().ring_y())),
            &br.exceptional_class(),
        );
        assert!(!mixed.unwrap().is_zero());
    }
    passed("criterion 10 (self-intersection, key formula, decomposition uniqueness, exact)");
}

#[test]
fn criterion_11_iwasawa() {
    // operator identity: del delbar(-w^{3|3}) = w^{12|12}
    let se = StructureEquations::iwasawa();
    let w33 = InvariantForm::basis_monomial(3, &[3], &[3]);
    let w1212 = InvariantForm::basis_monomial(3, &[1, 2], &[1, 2]);
    assert_eq!(w33.neg().delbar(&se).del(&se), w1212);

    // certified exactness with a verified primitive
    match nilbc::is_bc_exact(&se, &w1212).unwrap() {
        BcExactness::Exact { primitive } => {
            assert_eq!(primitive.delbar(&se).del(&se), w1212);
        }
        BcExactness::NotExact { .. } => panic!("the fiber class must bound"),
    }

    // assembled blow-up: c_1 = -[E], c_2 = 0, c_3 = 0
    let br = presets::iwasawa_blowup().unwrap();
    let total = br.total_chern().unwrap();
    let e = br.exceptional_class();
    assert_eq!(br.component(&total, 1), br.neg(&e));
    assert!(br.component(&total, 2).is_zero());
    assert!(br.component(&total, 3).is_zero());

    // and the full scenario report
    let reports = nilbc::iwasawa_blowup_check().unwrap();
    assert!(all_passed(&reports), "iwasawa scenario reports");
    passed("criterion 11 (Iwasawa fiber blow-up: exact matrix identity and Chern classes)");
}

#[test]
fn criterion_12_property_suites() {
    // normal-form confluence: 100 randomized cases on each preset ring
    let mut seed = 1000u64;
    for name in presets::PRESET_NAMES {
        let br = presets::blowup_preset(name).unwrap();
        for ring in [
            br.embedding().ring_y(),
            br.embedding().ring_x(),
            br.exceptional().ring(),
        ] {
            seed += 1;
            confluence_check(ring, 100, seed).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    // projection formula on every shipped embedding
    for name in presets::PRESET_NAMES {
        let br = presets::blowup_preset(name).unwrap();
        let report =
            projection_formula_check(br.embedding().pull(), br.embedding().push()).unwrap();
        assert!(report.pass, "{name}: {report}");
    }
    for r in 2..=4u32 {
        let (embed, _) = presets::rr_tube(r, 2).unwrap();
        let report = projection_formula_check(embed.pull(), embed.push()).unwrap();
        assert!(report.pass, "tube r={r}: {report}");
    }

    // symmetric-function round trips to degree 6
    {
        let ring = free_ring(vec![("t", 1)], 6);
        let t = named(&ring, "t");
        let sigma: Vec<GradedClass> = (1..=6u32)
            .map(|k| t.pow(k).scale(&rat(2 * k as i64 - 5, 3)))
            .collect();
        let mut s = Vec::new();
        for m in 1..=6u32 {
            s.push(
                newton_conversion(m).eval(
                    &GradedClass::one(&ring),
                    &GradedClass::zero(&ring),
                    &sigma[..m as usize],
                ),
            );
        }
        for m in 1..=6u32 {
            let back = elementary_conversion(m).eval(
                &GradedClass::one(&ring),
                &GradedClass::zero(&ring),
                &s[..m as usize],
            );
            assert_eq!(back, sigma[(m - 1) as usize], "round trip at m = {m}");
        }
    }

    // Chern-root oracles for dual, wedge, tensor with explicit integer roots
    {
        let ring = free_ring(vec![("t", 1)], 6);
        let t = named(&ring, "t");
        let bundle_from_roots = |roots: &[i64]| -> FormalBundle {
            let chern: Vec<GradedClass> = (1..=roots.len())
                .map(|k| {
                    let mut acc = rat_int(0);
                    for subset in combinations(roots.len(), k) {
                        acc += rat_int(subset.iter().map(|&i| roots[i]).product::<i64>());
                    }
                    t.pow(k as u32).scale(&acc)
                })
                .collect();
            FormalBundle::new(&ring, roots.len() as u32, chern).unwrap()
        };
        let root_sets: [&[i64]; 3] = [&[1, 2, 3], &[2, -1, 4], &[1, 1, -2]];
        for roots in root_sets {
            let b = bundle_from_roots(roots);
            // dual: negated roots
            let neg: Vec<i64> = roots.iter().map(|x| -x).collect();
            assert_eq!(b.dual().total(), bundle_from_roots(&neg).total());
            // wedge^2: pairwise sums
            let wedge_roots: Vec<i64> = combinations(roots.len(), 2)
                .into_iter()
                .map(|s| roots[s[0]] + roots[s[1]])
                .collect();
            assert_eq!(
                b.wedge(2).unwrap().total(),
                bundle_from_roots(&wedge_roots).total()
            );
            // tensor with rank <= 3 partners
            for other in [&[1i64, -1][..], &[2, 0, 1][..]] {
                let o = bundle_from_roots(other);
                let sums: Vec<i64> = roots
                    .iter()
                    .flat_map(|x| other.iter().map(move |y| x + y))
                    .collect();
                assert_eq!(
                    b.tensor(&o).unwrap().total(),
                    bundle_from_roots(&sums).total()
                );
            }
        }
    }
    passed("criterion 12 (confluence, projection formula, round trips, root oracles)");
}
