//! Finitely presented graded-commutative rings with confluent normal forms.
//!
//! A [`RingPresentation`] is a list of generators of pure positive degree, a
//! set of homogeneous relation polynomials, and a dimension bound: every
//! monomial of weighted degree above the bound is zero. The constructor
//! completes the relation set by pairwise overlap resolution up to the
//! dimension bound (finite because of truncation), so reduction to normal
//! form is confluent regardless of the order rules are applied in.
//!
//! Classes ([`GradedClass`]) are always stored in normal form with no zero
//! coefficients. Ring homomorphisms and module maps between presentations
//! live in [`LinearRingMap`]; the projection-formula compatibility of a
//! pullback/pushforward pair is checked by [`projection_formula_check`].
//!
//! All values are immutable after construction and safe to share.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{AlgebraElem, Monomial, Poly};
use crate::rat::{self, Rational};

static RING_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Shared handle to an immutable ring presentation.
pub type RingRef = Arc<RingPresentation>;

/// One rewrite rule `lm -> rhs`, meaning the monic relation `lm - rhs = 0`.
#[derive(Debug, Clone)]
struct Rule {
    lm: Monomial,
    rhs: Poly,
}

/// Which rule and which term the reducer prefers; the completed system makes
/// every strategy land on the same normal form, and the self-check suite
/// exercises that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReduceStrategy {
    /// Largest reducible term first, first matching rule.
    Forward,
    /// Smallest reducible term first, last matching rule.
    Reverse,
}

/// A finitely presented graded-commutative ring, truncated above `dim`.
#[derive(Debug)]
pub struct RingPresentation {
    id: u64,
    names: Vec<String>,
    degrees: Vec<u32>,
    dim: u32,
    relations: Vec<Poly>,
    rules: Vec<Rule>,
}

impl RingPresentation {
    /// Builds a presentation and completes its reduction system.
    ///
    /// Generator names must be distinct and relations homogeneous in the
    /// weighted grading. `dim` is the complex dimension of the ambient
    /// manifold: a generator of degree `k` models a `(k, k)` class and any
    /// monomial of weighted degree above `dim` is zero.
    pub fn new(
        generators: Vec<(String, u32)>,
        relations: Vec<Poly>,
        dim: u32,
    ) -> Result<RingRef> {
        let mut seen = std::collections::BTreeSet::new();
        for (name, degree) in &generators {
            if !seen.insert(name.clone()) {
                return Err(Error::Invalid(format!("duplicate generator name {name}")));
            }
            if *degree == 0 {
                return Err(Error::Invalid(format!(
                    "generator {name} must have positive degree"
                )));
            }
        }
        let names: Vec<String> = generators.iter().map(|(n, _)| n.clone()).collect();
        let degrees: Vec<u32> = generators.iter().map(|(_, d)| *d).collect();
        let nvars = names.len();

        let mut seed_rules = Vec::new();
        for rel in &relations {
            if rel.nvars() != nvars {
                return Err(Error::UnknownGenerator(format!(
                    "relation uses {} variables, ring has {}",
                    rel.nvars(),
                    nvars
                )));
            }
            if rel.is_zero() {
                continue;
            }
            if rel.homogeneous_degree().is_none() {
                return Err(Error::RelationNotHomogeneous(rel.render(
                    &names.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
                )));
            }
            // relations above the truncation bound are subsumed by it
            if rel.max_degree() > dim {
                continue;
            }
            seed_rules.push(rel.clone());
        }

        let rules = complete_rules(seed_rules, &degrees, dim);
        let ring = RingPresentation {
            id: RING_COUNTER.fetch_add(1, Ordering::Relaxed),
            names,
            degrees,
            dim,
            relations,
            rules,
        };
        Ok(Arc::new(ring))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.names.iter().map(|s| s.as_str()).collect()
    }

    pub fn generator_degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Normal form of `p`: fully reduced by the completed rules, truncated
    /// above `dim`. Idempotent, and independent of the strategy.
    pub fn reduce(&self, p: &Poly) -> Poly {
        self.reduce_with(p, ReduceStrategy::Forward)
    }

    /// Reduction with an explicit strategy; exposed so the confluence
    /// self-check can compare different orders.
    pub fn reduce_with(&self, p: &Poly, strategy: ReduceStrategy) -> Poly {
        let mut work = p.truncate(self.dim);
        loop {
            let target = self.find_reducible(&work, strategy);
            let Some((m, c)) = target else {
                return work;
            };
            let rule = self
                .find_rule(&m, strategy)
                .expect("reducible monomial must have a rule");
            let q = rule.lm.quotient_into(&m);
            work.add_term(m.clone(), -c.clone());
            let replacement = rule.rhs.mul_monomial(&q, &c);
            work = work.add(&replacement);
        }
    }

    fn find_reducible(
        &self,
        p: &Poly,
        strategy: ReduceStrategy,
    ) -> Option<(Monomial, Rational)> {
        let hit = |(m, c): (&Monomial, &Rational)| {
            if self.find_rule(m, strategy).is_some() {
                Some((m.clone(), c.clone()))
            } else {
                None
            }
        };
        match strategy {
            ReduceStrategy::Forward => {
                let terms: Vec<_> = p.terms().collect();
                terms.into_iter().rev().find_map(hit)
            }
            ReduceStrategy::Reverse => p.terms().find_map(hit),
        }
    }

    fn find_rule(&self, m: &Monomial, strategy: ReduceStrategy) -> Option<&Rule> {
        match strategy {
            ReduceStrategy::Forward => self.rules.iter().find(|r| r.lm.divides(m)),
            ReduceStrategy::Reverse => self.rules.iter().rev().find(|r| r.lm.divides(m)),
        }
    }

    fn is_normal_monomial(&self, m: &Monomial) -> bool {
        m.degree() <= self.dim && !self.rules.iter().any(|r| r.lm.divides(m))
    }

    /// All normal-form monomials of weighted degree `<= dim`, in graded-lex
    /// order. This is a basis of the ring as a rational vector space.
    pub fn basis(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::unit(self.num_generators())];
        for i in 0..self.num_generators() {
            let mut extended = Vec::new();
            for m in &out {
                let mut exps = m.exps().to_vec();
                loop {
                    exps[i] += 1;
                    let cand = Monomial::new(exps.clone(), &self.degrees);
                    if cand.degree() > self.dim {
                        break;
                    }
                    extended.push(cand);
                }
            }
            out.extend(extended);
        }
        let mut out: Vec<Monomial> = out
            .into_iter()
            .filter(|m| self.is_normal_monomial(m))
            .collect();
        out.sort();
        out
    }

    /// Normal-form monomials of exactly the given degree.
    pub fn basis_of_degree(&self, degree: u32) -> Vec<Monomial> {
        self.basis()
            .into_iter()
            .filter(|m| m.degree() == degree)
            .collect()
    }
}

/// Completes a homogeneous rule set under the truncation ideal by pairwise
/// overlap resolution (Buchberger-style, bounded by `dim`).
fn complete_rules(seed: Vec<Poly>, degrees: &[u32], dim: u32) -> Vec<Rule> {
    let mut rules: Vec<Rule> = Vec::new();

    let reduce_by =
        |rules: &[Rule], p: &Poly| -> Poly { reduce_free(rules, p, dim) };

    let insert = |rules: &mut Vec<Rule>, p: Poly| {
        let red = reduce_by(rules, &p);
        if red.is_zero() {
            return false;
        }
        let (lm, lc) = {
            let (m, c) = red.leading().expect("nonzero");
            (m.clone(), c.clone())
        };
        let monic = red.scale(&(rat::rat_int(1) / lc));
        let mut rhs = monic.neg();
        rhs.add_term(lm.clone(), rat::rat_int(1));
        rules.push(Rule { lm, rhs });
        true
    };

    for p in seed {
        insert(&mut rules, p);
    }

    // overlap resolution: S-polynomials of rule pairs must reduce to zero
    let mut i = 0;
    while i < rules.len() {
        let mut j = 0;
        while j < i {
            let (a, b) = (&rules[i], &rules[j]);
            if !a.lm.disjoint_support(&b.lm) {
                let lcm = Monomial::lcm_of(&a.lm, &b.lm, degrees);
                if lcm.degree() <= dim {
                    let qa = a.lm.quotient_into(&lcm);
                    let qb = b.lm.quotient_into(&lcm);
                    let s = a
                        .rhs
                        .mul_monomial(&qa, &rat::rat_int(1))
                        .sub(&b.rhs.mul_monomial(&qb, &rat::rat_int(1)));
                    if insert(&mut rules, s) {
                        // restart pair scan for the new rule set
                    }
                }
            }
            j += 1;
        }
        i += 1;
    }

    // inter-reduce: drop rules subsumed by the rest, normalize tails
    loop {
        let mut changed = false;
        let mut k = 0;
        while k < rules.len() {
            let rule = rules.remove(k);
            let mut as_poly = rule.rhs.neg();
            as_poly.add_term(rule.lm.clone(), rat::rat_int(1));
            let red = reduce_free(&rules, &as_poly, dim);
            if red.is_zero() {
                changed = true;
                continue;
            }
            let (lm, lc) = {
                let (m, c) = red.leading().unwrap();
                (m.clone(), c.clone())
            };
            let monic = red.scale(&(rat::rat_int(1) / lc));
            let mut rhs = monic.neg();
            rhs.add_term(lm.clone(), rat::rat_int(1));
            let new_rule = Rule {
                lm: lm.clone(),
                rhs,
            };
            if new_rule.lm != rule.lm || new_rule.rhs != rule.rhs {
                changed = true;
            }
            rules.insert(k, new_rule);
            k += 1;
        }
        if !changed {
            break;
        }
    }

    rules.sort_by(|a, b| a.lm.cmp(&b.lm));
    rules
}

/// Reduction against an explicit rule slice (used during completion, before
/// a presentation exists).
fn reduce_free(rules: &[Rule], p: &Poly, dim: u32) -> Poly {
    let mut work = p.truncate(dim);
    'outer: loop {
        let terms: Vec<(Monomial, Rational)> = work
            .terms()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        for (m, c) in terms.into_iter().rev() {
            if let Some(rule) = rules.iter().find(|r| r.lm.divides(&m)) {
                let q = rule.lm.quotient_into(&m);
                work.add_term(m, -c.clone());
                work = work.add(&rule.rhs.mul_monomial(&q, &c));
                continue 'outer;
            }
        }
        return work;
    }
}

/// An element of a presented ring, stored in normal form.
#[derive(Debug, Clone)]
pub struct GradedClass {
    ring: RingRef,
    poly: Poly,
}

impl PartialEq for GradedClass {
    fn eq(&self, other: &Self) -> bool {
        self.ring.id == other.ring.id && self.poly == other.poly
    }
}

impl Eq for GradedClass {}

impl GradedClass {
    pub fn zero(ring: &RingRef) -> Self {
        GradedClass {
            ring: ring.clone(),
            poly: Poly::zero(ring.num_generators()),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        GradedClass::scalar(ring, rat::rat_int(1))
    }

    pub fn scalar(ring: &RingRef, c: Rational) -> Self {
        GradedClass {
            ring: ring.clone(),
            poly: Poly::constant(ring.num_generators(), c),
        }
    }

    pub fn generator(ring: &RingRef, i: usize) -> Result<Self> {
        if i >= ring.num_generators() {
            return Err(Error::IndexError {
                index: i as u32,
                max: ring.num_generators().saturating_sub(1) as u32,
            });
        }
        Ok(GradedClass::from_poly(
            ring,
            Poly::var(i, ring.num_generators(), ring.degrees()),
        ))
    }

    pub fn generator_named(ring: &RingRef, name: &str) -> Result<Self> {
        let i = ring.generator_index(name)?;
        GradedClass::generator(ring, i)
    }

    /// Reduces an arbitrary polynomial into the ring.
    pub fn from_poly(ring: &RingRef, poly: Poly) -> Self {
        assert_eq!(
            poly.nvars(),
            ring.num_generators(),
            "polynomial does not match ring generators"
        );
        GradedClass {
            ring: ring.clone(),
            poly: ring.reduce(&poly),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn guard(&self, other: &Self) -> Result<()> {
        if self.ring.id != other.ring.id {
            return Err(Error::RingMismatch(format!(
                "ring #{} vs ring #{}",
                self.ring.id, other.ring.id
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.guard(other)?;
        Ok(GradedClass {
            ring: self.ring.clone(),
            poly: self.poly.add(&other.poly),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.guard(other)?;
        Ok(GradedClass {
            ring: self.ring.clone(),
            poly: self.poly.sub(&other.poly),
        })
    }

    pub fn neg(&self) -> Self {
        GradedClass {
            ring: self.ring.clone(),
            poly: self.poly.neg(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GradedClass {
            ring: self.ring.clone(),
            poly: self.poly.scale(c),
        }
    }

    /// Cup product, reduced to normal form.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.guard(other)?;
        Ok(GradedClass {
            ring: self.ring.clone(),
            poly: self.ring.reduce(&self.poly.mul(&other.poly)),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GradedClass::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// The degree-`k` homogeneous part.
    pub fn component(&self, k: u32) -> Self {
        GradedClass {
            ring: self.ring.clone(),
            poly: self.poly.component(k),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.poly.max_degree()
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.poly.homogeneous_degree()
    }

    pub fn constant_term(&self) -> Rational {
        self.poly.constant_term()
    }

    pub fn render(&self) -> String {
        self.poly.render(&self.ring.generator_names())
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl AlgebraElem for GradedClass {
    fn add_elem(&self, other: &Self) -> Self {
        self.add(other).expect("same ring")
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self.mul(other).expect("same ring")
    }
    fn scale_elem(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

/// Whether a map is a ring homomorphism (substitution on generators) or a
/// plain linear map on the monomial basis.
#[derive(Debug, Clone)]
enum MapData {
    Hom { images: Vec<GradedClass> },
    Module { images: BTreeMap<Monomial, GradedClass> },
}

/// A degree-respecting linear map between two presented rings: either a ring
/// homomorphism given by generator images (pullbacks), or a module map given
/// on basis monomials with a fixed degree shift (pushforwards).
#[derive(Debug, Clone)]
pub struct LinearRingMap {
    source: RingRef,
    target: RingRef,
    degree_shift: u32,
    data: MapData,
}

impl LinearRingMap {
    /// Identity homomorphism of a ring.
    pub fn identity(ring: &RingRef) -> Self {
        let images = (0..ring.num_generators())
            .map(|i| GradedClass::generator(ring, i).expect("index in range"))
            .collect();
        LinearRingMap {
            source: ring.clone(),
            target: ring.clone(),
            degree_shift: 0,
            data: MapData::Hom { images },
        }
    }

    /// Ring homomorphism sending generator `i` of `source` to `images[i]`.
    ///
    /// Validated at construction: each image is homogeneous of the
    /// generator's degree (or zero), every relation of the source maps to
    /// zero, and products of generator pairs are preserved.
    pub fn ring_hom(
        source: &RingRef,
        target: &RingRef,
        images: Vec<GradedClass>,
    ) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::Invalid(format!(
                "expected {} generator images, got {}",
                source.num_generators(),
                images.len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.ring().id != target.id {
                return Err(Error::RingMismatch(format!(
                    "image of generator {} lives in the wrong ring",
                    source.generator_names()[i]
                )));
            }
            if !img.is_zero() {
                let d = img.homogeneous_degree();
                if d != Some(source.generator_degree(i)) {
                    return Err(Error::DegreeMismatch {
                        index: i as u32,
                        expected: source.generator_degree(i),
                        found: img.render(),
                    });
                }
            }
        }
        let map = LinearRingMap {
            source: source.clone(),
            target: target.clone(),
            degree_shift: 0,
            data: MapData::Hom { images },
        };
        // relations must map to zero, otherwise substitution is not well
        // defined on normal forms
        for rel in source.relations() {
            let image = map.apply_raw_poly(rel)?;
            if !image.is_zero() {
                return Err(Error::Invalid(format!(
                    "relation does not map to zero: image {}",
                    image.render()
                )));
            }
        }
        // multiplicativity on generator pairs within the dimension bound
        for i in 0..source.num_generators() {
            for j in i..source.num_generators() {
                if source.generator_degree(i) + source.generator_degree(j) > source.dim() {
                    continue;
                }
                let gi = GradedClass::generator(source, i)?;
                let gj = GradedClass::generator(source, j)?;
                let prod = gi.mul(&gj)?;
                let lhs = map.apply(&prod)?;
                let rhs = map.apply(&gi)?.mul(&map.apply(&gj)?)?;
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "map is not multiplicative on {}*{}",
                        source.generator_names()[i],
                        source.generator_names()[j]
                    )));
                }
            }
        }
        Ok(map)
    }

    /// Module map defined on normal-form basis monomials of the source,
    /// raising degree by exactly `degree_shift`.
    pub fn module_map(
        source: &RingRef,
        target: &RingRef,
        degree_shift: u32,
        images: Vec<(GradedClass, GradedClass)>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (key, img) in images {
            if key.ring().id != source.id {
                return Err(Error::RingMismatch(
                    "basis key lives in the wrong ring".to_string(),
                ));
            }
            if img.ring().id != target.id {
                return Err(Error::RingMismatch(format!(
                    "image of {} lives in the wrong ring",
                    key.render()
                )));
            }
            let mono = single_monomial(&key).ok_or_else(|| {
                Error::Invalid(format!(
                    "module map keys must be single monomials, got {}",
                    key.render()
                ))
            })?;
            if !img.is_zero() {
                let expected = mono.degree() + degree_shift;
                if img.homogeneous_degree() != Some(expected) {
                    return Err(Error::DegreeMismatch {
                        index: 0,
                        expected,
                        found: img.render(),
                    });
                }
            }
            table.insert(mono, img);
        }
        Ok(LinearRingMap {
            source: source.clone(),
            target: target.clone(),
            degree_shift,
            data: MapData::Module { images: table },
        })
    }

    pub fn source(&self) -> &RingRef {
        &self.source
    }

    pub fn target(&self) -> &RingRef {
        &self.target
    }

    pub fn degree_shift(&self) -> u32 {
        self.degree_shift
    }

    pub fn is_ring_hom(&self) -> bool {
        matches!(self.data, MapData::Hom { .. })
    }

    fn apply_raw_poly(&self, p: &Poly) -> Result<GradedClass> {
        match &self.data {
            MapData::Hom { images } => {
                let one = GradedClass::one(&self.target);
                let zero = GradedClass::zero(&self.target);
                Ok(p.eval(&one, &zero, images))
            }
            MapData::Module { .. } => Err(Error::Invalid(
                "cannot substitute through a module map".to_string(),
            )),
        }
    }

    /// Applies the map to a class of the source ring.
    pub fn apply(&self, a: &GradedClass) -> Result<GradedClass> {
        if a.ring().id != self.source.id {
            return Err(Error::RingMismatch(
                "class does not live in the map source".to_string(),
            ));
        }
        match &self.data {
            MapData::Hom { images } => {
                let one = GradedClass::one(&self.target);
                let zero = GradedClass::zero(&self.target);
                Ok(a.poly().eval(&one, &zero, images))
            }
            MapData::Module { images } => {
                let mut acc = GradedClass::zero(&self.target);
                for (m, c) in a.poly().terms() {
                    let img = images.get(m).ok_or_else(|| {
                        Error::BasisIncomplete(
                            Poly::from_monomial(m.clone(), rat::rat_int(1))
                                .render(&self.source.generator_names()),
                        )
                    })?;
                    acc = acc.add(&img.scale(c))?;
                }
                Ok(acc)
            }
        }
    }
}

fn single_monomial(c: &GradedClass) -> Option<Monomial> {
    let mut terms = c.poly().terms();
    let (m, coeff) = terms.next()?;
    if terms.next().is_some() || !rat::is_one(coeff) {
        return None;
    }
    Some(m.clone())
}

/// Outcome of the projection-formula compatibility check of a pullback
/// `pull: B -> A` and a pushforward `push: A -> B`.
#[derive(Debug, Clone)]
pub struct ProjectionReport {
    pub pass: bool,
    pub counterexample: Option<ProjectionCounterexample>,
}

#[derive(Debug, Clone)]
pub struct ProjectionCounterexample {
    pub b: String,
    pub a: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for ProjectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "projection formula holds on all basis pairs"),
            Some(ce) => write!(
                f,
                "projection formula fails at b = {}, a = {}: push(pull(b)*a) = {} but b*push(a) = {}",
                ce.b, ce.a, ce.lhs, ce.rhs
            ),
        }
    }
}

/// Verifies `push(pull(b) * a) = b * push(a)` on all pairs of basis
/// monomials within the dimension bounds. A failing pair is reported, not
/// raised as an error.
pub fn projection_formula_check(
    pull: &LinearRingMap,
    push: &LinearRingMap,
) -> Result<ProjectionReport> {
    if !pull.is_ring_hom() {
        return Err(Error::Invalid(
            "pullback must be a ring homomorphism".to_string(),
        ));
    }
    if push.is_ring_hom() {
        return Err(Error::Invalid("pushforward must be a module map".to_string()));
    }
    if pull.source().id != push.target().id || pull.target().id != push.source().id {
        return Err(Error::RingMismatch(
            "pullback and pushforward do not connect the same pair of rings".to_string(),
        ));
    }
    let ring_b = pull.source();
    let ring_a = pull.target();
    for mb in ring_b.basis() {
        let b = GradedClass::from_poly(ring_b, Poly::from_monomial(mb, rat::rat_int(1)));
        let pulled = pull.apply(&b)?;
        for ma in ring_a.basis() {
            let a = GradedClass::from_poly(ring_a, Poly::from_monomial(ma, rat::rat_int(1)));
            let lhs = push.apply(&pulled.mul(&a)?)?;
            let rhs = b.mul(&push.apply(&a)?)?;
            if lhs != rhs {
                return Ok(ProjectionReport {
                    pass: false,
                    counterexample: Some(ProjectionCounterexample {
                        b: b.render(),
                        a: a.render(),
                        lhs: lhs.render(),
                        rhs: rhs.render(),
                    }),
                });
            }
        }
    }
    Ok(ProjectionReport {
        pass: true,
        counterexample: None,
    })
}

/// Deterministic xorshift generator for the randomized self-check suites.
/// Not cryptographic; just a stable source of test vectors.
#[derive(Debug, Clone)]
pub struct XorShift64(u64);

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        XorShift64(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }

    /// Small rational in `[-4, 4]` with denominator in `{1, 2, 3}`.
    pub fn small_rational(&mut self) -> Rational {
        let numer = self.below(9) as i64 - 4;
        let denom = self.below(3) as i64 + 1;
        rat::rat(numer, denom)
    }
}

/// Random homogeneous class of the given degree (coefficients drawn from the
/// generator's small-rational pool; may be zero if the degree is empty).
pub fn random_homogeneous(ring: &RingRef, degree: u32, rng: &mut XorShift64) -> GradedClass {
    let mut p = Poly::zero(ring.num_generators());
    for m in ring.basis_of_degree(degree) {
        p.add_term(m, rng.small_rational());
    }
    GradedClass::from_poly(ring, p)
}

/// Random inhomogeneous class with terms in all degrees up to `dim`.
pub fn random_class(ring: &RingRef, rng: &mut XorShift64) -> GradedClass {
    let mut acc = GradedClass::zero(ring);
    for d in 0..=ring.dim() {
        if rng.below(2) == 0 {
            acc = acc
                .add(&random_homogeneous(ring, d, rng))
                .expect("same ring");
        }
    }
    acc
}

/// Runs `cases` randomized confluence probes on a ring: products of random
/// homogeneous classes must reduce to the same normal form under both
/// reduction strategies, and reduction must be idempotent.
pub fn confluence_check(
    ring: &RingRef,
    cases: usize,
    seed: u64,
) -> std::result::Result<(), String> {
    let mut rng = XorShift64::new(seed);
    for case in 0..cases {
        let da = rng.below(ring.dim() as u64 + 1) as u32;
        let db = rng.below(ring.dim() as u64 + 1) as u32;
        let a = random_homogeneous(ring, da, &mut rng);
        let b = random_homogeneous(ring, db, &mut rng);
        let raw = a.poly().mul(b.poly());
        let forward = ring.reduce_with(&raw, ReduceStrategy::Forward);
        let reverse = ring.reduce_with(&raw, ReduceStrategy::Reverse);
        if forward != reverse {
            return Err(format!(
                "case {case}: strategies disagree on ({}) * ({})",
                a.render(),
                b.render()
            ));
        }
        let again = ring.reduce(&forward);
        if again != forward {
            return Err(format!("case {case}: reduction is not idempotent"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn poly_pow(ring: &RingRef, i: usize, e: u32) -> Poly {
        let mut exps = vec![0; ring.num_generators()];
        exps[i] = e;
        Poly::from_monomial(Monomial::new(exps, ring.degrees()), rat_int(1))
    }

    /// dim-2 surface-style ring with one degree-1 generator and h^3 = 0.
    fn surface_ring() -> RingRef {
        let names = vec![("h".to_string(), 1)];
        let degrees = vec![1u32];
        let rel = Poly::from_monomial(Monomial::new(vec![3], &degrees), rat_int(1));
        RingPresentation::new(names, vec![rel], 2).unwrap()
    }

    #[test]
    fn point_ring_is_rationals() {
        let ring = RingPresentation::new(vec![], vec![], 0).unwrap();
        assert_eq!(ring.basis().len(), 1);
        let one = GradedClass::one(&ring);
        assert_eq!(one.mul(&one).unwrap(), one);
    }

    #[test]
    fn surface_truncation_and_relation() {
        let ring = surface_ring();
        let h = GradedClass::generator_named(&ring, "h").unwrap();
        let h2 = h.mul(&h).unwrap();
        assert!(!h2.is_zero());
        // h * h^2 = 0 both by the relation and by dim = 2
        assert!(h.mul(&h2).unwrap().is_zero());
        assert_eq!(ring.basis().len(), 3); // 1, h, h^2
    }

    #[test]
    fn p1_ring_basis_enumeration() {
        // brute-force oracle: monomials of degree <= 1 below the ideal (z^2)
        let degrees = vec![1u32];
        let rel = Poly::from_monomial(Monomial::new(vec![2], &degrees), rat_int(1));
        let ring = RingPresentation::new(vec![("z".to_string(), 1)], vec![rel], 1).unwrap();
        let basis = ring.basis();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], Monomial::unit(1));
        assert_eq!(basis[1], Monomial::new(vec![1], &degrees));
        let z = GradedClass::generator(&ring, 0).unwrap();
        assert!(z.mul(&z).unwrap().is_zero());
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let degrees = vec![1u32];
        let mut rel = Poly::from_monomial(Monomial::new(vec![2], &degrees), rat_int(1));
        rel.add_term(Monomial::new(vec![1], &degrees), rat_int(1));
        let err = RingPresentation::new(vec![("z".to_string(), 1)], vec![rel], 3).unwrap_err();
        assert!(matches!(err, Error::RelationNotHomogeneous(_)));
    }

    #[test]
    fn unknown_generator_rejected() {
        let rel = Poly::from_monomial(Monomial::new(vec![1, 1], &[1, 1]), rat_int(1));
        let err = RingPresentation::new(vec![("z".to_string(), 1)], vec![rel], 3).unwrap_err();
        assert!(matches!(err, Error::UnknownGenerator(_)));
    }

    #[test]
    fn unit_and_component() {
        let ring = surface_ring();
        let h = GradedClass::generator_named(&ring, "h").unwrap();
        let one = GradedClass::one(&ring);
        let x = one
            .add(&h.scale(&rat_int(3)))
            .unwrap()
            .add(&h.pow(2))
            .unwrap();
        assert_eq!(x.component(1), h.scale(&rat_int(3)));
        assert_eq!(one.mul(&x).unwrap(), x);
        assert!(x.component(1).component(2).is_zero());
        // summing components reproduces the class
        let resum = (0..=2)
            .map(|k| x.component(k))
            .fold(GradedClass::zero(&ring), |acc, c| acc.add(&c).unwrap());
        assert_eq!(resum, x);
    }

    #[test]
    fn ring_mismatch_detected() {
        let r1 = surface_ring();
        let r2 = surface_ring();
        let a = GradedClass::generator(&r1, 0).unwrap();
        let b = GradedClass::generator(&r2, 0).unwrap();
        assert!(matches!(a.mul(&b), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn identity_map_and_degree_shift() {
        let ring = surface_ring();
        let id = LinearRingMap::identity(&ring);
        let h = GradedClass::generator(&ring, 0).unwrap();
        assert_eq!(id.apply(&h).unwrap(), h);

        // point into surface: 1 -> h^2 with shift 2
        let point = RingPresentation::new(vec![], vec![], 0).unwrap();
        let h2 = GradedClass::from_poly(&ring, poly_pow(&ring, 0, 2));
        let push = LinearRingMap::module_map(
            &point,
            &ring,
            2,
            vec![(GradedClass::one(&point), h2.clone())],
        )
        .unwrap();
        let img = push.apply(&GradedClass::one(&point)).unwrap();
        assert_eq!(img, h2);
        assert_eq!(img.homogeneous_degree(), Some(2));
    }

    #[test]
    fn module_map_outside_basis_errors() {
        let curve = RingPresentation::new(vec![("w".to_string(), 1)], vec![], 1).unwrap();
        let surface = surface_ring();
        // only the image of 1 is declared; applying to w must fail
        let push = LinearRingMap::module_map(
            &curve,
            &surface,
            1,
            vec![(
                GradedClass::one(&curve),
                GradedClass::generator(&surface, 0).unwrap(),
            )],
        )
        .unwrap();
        let w = GradedClass::generator(&curve, 0).unwrap();
        assert!(matches!(push.apply(&w), Err(Error::BasisIncomplete(_))));
    }

    #[test]
    fn projection_formula_point_in_surface() {
        // pull: Q[h]/(h^3) -> Q, push: 1 -> h^2
        let surface = surface_ring();
        let point = RingPresentation::new(vec![], vec![], 0).unwrap();
        let pull = LinearRingMap::ring_hom(
            &surface,
            &point,
            vec![GradedClass::zero(&point)],
        )
        .unwrap();
        let push = LinearRingMap::module_map(
            &point,
            &surface,
            2,
            vec![(
                GradedClass::one(&point),
                GradedClass::from_poly(&surface, poly_pow(&surface, 0, 2)),
            )],
        )
        .unwrap();
        let report = projection_formula_check(&pull, &push).unwrap();
        assert!(report.pass, "{report}");
    }

    #[test]
    fn projection_formula_wrong_shift_reports_counterexample() {
        let surface = surface_ring();
        let point = RingPresentation::new(vec![], vec![], 0).unwrap();
        let pull = LinearRingMap::ring_hom(
            &surface,
            &point,
            vec![GradedClass::zero(&point)],
        )
        .unwrap();
        // wrong pushforward: 1 -> h (degree shift 1)
        let push = LinearRingMap::module_map(
            &point,
            &surface,
            1,
            vec![(
                GradedClass::one(&point),
                GradedClass::generator(&surface, 0).unwrap(),
            )],
        )
        .unwrap();
        let report = projection_formula_check(&pull, &push).unwrap();
        assert!(!report.pass);
        assert!(report.counterexample.is_some());
    }

    #[test]
    fn projection_formula_trivial_rings_pass_vacuously() {
        let a = RingPresentation::new(vec![], vec![], 0).unwrap();
        let b = RingPresentation::new(vec![], vec![], 0).unwrap();
        let pull = LinearRingMap::ring_hom(&b, &a, vec![]).unwrap();
        let push = LinearRingMap::module_map(
            &a,
            &b,
            0,
            vec![(GradedClass::one(&a), GradedClass::one(&b))],
        )
        .unwrap();
        assert!(projection_formula_check(&pull, &push).unwrap().pass);
    }

    #[test]
    fn completion_handles_overlapping_relations() {
        // Q[a, b] with relations a^2 - ab and b^2: completion must add the
        // consequences so that reduction is confluent.
        let degrees = vec![1u32, 1];
        let a2 = Poly::from_monomial(Monomial::new(vec![2, 0], &degrees), rat_int(1));
        let ab = Poly::from_monomial(Monomial::new(vec![1, 1], &degrees), rat_int(1));
        let b2 = Poly::from_monomial(Monomial::new(vec![0, 2], &degrees), rat_int(1));
        let ring = RingPresentation::new(
            vec![("a".to_string(), 1), ("b".to_string(), 1)],
            vec![a2.sub(&ab), b2],
            4,
        )
        .unwrap();
        confluence_check(&ring, 200, 7).unwrap();
        // a^2 b = ab^2 = 0 in this quotient
        let a = GradedClass::generator(&ring, 0).unwrap();
        let b = GradedClass::generator(&ring, 1).unwrap();
        let prod = a.pow(2).mul(&b).unwrap();
        assert!(prod.is_zero(), "a^2 b reduces to {}", prod.render());
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        let ring = surface_ring();
        let mut rng = XorShift64::new(42);
        for _ in 0..50 {
            let a = random_class(&ring, &mut rng);
            let b = random_class(&ring, &mut rng);
            let c = random_class(&ring, &mut rng);
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            let dist = a.mul(&b.add(&c).unwrap()).unwrap();
            let dist2 = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            assert_eq!(dist, dist2);
            let comm = a.mul(&b).unwrap();
            let comm2 = b.mul(&a).unwrap();
            assert_eq!(comm, comm2);
        }
    }

    #[test]
    fn reduce_is_idempotent() {
        let ring = surface_ring();
        let mut rng = XorShift64::new(11);
        for _ in 0..50 {
            let a = random_class(&ring, &mut rng);
            let reduced = ring.reduce(a.poly());
            assert_eq!(ring.reduce(&reduced), reduced);
        }
    }

    #[test]
    fn hom_must_send_relations_to_zero() {
        // Q[z]/(z^2) -> Q[h]/(h^3): z -> h does not kill z^2
        let degrees = vec![1u32];
        let rel = Poly::from_monomial(Monomial::new(vec![2], &degrees), rat_int(1));
        let src = RingPresentation::new(vec![("z".to_string(), 1)], vec![rel], 2).unwrap();
        let dst = surface_ring();
        let h = GradedClass::generator(&dst, 0).unwrap();
        assert!(LinearRingMap::ring_hom(&src, &dst, vec![h]).is_err());
    }

    #[test]
    fn degree_additivity_before_truncation() {
        let ring = surface_ring();
        let h = GradedClass::generator(&ring, 0).unwrap();
        let p = h.poly().mul(h.poly());
        assert_eq!(p.homogeneous_degree(), Some(2));
        let q = p.mul(h.poly());
        assert_eq!(q.homogeneous_degree(), Some(3));
    }

    #[test]
    fn weighted_relation_between_different_degrees() {
        // Q[a, b] with deg a = 1, deg b = 2 and the relation a^2 = b:
        // the normal basis in dim 3 is 1, a, b, ab
        let degrees = vec![1u32, 2];
        let a2 = Poly::from_monomial(Monomial::new(vec![2, 0], &degrees), rat_int(1));
        let b = Poly::from_monomial(Monomial::new(vec![0, 1], &degrees), rat_int(1));
        let ring = RingPresentation::new(
            vec![("a".to_string(), 1), ("b".to_string(), 2)],
            vec![a2.sub(&b)],
            3,
        )
        .unwrap();
        assert_eq!(ring.basis().len(), 4);
        let a = GradedClass::generator(&ring, 0).unwrap();
        let b = GradedClass::generator(&ring, 1).unwrap();
        assert_eq!(a.pow(2), b);
        assert_eq!(a.pow(3), a.mul(&b).unwrap());
        assert!(a.pow(4).is_zero(), "degree 4 exceeds the bound");
        confluence_check(&ring, 100, 5).unwrap();
    }

    #[test]
    fn scalar_arithmetic() {
        let ring = surface_ring();
        let x = GradedClass::scalar(&ring, rat(3, 2));
        let y = GradedClass::scalar(&ring, rat(1, 2));
        assert_eq!(x.add(&y).unwrap(), GradedClass::scalar(&ring, rat_int(2)));
    }
}
