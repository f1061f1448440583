//! The blow-up cohomology ring and its pushforward / pullback calculus.
//!
//! For a center of codimension `r >= 2` inside an ambient manifold, classes
//! on the blow-up decompose uniquely as
//!
//! ```text
//! pi^*(y-part) + sum_{i=0}^{r-2} j_*( zeta^i . rho^*(slot_i) )
//! ```
//!
//! where `zeta` is the first Chern class of the dual of the tautological
//! subbundle on the exceptional divisor. A [`BlowupClass`] stores that data,
//! so equality of classes is equality of the parts; that realizes the
//! injectivity of the decomposition structurally.
//!
//! Multiplication uses the projection formula together with
//! `j^* j_* = (-zeta)`, since the exceptional divisor has normal bundle
//! `O_E(-1)` (its self-intersection is negative). Occurrences of the top
//! power `zeta^{r-1}` inside a pushforward are rewritten through the key
//! formula `j_*( rho^* a . c_{r-1}(Q_E) ) = pi^* i_* a` into a y-part plus
//! lower slots.
//!
//! The total-Chern-class comparison of the blow-up and the base is computed
//! from the correction class `alpha`, which is assembled in the free
//! `zeta`-module (division by `zeta` happens there, before the Grothendieck
//! relation is imposed, where it is exact) and admits an equivalent binomial
//! expansion used as a cross-check.

use crate::error::{Error, Result};
use crate::gring::{
    projection_formula_check, GradedClass, LinearRingMap, RingPresentation, RingRef,
};
use crate::poly::{AlgebraElem, Monomial, Poly};
use crate::rat::{self, Rational};
use crate::report::CheckReport;
use crate::rrwd;
use crate::symchern::{
    exp_coefficients, newton_conversion, series_in_class, FormalBundle, TotalClass,
};

/// A closed embedding of codimension `r >= 2`: the two rings, the pullback,
/// the pushforward, the normal bundle, and optional tangent total classes.
#[derive(Debug, Clone)]
pub struct EmbeddingData {
    ring_y: RingRef,
    ring_x: RingRef,
    r: u32,
    pull: LinearRingMap,
    push: LinearRingMap,
    normal: FormalBundle,
    tangent_y: Option<TotalClass>,
    tangent_x: Option<TotalClass>,
}

impl EmbeddingData {
    /// Validates the wiring, the degree shift, and the projection formula.
    pub fn new(
        pull: LinearRingMap,
        push: LinearRingMap,
        normal: FormalBundle,
        tangent_y: Option<TotalClass>,
        tangent_x: Option<TotalClass>,
    ) -> Result<Self> {
        let ring_y = pull.source().clone();
        let ring_x = pull.target().clone();
        if push.source().id() != ring_x.id() || push.target().id() != ring_y.id() {
            return Err(Error::RingMismatch(
                "pushforward must go from the center to the ambient ring".to_string(),
            ));
        }
        let r = push.degree_shift();
        if r < 2 {
            return Err(Error::Invalid(format!(
                "blow-up centers need codimension >= 2, got {r}"
            )));
        }
        if normal.ring().id() != ring_x.id() {
            return Err(Error::RingMismatch(
                "normal bundle must live on the center".to_string(),
            ));
        }
        if normal.rank() != r {
            return Err(Error::RankMismatch {
                expected: r,
                found: normal.rank(),
            });
        }
        if let Some(t) = &tangent_y {
            if t.ring().id() != ring_y.id() {
                return Err(Error::RingMismatch("ambient tangent class".to_string()));
            }
        }
        if let Some(t) = &tangent_x {
            if t.ring().id() != ring_x.id() {
                return Err(Error::RingMismatch("center tangent class".to_string()));
            }
        }
        let report = projection_formula_check(&pull, &push)?;
        if !report.pass {
            return Err(Error::Invalid(format!("{report}")));
        }
        Ok(EmbeddingData {
            ring_y,
            ring_x,
            r,
            pull,
            push,
            normal,
            tangent_y,
            tangent_x,
        })
    }

    pub fn ring_y(&self) -> &RingRef {
        &self.ring_y
    }

    pub fn ring_x(&self) -> &RingRef {
        &self.ring_x
    }

    pub fn codim(&self) -> u32 {
        self.r
    }

    pub fn pull(&self) -> &LinearRingMap {
        &self.pull
    }

    pub fn push(&self) -> &LinearRingMap {
        &self.push
    }

    pub fn normal(&self) -> &FormalBundle {
        &self.normal
    }

    pub fn tangent_y(&self) -> Option<&TotalClass> {
        self.tangent_y.as_ref()
    }

    pub fn tangent_x(&self) -> Option<&TotalClass> {
        self.tangent_x.as_ref()
    }
}

// ---------------------------------------------------------------------------
// Free zeta-module, used before the Grothendieck relation is imposed
// ---------------------------------------------------------------------------

/// A polynomial in `zeta` with coefficients in the center's ring, with no
/// relation imposed on `zeta`. `coeffs[k]` is the coefficient of `zeta^k`.
#[derive(Debug, Clone)]
pub struct ZetaPoly {
    base: RingRef,
    coeffs: Vec<GradedClass>,
}

impl PartialEq for ZetaPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.base.id() != other.base.id() {
            return false;
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl Eq for ZetaPoly {}

impl ZetaPoly {
    pub fn zero(base: &RingRef) -> Self {
        ZetaPoly {
            base: base.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn from_class(cls: GradedClass) -> Self {
        ZetaPoly {
            base: cls.ring().clone(),
            coeffs: vec![cls],
        }
    }

    pub fn base(&self) -> &RingRef {
        &self.base
    }

    pub fn coeff(&self, k: usize) -> GradedClass {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| GradedClass::zero(&self.base))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn set_coeff(&mut self, k: usize, cls: GradedClass) {
        while self.coeffs.len() <= k {
            self.coeffs.push(GradedClass::zero(&self.base));
        }
        self.coeffs[k] = cls;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (k, c) in other.coeffs.iter().enumerate() {
            out.set_coeff(k, out.coeff(k).add(c)?);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ZetaPoly {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Multiplies every coefficient by an X-class.
    pub fn mul_class(&self, cls: &GradedClass) -> Result<Self> {
        let mut out = ZetaPoly::zero(&self.base);
        for (k, c) in self.coeffs.iter().enumerate() {
            out.set_coeff(k, c.mul(cls)?);
        }
        Ok(out)
    }

    /// Multiplies by a scalar polynomial in `zeta` given by its coefficient
    /// list.
    pub fn mul_zeta_series(&self, series: &[Rational]) -> Self {
        let mut out = ZetaPoly::zero(&self.base);
        for (j, s) in series.iter().enumerate() {
            for (k, c) in self.coeffs.iter().enumerate() {
                let cur = out.coeff(j + k);
                out.set_coeff(j + k, cur.add(&c.scale(s)).expect("same ring"));
            }
        }
        out
    }

    /// Exact division by `zeta`; the constant coefficient must vanish.
    pub fn divide_by_zeta(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if !c0.is_zero() {
            return Err(Error::FormulaViolation(format!(
                "zeta-constant term {} is nonzero before division",
                c0.render()
            )));
        }
        Ok(ZetaPoly {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().skip(1).cloned().collect(),
        })
    }

    /// Total-degree-`d` part, counting `zeta` with degree 1.
    pub fn component(&self, d: u32) -> Self {
        let mut out = ZetaPoly::zero(&self.base);
        for (k, c) in self.coeffs.iter().enumerate() {
            if d >= k as u32 {
                out.set_coeff(k, c.component(d - k as u32));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match k {
                0 => parts.push(format!("({})", c.render())),
                1 => parts.push(format!("({})*zeta", c.render())),
                _ => parts.push(format!("({})*zeta^{k}", c.render())),
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

// ---------------------------------------------------------------------------
// The exceptional ring: the center's ring extended by zeta
// ---------------------------------------------------------------------------

/// Cohomology of the exceptional divisor: the center's ring with one extra
/// degree-1 generator `zeta` subject to the Grothendieck relation
/// `sum_{i=0}^{r} zeta^{r-i} c_i(N) = 0`, a free module on
/// `1, zeta, ..., zeta^{r-1}` over the center.
#[derive(Debug, Clone)]
pub struct ExceptionalRing {
    ring: RingRef,
    base: RingRef,
    r: u32,
    lift: LinearRingMap,
    zeta: GradedClass,
    normal: FormalBundle,
}

impl ExceptionalRing {
    pub fn new(base: &RingRef, normal: &FormalBundle, r: u32) -> Result<Self> {
        if normal.ring().id() != base.id() {
            return Err(Error::RingMismatch(
                "normal bundle must live on the center".to_string(),
            ));
        }
        let mut zeta_name = "zeta".to_string();
        while base.generator_names().contains(&zeta_name.as_str()) {
            zeta_name.push('_');
        }
        let mut gens = vec![(zeta_name, 1u32)];
        for (i, name) in base.generator_names().iter().enumerate() {
            gens.push((name.to_string(), base.generator_degree(i)));
        }
        let nvars = gens.len();
        let degrees: Vec<u32> = gens.iter().map(|(_, d)| *d).collect();

        // relations of the base, with variable indices shifted past zeta
        let mut relations: Vec<Poly> = base
            .relations()
            .iter()
            .map(|rel| shift_poly(rel, nvars, &degrees))
            .collect();

        let dim = base.dim() + r - 1;

        // the truncation ideal of the base must be re-imposed: an extension
        // class zeta^i rho^*(a) vanishes whenever a does on the center, even
        // though the extension allows higher total degrees
        for b in base.basis() {
            for g in 0..base.num_generators() {
                let total = b.degree() + base.generator_degree(g);
                if total > base.dim() && total <= dim {
                    let mut exps = vec![0u32; nvars];
                    exps[1..].copy_from_slice(b.exps());
                    exps[g + 1] += 1;
                    relations.push(Poly::from_monomial(
                        Monomial::new(exps, &degrees),
                        rat::rat_int(1),
                    ));
                }
            }
        }

        // Grothendieck relation: sum_i zeta^{r-i} c_i(N) = 0
        let mut grothendieck = Poly::zero(nvars);
        for i in 0..=r {
            let ci = normal.chern(i);
            let lifted = shift_poly(ci.poly(), nvars, &degrees);
            let mut zeta_pow = vec![0u32; nvars];
            zeta_pow[0] = r - i;
            grothendieck = grothendieck.add(&lifted.mul_monomial(
                &Monomial::new(zeta_pow, &degrees),
                &rat::rat_int(1),
            ));
        }
        relations.push(grothendieck);

        let ring = RingPresentation::new(gens, relations, dim)?;
        let images: Vec<GradedClass> = (1..nvars)
            .map(|i| GradedClass::generator(&ring, i).expect("index in range"))
            .collect();
        let lift = LinearRingMap::ring_hom(base, &ring, images)?;
        let zeta = GradedClass::generator(&ring, 0)?;
        Ok(ExceptionalRing {
            ring,
            base: base.clone(),
            r,
            lift,
            zeta,
            normal: normal.clone(),
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn base(&self) -> &RingRef {
        &self.base
    }

    pub fn codim(&self) -> u32 {
        self.r
    }

    pub fn zeta(&self) -> &GradedClass {
        &self.zeta
    }

    /// Pullback along the projection to the center.
    pub fn lift(&self, a: &GradedClass) -> Result<GradedClass> {
        self.lift.apply(a)
    }

    pub fn lift_total(&self, t: &TotalClass) -> Result<GradedClass> {
        self.lift(t.class())
    }

    pub fn lift_bundle(&self, b: &FormalBundle) -> Result<FormalBundle> {
        let chern: Result<Vec<GradedClass>> =
            (1..=b.rank()).map(|k| self.lift(&b.chern(k))).collect();
        FormalBundle::new(&self.ring, b.rank(), chern?)
    }

    /// Writes a class in the free basis `1, zeta, ..., zeta^{r-1}`: entry
    /// `k` is the coefficient of `zeta^k`, a class on the center.
    pub fn decompose(&self, a: &GradedClass) -> Result<Vec<GradedClass>> {
        if a.ring().id() != self.ring.id() {
            return Err(Error::RingMismatch(
                "class does not live on the exceptional divisor".to_string(),
            ));
        }
        let mut parts = vec![Poly::zero(self.base.num_generators()); self.r as usize];
        for (m, c) in a.poly().terms() {
            let zeta_exp = m.exps()[0] as usize;
            if zeta_exp >= self.r as usize {
                return Err(Error::FormulaViolation(format!(
                    "normal form contains zeta^{zeta_exp} beyond the free basis"
                )));
            }
            let base_mono = Monomial::new(m.exps()[1..].to_vec(), self.base.degrees());
            parts[zeta_exp].add_term(base_mono, c.clone());
        }
        Ok(parts
            .into_iter()
            .map(|p| GradedClass::from_poly(&self.base, p))
            .collect())
    }

    /// Projection pushforward to the center: reads off the coefficient of
    /// `zeta^{r-1}` in the free basis.
    pub fn project_down(&self, a: &GradedClass) -> Result<GradedClass> {
        Ok(self.decompose(a)?.pop().expect("r >= 1"))
    }

    /// Realizes a free zeta-polynomial inside the quotient ring.
    pub fn from_zeta_poly(&self, z: &ZetaPoly) -> Result<GradedClass> {
        if z.base().id() != self.base.id() {
            return Err(Error::RingMismatch("zeta-polynomial base".to_string()));
        }
        let mut acc = GradedClass::zero(&self.ring);
        let mut zeta_pow = GradedClass::one(&self.ring);
        for k in 0..z.coeffs.len() {
            acc = acc.add(&zeta_pow.mul(&self.lift(&z.coeff(k))?)?)?;
            zeta_pow = zeta_pow.mul(&self.zeta)?;
        }
        Ok(acc)
    }

    /// Chern classes of the tautological quotient bundle:
    /// `c_k(Q_E) = sum_{i=0}^{k} zeta^i c_{k-i}(N)` for `k <= r-1`.
    pub fn q_chern(&self, k: u32) -> Result<GradedClass> {
        let mut acc = GradedClass::zero(&self.ring);
        let mut zeta_pow = GradedClass::one(&self.ring);
        for i in 0..=k {
            acc = acc.add(&zeta_pow.mul(&self.lift(&self.normal.chern(k - i))?)?)?;
            if i < k {
                zeta_pow = zeta_pow.mul(&self.zeta)?;
            }
        }
        Ok(acc)
    }

    /// The tautological quotient bundle of rank `r - 1` on the exceptional
    /// divisor.
    pub fn quotient_bundle(&self) -> Result<FormalBundle> {
        let chern: Result<Vec<GradedClass>> =
            (1..=self.r - 1).map(|k| self.q_chern(k)).collect();
        FormalBundle::new(&self.ring, self.r - 1, chern?)
    }

    /// `O_E(1)` as a formal line bundle.
    pub fn o_one(&self) -> FormalBundle {
        FormalBundle::line(self.zeta.clone()).expect("degree 1")
    }

    /// `O_E(-1)` as a formal line bundle.
    pub fn o_minus_one(&self) -> FormalBundle {
        FormalBundle::line(self.zeta.neg()).expect("degree 1")
    }
}

fn shift_poly(p: &Poly, nvars: usize, degrees: &[u32]) -> Poly {
    let mut out = Poly::zero(nvars);
    for (m, c) in p.terms() {
        let mut exps = vec![0u32; nvars];
        exps[1..(m.exps().len() + 1)].copy_from_slice(m.exps());
        out.add_term(Monomial::new(exps, degrees), c.clone());
    }
    out
}

// ---------------------------------------------------------------------------
// Blow-up classes
// ---------------------------------------------------------------------------

/// A class on the blow-up in the canonical decomposition: a y-part plus one
/// slot per power `zeta^0..zeta^{r-2}`, each slot a class on the center.
/// The representation is unique: a class is zero exactly when every part is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupClass {
    y: GradedClass,
    slots: Vec<GradedClass>,
}

impl BlowupClass {
    pub fn y_part(&self) -> &GradedClass {
        &self.y
    }

    pub fn slot(&self, i: usize) -> &GradedClass {
        &self.slots[i]
    }

    pub fn slots(&self) -> &[GradedClass] {
        &self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.y.is_zero() && self.slots.iter().all(|s| s.is_zero())
    }
}

/// The blow-up ring of an embedding: carries the arithmetic of
/// [`BlowupClass`] values and the verification suites.
#[derive(Debug, Clone)]
pub struct BlowupRing {
    embed: EmbeddingData,
    exc: ExceptionalRing,
}

impl BlowupRing {
    pub fn new(embed: EmbeddingData) -> Result<Self> {
        let exc = ExceptionalRing::new(embed.ring_x(), embed.normal(), embed.codim())?;
        Ok(BlowupRing { embed, exc })
    }

    pub fn embedding(&self) -> &EmbeddingData {
        &self.embed
    }

    pub fn exceptional(&self) -> &ExceptionalRing {
        &self.exc
    }

    fn r(&self) -> u32 {
        self.embed.codim()
    }

    fn ambient_dim(&self) -> u32 {
        self.embed.ring_y().dim()
    }

    /// Slot entries of slot `i` live in total degree `deg + i + 1`; parts
    /// beyond the ambient dimension vanish.
    fn clamp_slot(&self, i: usize, cls: GradedClass) -> GradedClass {
        let n = self.ambient_dim();
        let cap = n as i64 - i as i64 - 1;
        if cap < 0 {
            return GradedClass::zero(self.embed.ring_x());
        }
        let mut acc = GradedClass::zero(self.embed.ring_x());
        for d in 0..=(cap as u32) {
            acc = acc.add(&cls.component(d)).expect("same ring");
        }
        acc
    }

    pub fn zero(&self) -> BlowupClass {
        BlowupClass {
            y: GradedClass::zero(self.embed.ring_y()),
            slots: vec![GradedClass::zero(self.embed.ring_x()); (self.r() - 1) as usize],
        }
    }

    pub fn one(&self) -> BlowupClass {
        self.pi_star(&GradedClass::one(self.embed.ring_y()))
    }

    /// `pi^*`: injects a class of the base.
    pub fn pi_star(&self, a: &GradedClass) -> BlowupClass {
        let mut out = self.zero();
        out.y = a.clone();
        out
    }

    /// Builds the class with the given slot entry and nothing else.
    pub fn pure_slot(&self, i: usize, cls: GradedClass) -> BlowupClass {
        let mut out = self.zero();
        out.slots[i] = self.clamp_slot(i, cls);
        out
    }

    pub fn add(&self, a: &BlowupClass, b: &BlowupClass) -> Result<BlowupClass> {
        if a.slots.len() != b.slots.len() {
            return Err(Error::RingMismatch(
                "blow-up classes from different codimensions".to_string(),
            ));
        }
        let slots: Result<Vec<GradedClass>> = a
            .slots
            .iter()
            .zip(&b.slots)
            .map(|(x, y)| x.add(y))
            .collect();
        Ok(BlowupClass {
            y: a.y.add(&b.y)?,
            slots: slots?,
        })
    }

    pub fn sub(&self, a: &BlowupClass, b: &BlowupClass) -> Result<BlowupClass> {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &BlowupClass) -> BlowupClass {
        BlowupClass {
            y: a.y.neg(),
            slots: a.slots.iter().map(|s| s.neg()).collect(),
        }
    }

    pub fn scale(&self, a: &BlowupClass, c: &Rational) -> BlowupClass {
        BlowupClass {
            y: a.y.scale(c),
            slots: a.slots.iter().map(|s| s.scale(c)).collect(),
        }
    }

    /// The degree-`k` component: slot `i` contributes its degree-`(k-i-1)`
    /// part.
    pub fn component(&self, a: &BlowupClass, k: u32) -> BlowupClass {
        BlowupClass {
            y: a.y.component(k),
            slots: a
                .slots
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    if k > i as u32 {
                        s.component(k - i as u32 - 1)
                    } else {
                        GradedClass::zero(self.embed.ring_x())
                    }
                })
                .collect(),
        }
    }

    /// The exceptional-divisor class `[E] = j_*(1)`.
    pub fn exceptional_class(&self) -> BlowupClass {
        self.pure_slot(0, GradedClass::one(self.embed.ring_x()))
    }

    /// Collects the slots into the exceptional ring:
    /// `sum_i zeta^i rho^*(slot_i)`.
    pub fn slots_to_exceptional(&self, a: &BlowupClass) -> Result<GradedClass> {
        let mut acc = GradedClass::zero(self.exc.ring());
        let mut zeta_pow = GradedClass::one(self.exc.ring());
        for (i, s) in a.slots.iter().enumerate() {
            acc = acc.add(&zeta_pow.mul(&self.exc.lift(s)?)?)?;
            if i + 1 < a.slots.len() {
                zeta_pow = zeta_pow.mul(self.exc.zeta())?;
            }
        }
        Ok(acc)
    }

    /// `j_*`: pushes a class of the exceptional divisor into the blow-up.
    /// Slots `0..r-2` pass through; the `zeta^{r-1}` coefficient is
    /// rewritten through the key formula into a y-part and lower slots.
    pub fn push_j(&self, e: &GradedClass) -> Result<BlowupClass> {
        let parts = self.exc.decompose(e)?;
        let r = self.r() as usize;
        let mut out = self.zero();
        for (i, part) in parts.iter().take(r - 1).enumerate() {
            out.slots[i] = self.clamp_slot(i, part.clone());
        }
        let top = &parts[r - 1];
        if !top.is_zero() {
            // j_*(zeta^{r-1} rho^* a) =
            //   pi^* i_*(a) - sum_{i=0}^{r-2} j_*(zeta^i rho^*(a c_{r-1-i}(N)))
            out.y = out.y.add(&self.embed.push().apply(top)?)?;
            for i in 0..(r - 1) {
                let correction = top.mul(&self.embed.normal().chern((r - 1 - i) as u32))?;
                out.slots[i] = self.clamp_slot(i, out.slots[i].sub(&correction)?);
            }
        }
        Ok(out)
    }

    /// `j^*`: restricts a blow-up class to the exceptional divisor.
    pub fn j_star(&self, a: &BlowupClass) -> Result<GradedClass> {
        let pulled = self.exc.lift(&self.embed.pull().apply(&a.y)?)?;
        let u = self.slots_to_exceptional(a)?;
        pulled.add(&self.exc.zeta().neg().mul(&u)?)
    }

    /// Product in the blow-up ring:
    /// `(pi^* a + j_* u)(pi^* b + j_* v)
    ///   = pi^*(ab) + j_*( rho^* i^*(a) v + rho^* i^*(b) u - zeta u v )`.
    pub fn mul(&self, a: &BlowupClass, b: &BlowupClass) -> Result<BlowupClass> {
        let y = a.y.mul(&b.y)?;
        let u = self.slots_to_exceptional(a)?;
        let v = self.slots_to_exceptional(b)?;
        let pa = self.exc.lift(&self.embed.pull().apply(&a.y)?)?;
        let pb = self.exc.lift(&self.embed.pull().apply(&b.y)?)?;
        let mixed = pa
            .mul(&v)?
            .add(&pb.mul(&u)?)?
            .sub(&self.exc.zeta().mul(&u.mul(&v)?)?)?;
        let pushed = self.push_j(&mixed)?;
        self.add(&self.pi_star(&y), &pushed)
    }

    pub fn pow(&self, a: &BlowupClass, e: u32) -> Result<BlowupClass> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn render(&self, a: &BlowupClass) -> String {
        let mut parts = Vec::new();
        if !a.y.is_zero() {
            parts.push(format!("pi*({})", a.y.render()));
        }
        for (i, s) in a.slots.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            if i == 0 {
                parts.push(format!("j_*(rho*({}))", s.render()));
            } else if i == 1 {
                parts.push(format!("j_*(zeta*rho*({}))", s.render()));
            } else {
                parts.push(format!("j_*(zeta^{i}*rho*({}))", s.render()));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    // -----------------------------------------------------------------
    // The correction class alpha and the total Chern class formula
    // -----------------------------------------------------------------

    /// Division form of the correction class; see [`alpha_division_form`].
    pub fn alpha_division_form(&self) -> Result<ZetaPoly> {
        alpha_division_form(self.embed.normal())
    }

    /// Binomial form of the correction class; see [`alpha_binomial_form`].
    pub fn alpha_binomial_form(&self) -> ZetaPoly {
        alpha_binomial_form(self.embed.normal())
    }

    fn tangent_y(&self) -> Result<&TotalClass> {
        self.embed
            .tangent_y()
            .ok_or_else(|| Error::MissingTangentData("ambient total Chern class".to_string()))
    }

    fn tangent_x(&self) -> Result<&TotalClass> {
        self.embed
            .tangent_x()
            .ok_or_else(|| Error::MissingTangentData("center total Chern class".to_string()))
    }

    /// Total Chern class of the blow-up:
    /// `c(blow-up) = pi^* c(Y) + j_*( rho^* c(X) . alpha )`.
    pub fn total_chern(&self) -> Result<BlowupClass> {
        let diff = self.total_chern_difference()?;
        self.add(&self.pi_star(self.tangent_y()?.class()), &diff)
    }

    /// The correction term `j_*( rho^* c(X) . alpha )` alone.
    pub fn total_chern_difference(&self) -> Result<BlowupClass> {
        let alpha = self.alpha_division_form()?;
        let binom = self.alpha_binomial_form();
        if alpha != binom {
            return Err(Error::FormulaViolation(format!(
                "correction class forms disagree: {} vs {}",
                alpha.render(),
                binom.render()
            )));
        }
        let alpha_e = self.exc.from_zeta_poly(&alpha)?;
        let cx = self.exc.lift_total(self.tangent_x()?)?;
        self.push_j(&cx.mul(&alpha_e)?)
    }

    /// Evaluates a conversion polynomial directly in the blow-up ring.
    pub fn eval_conversion(&self, p: &Poly, args: &[BlowupClass]) -> BlowupClass {
        let one = BrElem {
            ring: self,
            cls: self.one(),
        };
        let zero = BrElem {
            ring: self,
            cls: self.zero(),
        };
        let wrapped: Vec<BrElem> = args
            .iter()
            .map(|cls| BrElem {
                ring: self,
                cls: cls.clone(),
            })
            .collect();
        p.eval(&one, &zero, &wrapped).cls
    }

    /// Chern character of a blow-up class pattern: `n + sum_m P_m(c_1..c_m)`
    /// evaluated in the blow-up ring over the components of `total`.
    pub fn chern_character_of_total(&self, total: &BlowupClass, rank: u32) -> Result<BlowupClass> {
        let n = self.ambient_dim();
        let mut acc = self.scale(&self.one(), &rat::rat_int(rank as i64));
        for m in 1..=n {
            let sigma: Vec<BlowupClass> = (1..=m).map(|k| self.component(total, k)).collect();
            let sm = self.eval_conversion(&newton_conversion(m), &sigma);
            acc = self.add(&acc, &sm)?;
        }
        Ok(acc)
    }

    /// Verifies the Chern-character comparison: the difference
    /// `pi^* ch(Y) - ch(blow-up)` computed through Newton conversion of the
    /// total-Chern formula must equal
    /// `j_*[ (e^zeta - 1)/zeta . ( rho^* ch(N) - e^{-zeta} ) ]`,
    /// the normal bundle of the exceptional divisor being `O_E(-1)`.
    pub fn chern_character_check(&self) -> Result<(BlowupClass, BlowupClass)> {
        let n = self.ambient_dim();

        // left side through the total-Chern blow-up formula and P_m
        let ch_y = tangent_chern_character(self.tangent_y()?, n);
        let c_tilde = self.total_chern()?;
        let ch_tilde = self.chern_character_of_total(&c_tilde, n)?;
        let lhs = self.sub(&self.pi_star(&ch_y), &ch_tilde)?;

        // right side from the Koszul resolution of the exceptional divisor
        let dim_e = self.exc.ring().dim();
        let zeta = self.exc.zeta();
        let ch_n = {
            let on_x = self.embed.normal().chern_character();
            self.exc.lift(&on_x)?
        };
        let minus_zeta = zeta.neg();
        let exp_minus = series_in_class(&exp_coefficients(dim_e), &minus_zeta);
        // (e^zeta - 1)/zeta = sum_k zeta^k / (k+1)!
        let kernel_coeffs: Vec<Rational> = (0..=dim_e)
            .map(|k| rat::rat_int(1) / rat::big_to_rat(rat::factorial(k + 1)))
            .collect();
        let kernel = series_in_class(&kernel_coeffs, zeta);
        let rhs_e = kernel.mul(&ch_n.sub(&exp_minus)?)?;
        let rhs = self.push_j(&rhs_e)?;

        if lhs != rhs {
            return Err(Error::InconsistencyReport(format!(
                "character comparison failed: {} vs {}",
                self.render(&lhs),
                self.render(&rhs)
            )));
        }
        Ok((lhs, rhs))
    }

    // -----------------------------------------------------------------
    // Identity suite
    // -----------------------------------------------------------------

    /// Runs the full identity suite on this blow-up ring and reports each
    /// verdict. Requires tangent data for the total-class identities.
    pub fn verify_identities(&self) -> Result<Vec<CheckReport>> {
        let mut reports = Vec::new();
        let r = self.r();
        let exc = &self.exc;
        let ring_e = exc.ring();
        let normal = self.embed.normal();
        let one_e = GradedClass::one(ring_e);

        // total class of the lifted normal bundle vs (1 - zeta) c(Q_E)
        let rho_n = exc.lift_bundle(normal)?;
        let q_e = exc.quotient_bundle()?;
        {
            let lhs = rho_n.total().class().clone();
            let one_minus = one_e.sub(exc.zeta())?;
            let rhs = one_minus.mul(q_e.total().class())?;
            reports.push(CheckReport::from_eq(
                "tautological-whitney",
                lhs == rhs,
                &lhs.render(),
                &rhs.render(),
            ));
        }

        // twisting the tautological sequence by O_E(1)
        let twisted_n = rho_n.tensor(&exc.o_one())?;
        {
            let rhs = q_e.tensor(&exc.o_one())?;
            let lhs_t = twisted_n.total().class().clone();
            let rhs_t = rhs.total().class().clone();
            reports.push(CheckReport::from_eq(
                "twisted-tautological-whitney",
                lhs_t == rhs_t,
                &lhs_t.render(),
                &rhs_t.render(),
            ));
        }

        // root expansion of the twist: sum_i (1+zeta)^i c_{r-i}(N)
        {
            let mut rhs = GradedClass::zero(ring_e);
            let one_plus = one_e.add(exc.zeta())?;
            for i in 0..=r {
                rhs = rhs.add(&one_plus.pow(i).mul(&exc.lift(&normal.chern(r - i))?)?)?;
            }
            let lhs = twisted_n.total().class().clone();
            reports.push(CheckReport::from_eq(
                "twist-binomial-expansion",
                lhs == rhs,
                &lhs.render(),
                &rhs.render(),
            ));
        }

        // the series f(O_E(-1), Q_E) drives the remaining identities
        let dim_e = ring_e.dim();
        let f = rrwd::compute_f(1, r - 1, dim_e)?;
        let f_spec = f.specialize(&exc.o_minus_one(), &q_e)?;

        // quotient-line identity: c(Q_E)/c(O(1) (x) Q_E) - 1 = -zeta f
        {
            let num = q_e.total();
            let den = q_e.tensor(&exc.o_one())?.total();
            let lhs = num.mul(&den.inv()?)?.class().sub(&one_e)?;
            let rhs = exc.zeta().neg().mul(&f_spec)?;
            reports.push(CheckReport::from_eq(
                "line-twist-rr",
                lhs == rhs,
                &lhs.render(),
                &rhs.render(),
            ));
        }

        // self-intersection: j^* j_* = (-zeta) on the whole basis of E
        {
            let mut ok = true;
            let mut detail = String::from("j^* j_* acts as multiplication by -zeta");
            for m in ring_e.basis() {
                let cls = GradedClass::from_poly(ring_e, Poly::from_monomial(m, rat::rat_int(1)));
                let lhs = self.j_star(&self.push_j(&cls)?)?;
                let rhs = exc.zeta().neg().mul(&cls)?;
                if lhs != rhs {
                    ok = false;
                    detail = format!(
                        "fails on {}: {} vs {}",
                        cls.render(),
                        lhs.render(),
                        rhs.render()
                    );
                    break;
                }
            }
            reports.push(CheckReport {
                key: "self-intersection".to_string(),
                passed: ok,
                detail,
            });
        }

        // key formula: j_*( rho^* a . c_{r-1}(Q_E) ) = pi^* i_* a on a basis
        {
            let top_q = exc.q_chern(r - 1)?;
            let mut ok = true;
            let mut detail = String::from("pushforwards of c_{r-1}(Q_E) multiples agree");
            for m in self.embed.ring_x().basis() {
                let a = GradedClass::from_poly(
                    self.embed.ring_x(),
                    Poly::from_monomial(m, rat::rat_int(1)),
                );
                let lhs = self.push_j(&exc.lift(&a)?.mul(&top_q)?)?;
                let rhs = self.pi_star(&self.embed.push().apply(&a)?);
                if lhs != rhs {
                    ok = false;
                    detail = format!(
                        "fails on {}: {} vs {}",
                        a.render(),
                        self.render(&lhs),
                        self.render(&rhs)
                    );
                    break;
                }
            }
            reports.push(CheckReport {
                key: "key-formula".to_string(),
                passed: ok,
                detail,
            });
        }

        // projection pushforward to the center: rho_*(zeta^k rho^* a) =
        // a exactly when k = r-1
        {
            let mut ok = true;
            let mut detail = String::from("rho_* reads off the top zeta coefficient");
            'outer: for m in self.embed.ring_x().basis() {
                let a = GradedClass::from_poly(
                    self.embed.ring_x(),
                    Poly::from_monomial(m, rat::rat_int(1)),
                );
                for k in 0..r {
                    let elem = exc.zeta().pow(k).mul(&exc.lift(&a)?)?;
                    let projected = exc.project_down(&elem)?;
                    let expected = if k == r - 1 {
                        // zeta^{r-1} rho^* a is already in the free basis
                        // unless truncation killed it
                        if elem.is_zero() {
                            GradedClass::zero(self.embed.ring_x())
                        } else {
                            a.clone()
                        }
                    } else {
                        GradedClass::zero(self.embed.ring_x())
                    };
                    if projected != expected {
                        ok = false;
                        detail = format!(
                            "fails at zeta^{k} rho^*({}): got {}",
                            a.render(),
                            projected.render()
                        );
                        break 'outer;
                    }
                }
            }
            reports.push(CheckReport {
                key: "projection-pushforward".to_string(),
                passed: ok,
                detail,
            });
        }

        // uniqueness of the decomposition: zero class iff all parts zero
        {
            let e_cls = self.exceptional_class();
            let nonzero = !e_cls.is_zero()
                && !self.pi_star(&GradedClass::one(self.embed.ring_y())).is_zero();
            let zero_is_zero = self.zero().is_zero()
                && self.sub(&e_cls, &e_cls)?.is_zero();
            reports.push(CheckReport {
                key: "decomposition-uniqueness".to_string(),
                passed: nonzero && zero_is_zero,
                detail: "a blow-up class vanishes exactly when its y-part and all slots vanish"
                    .to_string(),
            });
        }

        // correction-class forms agree in the free zeta-module
        {
            let div = self.alpha_division_form()?;
            let binom = self.alpha_binomial_form();
            reports.push(CheckReport::from_eq(
                "alpha-forms",
                div == binom,
                &div.render(),
                &binom.render(),
            ));
        }

        if self.embed.tangent_y().is_some() && self.embed.tangent_x().is_some() {
            let c_tilde = self.total_chern()?;
            let diff = self.total_chern_difference()?;

            // restriction of the total class to the exceptional divisor
            {
                let lhs = self.j_star(&c_tilde)?;
                let cx = exc.lift_total(self.tangent_x()?)?;
                let rhs = twisted_n
                    .total()
                    .class()
                    .mul(&cx)?
                    .mul(&one_e.sub(exc.zeta())?)?;
                reports.push(CheckReport::from_eq(
                    "exceptional-restriction",
                    lhs == rhs,
                    &lhs.render(),
                    &rhs.render(),
                ));
            }

            // Whitney comparison with the pushforward of the quotient:
            // pi^* c(Y) = c(blow-up) . c(j_* Q_E)
            {
                let c_push_q = self.add(&self.one(), &self.push_j(&f_spec)?)?;
                let lhs = self.pi_star(self.tangent_y()?.class());
                let rhs = self.mul(&c_tilde, &c_push_q)?;
                reports.push(CheckReport::from_eq(
                    "whitney-blowdown",
                    lhs == rhs,
                    &self.render(&lhs),
                    &self.render(&rhs),
                ));
            }

            // first Chern class: difference is (1 - r)[E]
            {
                let lhs = self.component(&diff, 1);
                let rhs = self.scale(
                    &self.exceptional_class(),
                    &rat::rat_int(1 - r as i64),
                );
                reports.push(CheckReport::from_eq(
                    "first-chern-specialization",
                    lhs == rhs,
                    &self.render(&lhs),
                    &self.render(&rhs),
                ));
            }

            // second Chern class: difference is
            // j_*[ r(3-r)/2 zeta + (2-r) c_1(N) + (1-r) c_1(X) ]
            {
                let lhs = self.component(&diff, 2);
                let zeta_term = exc
                    .zeta()
                    .scale(&rat::rat(r as i64 * (3 - r as i64), 2));
                let n_term = exc
                    .lift(&normal.chern(1))?
                    .scale(&rat::rat_int(2 - r as i64));
                let x_term = exc
                    .lift(&self.tangent_x()?.component(1))?
                    .scale(&rat::rat_int(1 - r as i64));
                let rhs = self.push_j(&zeta_term.add(&n_term)?.add(&x_term)?)?;
                reports.push(CheckReport::from_eq(
                    "second-chern-specialization",
                    lhs == rhs,
                    &self.render(&lhs),
                    &self.render(&rhs),
                ));
            }

            // Chern character comparison through Newton conversion
            {
                let ch = self.chern_character_check();
                reports.push(match ch {
                    Ok((lhs, _)) => CheckReport::pass(
                        "character-blowdown",
                        format!("difference = {}", self.render(&lhs)),
                    ),
                    Err(e) => CheckReport::fail("character-blowdown", e.to_string()),
                });
            }
        }

        // the embedding data itself: projection formula revalidated
        {
            let report = projection_formula_check(self.embed.pull(), self.embed.push())?;
            reports.push(CheckReport {
                key: "projection-formula".to_string(),
                passed: report.pass,
                detail: report.to_string(),
            });
        }

        Ok(reports)
    }
}

/// Division form of the correction class of a normal bundle, assembled in
/// the free zeta-module:
/// `alpha = (1/zeta) [ sum_i c_{r-i}(N) - (1-zeta) sum_i (1+zeta)^i c_{r-i}(N) ]`.
/// The constant coefficient of the bracket must vanish identically; the
/// division happens before the Grothendieck relation is imposed, where
/// `zeta` is not a zero divisor.
pub fn alpha_division_form(normal: &FormalBundle) -> Result<ZetaPoly> {
    let base = normal.ring();
    let r = normal.rank();
    let mut plain = GradedClass::zero(base);
    let mut twisted = ZetaPoly::zero(base);
    for i in 0..=r {
        let c = normal.chern(r - i);
        plain = plain.add(&c)?;
        // (1 + zeta)^i as a scalar zeta-series
        let binomials: Vec<Rational> = (0..=i)
            .map(|j| rat::big_to_rat(rat::binomial(i, j)))
            .collect();
        twisted = twisted.add(&ZetaPoly::from_class(c).mul_zeta_series(&binomials))?;
    }
    // multiply the twisted sum by (1 - zeta)
    let one_minus_zeta = [rat::rat_int(1), rat::rat_int(-1)];
    let twisted = twisted.mul_zeta_series(&one_minus_zeta);
    let numerator = ZetaPoly::from_class(plain).sub(&twisted)?;
    numerator.divide_by_zeta()
}

/// Binomial form of the correction class:
/// `alpha = sum_k c_{r-k}(N) [ sum_{i=0}^k C(k,i) zeta^i
///                             - sum_{i=1}^k C(k,i) zeta^{i-1} ]`.
pub fn alpha_binomial_form(normal: &FormalBundle) -> ZetaPoly {
    let base = normal.ring();
    let r = normal.rank();
    let mut acc = ZetaPoly::zero(base);
    for k in 0..=r {
        let c = normal.chern(r - k);
        let mut series = vec![rat::rat_int(0); k as usize + 1];
        for i in 0..=k {
            series[i as usize] += rat::big_to_rat(rat::binomial(k, i));
        }
        for i in 1..=k {
            series[(i - 1) as usize] -= rat::big_to_rat(rat::binomial(k, i));
        }
        acc = acc
            .add(&ZetaPoly::from_class(c).mul_zeta_series(&series))
            .expect("same ring");
    }
    acc
}

/// Chern character of a tangent total class on the base: `n + sum P_m`.
pub fn tangent_chern_character(tangent: &TotalClass, rank: u32) -> GradedClass {
    let ring = tangent.ring();
    let mut acc = GradedClass::scalar(ring, rat::rat_int(rank as i64));
    for m in 1..=ring.dim() {
        let sigma: Vec<GradedClass> = (1..=m).map(|k| tangent.component(k)).collect();
        let p = newton_conversion(m);
        acc = acc
            .add(&p.eval(&GradedClass::one(ring), &GradedClass::zero(ring), &sigma))
            .expect("same ring");
    }
    acc
}

/// Adapter giving blow-up classes the algebra interface needed to evaluate
/// conversion polynomials directly in the blow-up ring.
#[derive(Clone)]
struct BrElem<'a> {
    ring: &'a BlowupRing,
    cls: BlowupClass,
}

impl AlgebraElem for BrElem<'_> {
    fn add_elem(&self, other: &Self) -> Self {
        BrElem {
            ring: self.ring,
            cls: self.ring.add(&self.cls, &other.cls).expect("same ring"),
        }
    }
    fn mul_elem(&self, other: &Self) -> Self {
        BrElem {
            ring: self.ring,
            cls: self.ring.mul(&self.cls, &other.cls).expect("same ring"),
        }
    }
    fn scale_elem(&self, c: &Rational) -> Self {
        BrElem {
            ring: self.ring,
            cls: self.ring.scale(&self.cls, c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::LinearRingMap;
    use crate::presets;
    use crate::rat::rat_int;
    use crate::rrwd;

    #[test]
    fn grothendieck_relation_kills_degree_r_part() {
        // the degree-r part of c(rho^* N) (1 + zeta + zeta^2 + ...) reduces
        // to zero: that is the relation itself
        for name in ["threefold-curve", "universal-r2", "universal-r3"] {
            let br = presets::blowup_preset(name).unwrap();
            let exc = br.exceptional();
            let r = br.embedding().codim();
            let mut acc = GradedClass::zero(exc.ring());
            let mut zeta_pow = GradedClass::one(exc.ring());
            for i in 0..=r {
                let c = exc.lift(&br.embedding().normal().chern(r - i)).unwrap();
                acc = acc.add(&zeta_pow.mul(&c).unwrap()).unwrap();
                zeta_pow = zeta_pow.mul(exc.zeta()).unwrap();
            }
            assert!(acc.is_zero(), "{name}: relation residue {}", acc.render());
        }
    }

    #[test]
    fn exceptional_ring_of_point_center() {
        // point of a surface: the exceptional ring is Q[zeta]/(zeta^2)
        let br = presets::surface_point().unwrap();
        let exc = br.exceptional();
        assert_eq!(exc.ring().dim(), 1);
        let zeta = exc.zeta();
        assert!(zeta.mul(zeta).unwrap().is_zero());
        assert_eq!(exc.ring().basis().len(), 2);
        // q_chern(r-1) for trivial N is just zeta
        assert_eq!(exc.q_chern(1).unwrap(), zeta.clone());
    }

    #[test]
    fn pi_star_is_a_ring_injection() {
        let br = presets::threefold_curve().unwrap();
        let ring_y = br.embedding().ring_y();
        let a = GradedClass::generator_named(ring_y, "c1").unwrap();
        let b = GradedClass::generator_named(ring_y, "q").unwrap();
        let lhs = br.mul(&br.pi_star(&a), &br.pi_star(&b)).unwrap();
        let rhs = br.pi_star(&a.mul(&b).unwrap());
        assert_eq!(lhs, rhs);
        assert!(!br.pi_star(&a).is_zero());
        // and matches direct slot injection: the y-part is the class itself
        assert_eq!(br.pi_star(&a).y_part(), &a);
        assert!(br.pi_star(&a).slot(0).is_zero());
    }

    #[test]
    fn exceptional_class_is_pure_slot_zero() {
        let br = presets::threefold_point().unwrap();
        let e = br.exceptional_class();
        assert!(e.y_part().is_zero());
        assert_eq!(e.slot(0), &GradedClass::one(br.embedding().ring_x()));
        assert!(e.slot(1).is_zero());
        // j_*(1) through the pushforward agrees
        let via_push = br.push_j(&GradedClass::one(br.exceptional().ring())).unwrap();
        assert_eq!(e, via_push);
    }

    #[test]
    fn point_center_alpha_matches_binomial_coefficients() {
        // for a point center of an n-fold the correction class reads
        // 1 + sum_i C(n,i) (zeta^i - zeta^{i-1})
        let br = presets::threefold_point().unwrap();
        let alpha = br.alpha_division_form().unwrap();
        let ring_x = br.embedding().ring_x();
        let n = 3u32;
        let mut expected = ZetaPoly::from_class(GradedClass::one(ring_x));
        for i in 1..=n {
            let c = rat::big_to_rat(rat::binomial(n, i));
            let mut series = vec![rat_int(0); i as usize + 1];
            series[i as usize] = c.clone();
            series[(i - 1) as usize] -= c;
            expected = expected
                .add(&ZetaPoly::from_class(GradedClass::one(ring_x)).mul_zeta_series(&series))
                .unwrap();
        }
        assert_eq!(alpha, expected);
    }

    #[test]
    fn rr_pushforward_of_structure_sheaf_on_surface() {
        // point in a surface, trivial line twist: the total class of the
        // pushforward is 1 - [pt] in degree 2
        let br = presets::surface_point().unwrap();
        let embed = br.embedding();
        let line = FormalBundle::trivial(embed.ring_x(), 1);
        let total = rrwd::rr_without_denominators(embed, &line).unwrap();
        assert!(total.component(1).is_zero());
        let p = GradedClass::generator_named(embed.ring_y(), "p").unwrap();
        assert_eq!(total.component(2), p.neg());
    }

    #[test]
    fn tangent_data_is_required_for_the_total_class() {
        let (embed, _) = presets::rr_tube(2, 1).unwrap();
        let br = BlowupRing::new(embed).unwrap();
        assert!(matches!(
            br.total_chern(),
            Err(Error::MissingTangentData(_))
        ));
        // but the correction class needs only the normal bundle
        assert!(br.alpha_division_form().is_ok());
    }

    #[test]
    fn zeta_poly_division_guards_constant_term() {
        let ring = crate::gring::RingPresentation::new(vec![], vec![], 0).unwrap();
        let one = ZetaPoly::from_class(GradedClass::one(&ring));
        assert!(matches!(
            one.divide_by_zeta(),
            Err(Error::FormulaViolation(_))
        ));
        let shifted = one.mul_zeta_series(&[rat_int(0), rat_int(1)]);
        assert_eq!(shifted.divide_by_zeta().unwrap(), one);
    }

    #[test]
    fn degenerate_codimension_rejected() {
        // r = 1 is outside the model: the embedding constructor refuses it
        let ring_y =
            crate::gring::RingPresentation::new(vec![("h".to_string(), 1)], vec![], 2).unwrap();
        let ring_x = crate::gring::RingPresentation::new(vec![], vec![], 1).unwrap();
        let pull =
            LinearRingMap::ring_hom(&ring_y, &ring_x, vec![GradedClass::zero(&ring_x)]).unwrap();
        let h = GradedClass::generator(&ring_y, 0).unwrap();
        let push = LinearRingMap::module_map(
            &ring_x,
            &ring_y,
            1,
            vec![(GradedClass::one(&ring_x), h)],
        )
        .unwrap();
        let normal = FormalBundle::trivial(&ring_x, 1);
        assert!(EmbeddingData::new(pull, push, normal, None, None).is_err());
    }
}
