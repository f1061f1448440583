//! Manifest schema and construction of the engine objects it describes.
//!
//! A manifest is a single JSON document naming rings, bundles, embeddings
//! and nilmanifold structure equations, plus an ordered task list.
//! Polynomial values are infix literals (`"3*h^2 - 1/2*h*e"`) parsed by
//! [`crate::polyparse`]. Every cross-reference is resolved and every
//! embedding is validated (degree shifts, projection formula) before any
//! task runs.

use std::collections::BTreeMap;

use serde::Deserialize;

use bcblow_core::blowup::{BlowupRing, EmbeddingData};
use bcblow_core::gring::{GradedClass, LinearRingMap, RingPresentation, RingRef};
use bcblow_core::nilbc::StructureEquations;
use bcblow_core::poly::Poly;
use bcblow_core::rat::rat_int;
use bcblow_core::symchern::{FormalBundle, TotalClass};

use crate::polyparse::{parse_gauss, parse_poly};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub rings: BTreeMap<String, RingSpec>,
    #[serde(default)]
    pub bundles: BTreeMap<String, BundleSpec>,
    #[serde(default)]
    pub embeddings: BTreeMap<String, EmbeddingSpec>,
    #[serde(default)]
    pub nilmanifolds: BTreeMap<String, NilmanifoldSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub generators: Vec<(String, u32)>,
    #[serde(default)]
    pub relations: Vec<String>,
    pub dim: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSpec {
    pub ring: String,
    pub rank: u32,
    pub chern: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingSpec {
    pub ring_y: String,
    pub ring_x: String,
    pub codim: u32,
    pub pullback: BTreeMap<String, String>,
    pub pushforward: BTreeMap<String, String>,
    pub normal: String,
    #[serde(default)]
    pub tangent_y: Option<String>,
    #[serde(default)]
    pub tangent_x: Option<String>,
}

/// One structure-equation term: coefficient literal and the two 1-based
/// indices of the wedge monomial.
pub type TermSpec = (String, u32, u32);

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NilmanifoldSpec {
    pub dim: u32,
    /// (2,0)-parts: `d_hol["k"]` lists terms `c * w^i ^ w^j` of `d w^k`.
    #[serde(default)]
    pub d_hol: BTreeMap<String, Vec<TermSpec>>,
    /// (1,1)-parts: `d_mix["k"]` lists terms `c * w^i ^ conj(w^j)`.
    #[serde(default)]
    pub d_mix: BTreeMap<String, Vec<TermSpec>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub p: u32,
    pub q: u32,
    /// Terms as `[coefficient, holomorphic indices, antiholomorphic indices]`,
    /// the index strings listing 1-based generator digits, e.g. `"12"`.
    pub terms: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "task", deny_unknown_fields)]
pub enum TaskSpec {
    /// Run the full identity suite of an embedding.
    #[serde(rename = "verify-blowup")]
    VerifyBlowup {
        #[serde(default)]
        name: Option<String>,
        embedding: String,
    },
    /// Compute and print the total Chern class of the blow-up.
    #[serde(rename = "blowup-chern")]
    BlowupChern {
        #[serde(default)]
        name: Option<String>,
        embedding: String,
    },
    /// Emit the universal series coefficient table.
    #[serde(rename = "rr-series")]
    RrSeries {
        #[serde(default)]
        name: Option<String>,
        u: u32,
        v: u32,
        degree: u32,
    },
    /// Total class of a pushed-forward bundle, with the vanishing checks.
    #[serde(rename = "rr-pushforward")]
    RrPushforward {
        #[serde(default)]
        name: Option<String>,
        embedding: String,
        bundle: String,
    },
    /// Bott-Chern dimension table of a nilmanifold.
    #[serde(rename = "nilbc-dims")]
    NilbcDims {
        #[serde(default)]
        name: Option<String>,
        nilmanifold: String,
    },
    /// Exactness test of an invariant form.
    #[serde(rename = "bc-exact")]
    BcExact {
        #[serde(default)]
        name: Option<String>,
        nilmanifold: String,
        form: FormSpec,
    },
    /// Run a shipped preset verification suite.
    #[serde(rename = "verify-preset")]
    VerifyPreset {
        #[serde(default)]
        name: Option<String>,
        preset: String,
    },
}

impl TaskSpec {
    pub fn label(&self, index: usize) -> String {
        let explicit = match self {
            TaskSpec::VerifyBlowup { name, .. }
            | TaskSpec::BlowupChern { name, .. }
            | TaskSpec::RrSeries { name, .. }
            | TaskSpec::RrPushforward { name, .. }
            | TaskSpec::NilbcDims { name, .. }
            | TaskSpec::BcExact { name, .. }
            | TaskSpec::VerifyPreset { name, .. } => name.clone(),
        };
        explicit.unwrap_or_else(|| format!("task-{index}"))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            TaskSpec::VerifyBlowup { .. } => "verify-blowup",
            TaskSpec::BlowupChern { .. } => "blowup-chern",
            TaskSpec::RrSeries { .. } => "rr-series",
            TaskSpec::RrPushforward { .. } => "rr-pushforward",
            TaskSpec::NilbcDims { .. } => "nilbc-dims",
            TaskSpec::BcExact { .. } => "bc-exact",
            TaskSpec::VerifyPreset { .. } => "verify-preset",
        }
    }
}

/// Manifest with every object constructed and validated.
pub struct BuiltManifest {
    pub rings: BTreeMap<String, RingRef>,
    pub bundles: BTreeMap<String, FormalBundle>,
    pub embeddings: BTreeMap<String, BlowupRing>,
    pub nilmanifolds: BTreeMap<String, StructureEquations>,
    pub tasks: Vec<TaskSpec>,
}

/// Validation failure: which object, and why.
#[derive(Debug)]
pub struct BuildError {
    pub object: String,
    pub message: String,
}

impl std::fmt::Display for BuildError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.object, self.message)
    }
}

impl std::error::Error for BuildError {}

fn fail<T>(object: impl Into<String>, message: impl ToString) -> Result<T, BuildError> {
    Err(BuildError {
        object: object.into(),
        message: message.to_string(),
    })
}

fn parse_in_ring(
    object: &str,
    ring: &RingRef,
    literal: &str,
) -> Result<GradedClass, BuildError> {
    let names = ring.generator_names();
    match parse_poly(literal, &names, ring.degrees()) {
        Ok(p) => Ok(GradedClass::from_poly(ring, p)),
        Err(e) => fail(object, format!("in '{literal}': {e}")),
    }
}

pub fn build(manifest: Manifest) -> Result<BuiltManifest, BuildError> {
    let mut rings = BTreeMap::new();
    for (name, spec) in &manifest.rings {
        let object = format!("ring '{name}'");
        // parse relations against the raw generator table
        let gen_names: Vec<&str> = spec.generators.iter().map(|(n, _)| n.as_str()).collect();
        let degrees: Vec<u32> = spec.generators.iter().map(|(_, d)| *d).collect();
        let mut relations = Vec::new();
        for rel in &spec.relations {
            match parse_poly(rel, &gen_names, &degrees) {
                Ok(p) => relations.push(p),
                Err(e) => return fail(&object, format!("relation '{rel}': {e}")),
            }
        }
        match RingPresentation::new(spec.generators.clone(), relations, spec.dim) {
            Ok(ring) => {
                rings.insert(name.clone(), ring);
            }
            Err(e) => return fail(&object, e),
        }
    }

    let get_ring = |object: &str, name: &str| -> Result<RingRef, BuildError> {
        rings
            .get(name)
            .cloned()
            .ok_or_else(|| BuildError {
                object: object.to_string(),
                message: format!("unknown ring '{name}'"),
            })
    };

    let mut bundles = BTreeMap::new();
    for (name, spec) in &manifest.bundles {
        let object = format!("bundle '{name}'");
        let ring = get_ring(&object, &spec.ring)?;
        if spec.chern.len() != spec.rank as usize {
            return fail(&object, format!("rank {} needs {} Chern classes", spec.rank, spec.rank));
        }
        let mut chern = Vec::new();
        for literal in &spec.chern {
            chern.push(parse_in_ring(&object, &ring, literal)?);
        }
        match FormalBundle::new(&ring, spec.rank, chern) {
            Ok(b) => {
                bundles.insert(name.clone(), b);
            }
            Err(e) => return fail(&object, e),
        }
    }

    let mut embeddings = BTreeMap::new();
    for (name, spec) in &manifest.embeddings {
        let object = format!("embedding '{name}'");
        let ring_y = get_ring(&object, &spec.ring_y)?;
        let ring_x = get_ring(&object, &spec.ring_x)?;

        // pullback: every ambient generator needs an image
        let mut images = Vec::new();
        for gname in ring_y.generator_names() {
            let Some(literal) = spec.pullback.get(gname) else {
                return fail(&object, format!("pullback image of '{gname}' missing"));
            };
            images.push(parse_in_ring(&object, &ring_x, literal)?);
        }
        for key in spec.pullback.keys() {
            if ring_y.generator_index(key).is_err() {
                return fail(&object, format!("pullback names unknown generator '{key}'"));
            }
        }
        let pull = match LinearRingMap::ring_hom(&ring_y, &ring_x, images) {
            Ok(m) => m,
            Err(e) => return fail(&object, format!("pullback: {e}")),
        };

        // pushforward: every basis monomial of the center needs an image
        let mut push_images = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for key in spec.pushforward.keys() {
            let cls = parse_in_ring(&object, &ring_x, key)?;
            let rendered = cls.render();
            if !seen.insert(rendered.clone()) {
                return fail(&object, format!("duplicate pushforward key '{key}'"));
            }
            let image = parse_in_ring(&object, &ring_y, &spec.pushforward[key])?;
            push_images.push((cls, image));
        }
        for m in ring_x.basis() {
            let cls = GradedClass::from_poly(&ring_x, Poly::from_monomial(m, rat_int(1)));
            if !seen.contains(&cls.render()) {
                return fail(
                    &object,
                    format!("pushforward image of basis monomial '{}' missing", cls.render()),
                );
            }
        }
        let push = match LinearRingMap::module_map(&ring_x, &ring_y, spec.codim, push_images) {
            Ok(m) => m,
            Err(e) => return fail(&object, format!("pushforward: {e}")),
        };

        let Some(normal) = bundles.get(&spec.normal) else {
            return fail(&object, format!("unknown bundle '{}'", spec.normal));
        };
        let tangent_y = match &spec.tangent_y {
            Some(lit) => match TotalClass::new(parse_in_ring(&object, &ring_y, lit)?) {
                Ok(t) => Some(t),
                Err(e) => return fail(&object, format!("ambient tangent class: {e}")),
            },
            None => None,
        };
        let tangent_x = match &spec.tangent_x {
            Some(lit) => match TotalClass::new(parse_in_ring(&object, &ring_x, lit)?) {
                Ok(t) => Some(t),
                Err(e) => return fail(&object, format!("center tangent class: {e}")),
            },
            None => None,
        };

        let embed = match EmbeddingData::new(pull, push, normal.clone(), tangent_y, tangent_x) {
            Ok(e) => e,
            Err(e) => return fail(&object, e),
        };
        match BlowupRing::new(embed) {
            Ok(br) => {
                embeddings.insert(name.clone(), br);
            }
            Err(e) => return fail(&object, e),
        }
    }

    let mut nilmanifolds = BTreeMap::new();
    for (name, spec) in &manifest.nilmanifolds {
        let object = format!("nilmanifold '{name}'");
        let n = spec.dim;
        let mut d_hol = vec![vec![]; n as usize];
        let mut d_mix = vec![vec![]; n as usize];
        let read = |table: &BTreeMap<String, Vec<TermSpec>>,
                        out: &mut Vec<Vec<(bcblow_core::nilbc::GaussQ, u32, u32)>>|
         -> Result<(), BuildError> {
            for (k, terms) in table {
                let Ok(k) = k.parse::<u32>() else {
                    return fail(&object, format!("generator key '{k}' is not an index"));
                };
                if !(1..=n).contains(&k) {
                    return fail(&object, format!("generator index {k} out of range 1..={n}"));
                }
                for (coeff, i, j) in terms {
                    let c = match parse_gauss(coeff) {
                        Ok(c) => c,
                        Err(e) => return fail(&object, format!("coefficient '{coeff}': {e}")),
                    };
                    out[(k - 1) as usize].push((c, *i, *j));
                }
            }
            Ok(())
        };
        read(&spec.d_hol, &mut d_hol)?;
        read(&spec.d_mix, &mut d_mix)?;
        match StructureEquations::new(n, d_hol, d_mix) {
            Ok(se) => {
                nilmanifolds.insert(name.clone(), se);
            }
            Err(e) => return fail(&object, e),
        }
    }

    // task references must resolve before anything runs
    for (i, task) in manifest.tasks.iter().enumerate() {
        let object = format!("task {} ({})", task.label(i), task.kind());
        match task {
            TaskSpec::VerifyBlowup { embedding, .. }
            | TaskSpec::BlowupChern { embedding, .. } => {
                if !embeddings.contains_key(embedding) {
                    return fail(&object, format!("unknown embedding '{embedding}'"));
                }
            }
            TaskSpec::RrPushforward {
                embedding, bundle, ..
            } => {
                if !embeddings.contains_key(embedding) {
                    return fail(&object, format!("unknown embedding '{embedding}'"));
                }
                if !bundles.contains_key(bundle) {
                    return fail(&object, format!("unknown bundle '{bundle}'"));
                }
            }
            TaskSpec::NilbcDims { nilmanifold, .. } | TaskSpec::BcExact { nilmanifold, .. } => {
                if !nilmanifolds.contains_key(nilmanifold) {
                    return fail(&object, format!("unknown nilmanifold '{nilmanifold}'"));
                }
            }
            TaskSpec::RrSeries { u, .. } => {
                if *u == 0 {
                    return fail(&object, "u must be at least 1");
                }
            }
            TaskSpec::VerifyPreset { preset, .. } => {
                if !bcblow_core::presets::PRESET_NAMES.contains(&preset.as_str()) {
                    return fail(&object, format!("unknown preset '{preset}'"));
                }
            }
        }
    }

    Ok(BuiltManifest {
        rings,
        bundles,
        embeddings,
        nilmanifolds,
        tasks: manifest.tasks,
    })
}

/// Parses an invariant form against a nilmanifold dimension.
pub fn build_form(
    object: &str,
    n: u32,
    spec: &FormSpec,
) -> Result<bcblow_core::nilbc::InvariantForm, BuildError> {
    use bcblow_core::nilbc::InvariantForm;
    let mut form = InvariantForm::zero(n, spec.p, spec.q);
    for (coeff, hol, anti) in &spec.terms {
        let c = match parse_gauss(coeff) {
            Ok(c) => c,
            Err(e) => return fail(object, format!("coefficient '{coeff}': {e}")),
        };
        let digits = |s: &str| -> Result<Vec<u32>, BuildError> {
            s.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .filter(|d| (1..=n).contains(d))
                        .ok_or_else(|| BuildError {
                            object: object.to_string(),
                            message: format!("bad index '{ch}' in '{s}'"),
                        })
                })
                .collect()
        };
        let hol = digits(hol)?;
        let anti = digits(anti)?;
        if hol.len() != spec.p as usize || anti.len() != spec.q as usize {
            return fail(object, format!("term indices do not match bidegree ({},{})", spec.p, spec.q));
        }
        for block in [&hol, &anti] {
            if !block.windows(2).all(|w| w[0] < w[1]) {
                return fail(object, format!("indices must be strictly increasing: {block:?}"));
            }
        }
        let monomial = InvariantForm::basis_monomial(n, &hol, &anti);
        form = match form.add(&monomial.scale(&c)) {
            Ok(f) => f,
            Err(e) => return fail(object, e),
        };
    }
    Ok(form)
}
