//! Corpus documents: the `satnorm/1` JSON schema, loading, and validation.
//!
//! Loading is strict: unknown keys are schema errors with a JSON pointer,
//! every reference must resolve, and every morphism must be well-defined
//! (each source relation maps to zero), with the failing relation named.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use satnorm::algebra::{AlgebraMorphism, PresentedAlgebra, Sequence};
use satnorm::field::{Field, PrimeField, Rationals};
use satnorm::ideal::Ideal;
use satnorm::parse::poly_parse;
use satnorm::poly::Poly;

pub const SCHEMA_VERSION: &str = "satnorm/1";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("schema error at `{pointer}`: {message}")]
    Schema { pointer: String, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unresolved reference: {0}")]
    UnresolvedReference(String),
}

type Result<T> = std::result::Result<T, CorpusError>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    schema: String,
    field: RawField,
    #[serde(default)]
    algebras: BTreeMap<String, RawAlgebra>,
    #[serde(default)]
    morphisms: BTreeMap<String, RawMorphism>,
    #[serde(default)]
    sequences: BTreeMap<String, RawSequence>,
    #[serde(default)]
    diagrams: BTreeMap<String, RawDiagram>,
    #[serde(default)]
    ideals: BTreeMap<String, RawIdeal>,
    #[serde(default)]
    testsets: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawField {
    Name(String),
    Fp {
        #[serde(rename = "Fp")]
        p: u64,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    #[serde(default)]
    vars: Vec<String>,
    #[serde(default)]
    relations: Vec<String>,
    #[serde(default)]
    over: Option<String>,
    #[serde(default)]
    structure: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    from: String,
    to: String,
    #[serde(default)]
    images: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    base: String,
    mid: String,
    top: String,
    tau: String,
    g: String,
}

#[derive(Debug, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
pub struct RawDiagram {
    pub top: String,
    pub bottom: String,
    #[serde(rename = "fR")]
    pub f_r: String,
    #[serde(rename = "fA")]
    pub f_a: String,
    pub f: String,
    #[serde(default)]
    pub retraction: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdeal {
    #[serde(rename = "in")]
    ambient: String,
    #[serde(default)]
    gens: Vec<String>,
}

/// A fully resolved and validated corpus document over one field.
pub struct CorpusDocument<F: Field> {
    pub path: PathBuf,
    pub sha256: String,
    pub field: F,
    pub algebras: BTreeMap<String, Arc<PresentedAlgebra<F>>>,
    pub morphisms: BTreeMap<String, AlgebraMorphism<F>>,
    pub sequences: BTreeMap<String, Sequence<F>>,
    pub diagrams: BTreeMap<String, RawDiagram>,
    pub ideals: BTreeMap<String, Ideal<F>>,
    pub testsets: BTreeMap<String, Vec<String>>,
}

/// A document over whichever field the file declared.
pub enum AnyDoc {
    Q(CorpusDocument<Rationals>),
    Fp(CorpusDocument<PrimeField>),
}

impl AnyDoc {
    pub fn path(&self) -> &Path {
        match self {
            AnyDoc::Q(d) => &d.path,
            AnyDoc::Fp(d) => &d.path,
        }
    }
}

/// Loads, parses and validates one corpus file.
pub fn load_corpus(path: &Path) -> Result<AnyDoc> {
    let bytes = std::fs::read(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let sha256 = hex::encode(Sha256::digest(&bytes));

    let mut de = serde_json::Deserializer::from_slice(&bytes);
    let raw: RawDoc =
        serde_path_to_error::deserialize(&mut de).map_err(|e| CorpusError::Schema {
            pointer: e.path().to_string(),
            message: e.inner().to_string(),
        })?;

    if raw.schema != SCHEMA_VERSION {
        return Err(CorpusError::Validation(format!(
            "unsupported schema `{}` (expected `{SCHEMA_VERSION}`)",
            raw.schema
        )));
    }
    match &raw.field {
        RawField::Name(name) if name == "Q" => resolve(raw, Rationals, path, sha256).map(AnyDoc::Q),
        RawField::Name(name) => Err(CorpusError::Validation(format!(
            "unknown field `{name}` (expected \"Q\" or {{\"Fp\": p}})"
        ))),
        RawField::Fp { p } => {
            let field = PrimeField::new(*p).map_err(|e| CorpusError::Validation(e.to_string()))?;
            resolve(raw, field, path, sha256).map(AnyDoc::Fp)
        }
    }
}

fn resolve<F: Field>(
    raw: RawDoc,
    field: F,
    path: &Path,
    sha256: String,
) -> Result<CorpusDocument<F>> {
    // algebras
    let mut algebras: BTreeMap<String, Arc<PresentedAlgebra<F>>> = BTreeMap::new();
    for (name, spec) in &raw.algebras {
        let ring = satnorm::poly::PolyRing::new(field.clone(), spec.vars.clone())
            .map_err(|e| CorpusError::Validation(format!("algebra `{name}`: {e}")))?;
        let mut relations = Vec::with_capacity(spec.relations.len());
        for text in &spec.relations {
            let p = poly_parse(text, &ring).map_err(|e| {
                CorpusError::Validation(format!("algebra `{name}`, relation `{text}`: {e}"))
            })?;
            relations.push(p);
        }
        let alg = PresentedAlgebra::new(name.clone(), field.clone(), spec.vars.clone(), relations)
            .map_err(|e| CorpusError::Validation(format!("algebra `{name}`: {e}")))?;
        algebras.insert(name.clone(), alg);
    }

    let lookup_algebra = |name: &str, context: &str| -> Result<Arc<PresentedAlgebra<F>>> {
        algebras.get(name).cloned().ok_or_else(|| {
            CorpusError::UnresolvedReference(format!("algebra `{name}` (needed by {context})"))
        })
    };

    // morphisms, with well-definedness checked and the failing relation named
    let mut morphisms: BTreeMap<String, AlgebraMorphism<F>> = BTreeMap::new();
    for (name, spec) in &raw.morphisms {
        let from = lookup_algebra(&spec.from, &format!("morphism `{name}`"))?;
        let to = lookup_algebra(&spec.to, &format!("morphism `{name}`"))?;
        let mut images = Vec::with_capacity(from.nvars());
        for v in from.vars() {
            let text = spec.images.get(v).ok_or_else(|| {
                CorpusError::Validation(format!(
                    "morphism `{name}`: missing image for variable `{v}`"
                ))
            })?;
            let img = poly_parse(text, to.poly_ring()).map_err(|e| {
                CorpusError::Validation(format!("morphism `{name}`, image of `{v}`: {e}"))
            })?;
            images.push(img);
        }
        for key in spec.images.keys() {
            if from.poly_ring().var_index(key).is_none() {
                return Err(CorpusError::Validation(format!(
                    "morphism `{name}`: `{key}` is not a variable of `{}`",
                    spec.from
                )));
            }
        }
        let morphism = AlgebraMorphism::new(from.clone(), to, images)
            .map_err(|e| CorpusError::Validation(format!("morphism `{name}`: {e}")))?;
        for relation in from.relations() {
            let image = morphism
                .apply(relation)
                .map_err(|e| CorpusError::Validation(format!("morphism `{name}`: {e}")))?;
            if !image.is_zero() {
                return Err(CorpusError::Validation(format!(
                    "morphism `{name}` is not well-defined: relation `{relation}` maps to `{image}`"
                )));
            }
        }
        morphisms.insert(name.clone(), morphism);
    }

    // optional structure morphisms on algebras
    for (name, spec) in &raw.algebras {
        match (&spec.over, &spec.structure) {
            (None, None) => {}
            (Some(_), None) | (None, Some(_)) => {
                return Err(CorpusError::Validation(format!(
                    "algebra `{name}`: `over` and `structure` must be supplied together"
                )));
            }
            (Some(over), Some(structure)) => {
                let base = lookup_algebra(over, &format!("algebra `{name}`"))?;
                let m = morphisms.get(structure).ok_or_else(|| {
                    CorpusError::UnresolvedReference(format!(
                        "morphism `{structure}` (structure of algebra `{name}`)"
                    ))
                })?;
                let this = &algebras[name];
                if !PresentedAlgebra::compatible(m.from_algebra(), &base)
                    || !PresentedAlgebra::compatible(m.to_algebra(), this)
                {
                    return Err(CorpusError::Validation(format!(
                        "algebra `{name}`: structure morphism `{structure}` does not map `{over}` into it"
                    )));
                }
            }
        }
    }

    let lookup_morphism = |name: &str, context: &str| -> Result<AlgebraMorphism<F>> {
        morphisms.get(name).cloned().ok_or_else(|| {
            CorpusError::UnresolvedReference(format!("morphism `{name}` (needed by {context})"))
        })
    };

    // sequences
    let mut sequences: BTreeMap<String, Sequence<F>> = BTreeMap::new();
    for (name, spec) in &raw.sequences {
        let base = lookup_algebra(&spec.base, &format!("sequence `{name}`"))?;
        let mid = lookup_algebra(&spec.mid, &format!("sequence `{name}`"))?;
        let top = lookup_algebra(&spec.top, &format!("sequence `{name}`"))?;
        let tau = lookup_morphism(&spec.tau, &format!("sequence `{name}`"))?;
        let g = lookup_morphism(&spec.g, &format!("sequence `{name}`"))?;
        let endpoints_ok = PresentedAlgebra::compatible(tau.from_algebra(), &base)
            && PresentedAlgebra::compatible(tau.to_algebra(), &mid)
            && PresentedAlgebra::compatible(g.from_algebra(), &mid)
            && PresentedAlgebra::compatible(g.to_algebra(), &top);
        if !endpoints_ok {
            return Err(CorpusError::Validation(format!(
                "sequence `{name}`: morphism endpoints do not match base/mid/top"
            )));
        }
        let seq = Sequence::new(tau, g)
            .map_err(|e| CorpusError::Validation(format!("sequence `{name}`: {e}")))?;
        sequences.insert(name.clone(), seq);
    }

    // diagrams: references checked now, built on demand
    for (name, spec) in &raw.diagrams {
        for seq in [&spec.top, &spec.bottom] {
            if !sequences.contains_key(seq) {
                return Err(CorpusError::UnresolvedReference(format!(
                    "sequence `{seq}` (needed by diagram `{name}`)"
                )));
            }
        }
        for m in [&spec.f_r, &spec.f_a, &spec.f] {
            if !morphisms.contains_key(m) {
                return Err(CorpusError::UnresolvedReference(format!(
                    "morphism `{m}` (needed by diagram `{name}`)"
                )));
            }
        }
        if let Some(h) = &spec.retraction {
            if !morphisms.contains_key(h) {
                return Err(CorpusError::UnresolvedReference(format!(
                    "morphism `{h}` (retraction of diagram `{name}`)"
                )));
            }
        }
    }

    // ideals
    let mut ideals: BTreeMap<String, Ideal<F>> = BTreeMap::new();
    for (name, spec) in &raw.ideals {
        let ambient = lookup_algebra(&spec.ambient, &format!("ideal `{name}`"))?;
        let mut gens: Vec<Poly<F>> = Vec::with_capacity(spec.gens.len());
        for text in &spec.gens {
            let p = poly_parse(text, ambient.poly_ring()).map_err(|e| {
                CorpusError::Validation(format!("ideal `{name}`, generator `{text}`: {e}"))
            })?;
            gens.push(p);
        }
        let ideal = Ideal::new(ambient.quotient().clone(), gens)
            .map_err(|e| CorpusError::Validation(format!("ideal `{name}`: {e}")))?;
        ideals.insert(name.clone(), ideal);
    }

    Ok(CorpusDocument {
        path: path.to_path_buf(),
        sha256,
        field,
        algebras,
        morphisms,
        sequences,
        diagrams: raw.diagrams,
        ideals,
        testsets: raw.testsets,
    })
}

impl<F: Field> CorpusDocument<F> {
    pub fn sequence(&self, name: &str) -> Result<&Sequence<F>> {
        self.sequences
            .get(name)
            .ok_or_else(|| CorpusError::UnresolvedReference(format!("sequence `{name}`")))
    }

    pub fn morphism(&self, name: &str) -> Result<&AlgebraMorphism<F>> {
        self.morphisms
            .get(name)
            .ok_or_else(|| CorpusError::UnresolvedReference(format!("morphism `{name}`")))
    }

    pub fn ideal(&self, name: &str) -> Result<&Ideal<F>> {
        self.ideals
            .get(name)
            .ok_or_else(|| CorpusError::UnresolvedReference(format!("ideal `{name}`")))
    }

    pub fn testset(&self, name: &str) -> Result<&[String]> {
        self.testsets
            .get(name)
            .map(|v| v.as_slice())
            .ok_or_else(|| CorpusError::UnresolvedReference(format!("testset `{name}`")))
    }

    pub fn diagram_refs(&self, name: &str) -> Result<&RawDiagram> {
        self.diagrams
            .get(name)
            .ok_or_else(|| CorpusError::UnresolvedReference(format!("diagram `{name}`")))
    }

    /// Builds the diagram square named `name`.
    pub fn build_diagram(&self, name: &str) -> Result<satnorm::diagram::DiagramSquare<F>> {
        let refs = self.diagram_refs(name)?;
        let top = self.sequence(&refs.top)?.clone();
        let bottom = self.sequence(&refs.bottom)?.clone();
        let f_r = self.morphism(&refs.f_r)?.clone();
        let f_a = self.morphism(&refs.f_a)?.clone();
        let f = self.morphism(&refs.f)?.clone();
        let retraction = match &refs.retraction {
            Some(h) => Some(self.morphism(h)?.clone()),
            None => None,
        };
        satnorm::diagram::DiagramSquare::build(top, bottom, f_r, f_a, f, retraction)
            .map_err(|e| CorpusError::Validation(format!("diagram `{name}`: {e}")))
    }

    /// Parses a test-set element in the top algebra of `seq`.
    pub fn parse_in_top(&self, seq: &Sequence<F>, text: &str) -> Result<Poly<F>> {
        poly_parse(text, seq.top().poly_ring())
            .map_err(|e| CorpusError::Validation(format!("element `{text}`: {e}")))
    }
}
