//! JSON schemas for presentations, curved dg-algebras and persistence
//! scenarios, plus the element literal used in reports.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::scalar::{format_rational, parse_rational};
use crate::algebra::{
    complete_presentation, parse_element, AlgebraError, Element, Presentation, Terms,
};
use crate::operator::{CurvedDga, LinearOperator, OperatorError};
use crate::persistence::{
    flag_complex, CurvatureFiltrationSpec, LinearFunctional, PersistenceError, Simplex,
    SimplicialComplex,
};
use crate::Scalar;

/// Rounds of critical-pair resolution applied to every loaded presentation.
pub const COMPLETION_ROUNDS: usize = 32;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at {at}: {message}")]
    Schema { at: String, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn schema(at: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Schema {
        at: at.into(),
        message: message.into(),
    }
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermLiteral {
    pub coeff: String,
    pub word: String,
}

/// `[{"coeff": "p/q", "word": "g1 g2"}, ...]`; `""` is the unit word.
pub type ElementLiteral = Vec<TermLiteral>;

/// Terms in increasing word order, coefficients as reduced `p/q` or integers.
pub fn element_to_literal(e: &Element) -> ElementLiteral {
    let p = e.presentation();
    e.terms()
        .iter()
        .map(|(w, q)| TermLiteral {
            coeff: format_rational(q),
            word: p.format_word(w),
        })
        .collect()
}

pub fn element_from_literal(lit: &[TermLiteral], p: &Arc<Presentation>) -> Result<Element, AlgebraError> {
    let mut terms = Terms::new();
    for t in lit {
        let q = parse_rational(&t.coeff)?;
        let w = p.parse_word(&t.word)?;
        p.check_len(w.len())?;
        let entry = terms.entry(w).or_insert_with(|| Scalar::from_integer(0.into()));
        *entry += q;
    }
    terms.retain(|_, q| *q != Scalar::from_integer(0.into()));
    Ok(Element::from_terms(p, terms))
}

/// An element given either as a literal term list or as an expression string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Literal(ElementLiteral),
    Expression(String),
}

impl ElementSpec {
    pub fn resolve(&self, p: &Arc<Presentation>) -> Result<Element, AlgebraError> {
        match self {
            ElementSpec::Literal(l) => element_from_literal(l, p),
            ElementSpec::Expression(s) => parse_element(s, p),
        }
    }
}

/// A rational written as a string (`"3/10"`) or as a JSON integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RationalSpec {
    Text(String),
    Integer(i64),
}

impl RationalSpec {
    fn resolve(&self) -> Result<Scalar, AlgebraError> {
        match self {
            RationalSpec::Text(s) => parse_rational(s),
            RationalSpec::Integer(n) => Ok(Scalar::from_integer((*n).into())),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorFile {
    name: String,
    degree: i64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationFile {
    lhs: String,
    rhs: ElementLiteral,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    generators: Vec<GeneratorFile>,
    #[serde(default)]
    relations: Vec<RelationFile>,
    /// Lex order on generators, smallest first; defaults to declaration order.
    #[serde(default)]
    order: Option<Vec<String>>,
}

impl PresentationFile {
    /// Builds and completes the presentation.
    pub fn build(&self, word_limit: usize) -> Result<Arc<Presentation>, FormatError> {
        let mut b = Presentation::builder().word_limit(word_limit);
        for g in &self.generators {
            b = b.generator(&g.name, g.degree);
        }
        if let Some(order) = &self.order {
            b = b.order(order);
        }
        for (i, r) in self.relations.iter().enumerate() {
            let mut rhs = Vec::with_capacity(r.rhs.len());
            for t in &r.rhs {
                let q = parse_rational(&t.coeff)
                    .map_err(|e| schema(format!("relations[{i}].rhs"), e.to_string()))?;
                rhs.push((q, t.word.clone()));
            }
            b = b.relation_terms(&r.lhs, rhs);
        }
        let p = b.build()?;
        Ok(complete_presentation(&p, COMPLETION_ROUNDS)?)
    }
}

pub fn load_presentation(text: &str, word_limit: usize) -> Result<Arc<Presentation>, FormatError> {
    let file: PresentationFile = serde_json::from_str(text)?;
    file.build(word_limit)
}

/// A presentation given inline or as a path relative to the referencing file.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum PresentationRef {
    Path(String),
    Inline(PresentationFile),
}

impl PresentationRef {
    fn resolve(&self, base: Option<&Path>, word_limit: usize) -> Result<Arc<Presentation>, FormatError> {
        match self {
            PresentationRef::Inline(f) => f.build(word_limit),
            PresentationRef::Path(rel) => {
                let path: PathBuf = match base {
                    Some(dir) => dir.join(rel),
                    None => PathBuf::from(rel),
                };
                load_presentation(&read_file(&path)?, word_limit)
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum DifferentialFile {
    Ad {
        of: ElementSpec,
    },
    Leibniz {
        degree: i64,
        values: BTreeMap<String, ElementSpec>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DgaFile {
    presentation: PresentationRef,
    differential: DifferentialFile,
    curvature: ElementSpec,
}

/// Loads a curved dg-algebra file. `base` resolves a relative presentation path.
pub fn load_dga(text: &str, base: Option<&Path>, word_limit: usize) -> Result<CurvedDga, FormatError> {
    let file: DgaFile = serde_json::from_str(text)?;
    let p = file.presentation.resolve(base, word_limit)?;
    let d = match &file.differential {
        DifferentialFile::Ad { of } => {
            let x = of.resolve(&p).map_err(|e| schema("differential.of", e.to_string()))?;
            LinearOperator::inner_derivation(&x)?
        }
        DifferentialFile::Leibniz { degree, values } => {
            let mut resolved = BTreeMap::new();
            for (name, v) in values {
                let e = v
                    .resolve(&p)
                    .map_err(|e| schema(format!("differential.values.{name}"), e.to_string()))?;
                resolved.insert(name.clone(), e);
            }
            LinearOperator::leibniz(&p, *degree, resolved)?
        }
    };
    let c = file
        .curvature
        .resolve(&p)
        .map_err(|e| schema("curvature", e.to_string()))?;
    Ok(CurvedDga::new(d, c)?)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    vertices: Vec<u32>,
    edges: Vec<(u32, u32)>,
    max_dim: usize,
    /// Keeps only these cliques of dimension >= 2 (and their faces).
    #[serde(default)]
    simplices: Option<Vec<String>>,
    base_times: BTreeMap<String, RationalSpec>,
    #[serde(default)]
    tagged: BTreeMap<String, String>,
    #[serde(default)]
    functionals: BTreeMap<String, BTreeMap<String, RationalSpec>>,
    #[serde(default)]
    curvatures: BTreeMap<String, ElementSpec>,
    #[serde(default)]
    presentation: Option<PresentationRef>,
}

/// A scenario file resolved against its presentation.
#[derive(Clone, Debug)]
pub struct LoadedScenario {
    pub presentation: Arc<Presentation>,
    pub complex: SimplicialComplex,
    pub spec: CurvatureFiltrationSpec,
    pub curvatures: BTreeMap<String, Element>,
}

impl LoadedScenario {
    pub fn curvature(&self, name: &str) -> Result<&Element, FormatError> {
        self.curvatures
            .get(name)
            .ok_or_else(|| schema("curvatures", format!("no curvature named `{name}`")))
    }
}

/// Loads a scenario. Without a `presentation` key the built-in counterexample
/// presentation is used; `base` resolves a relative presentation path.
pub fn load_scenario(text: &str, base: Option<&Path>, word_limit: usize) -> Result<LoadedScenario, FormatError> {
    let file: ScenarioFile = serde_json::from_str(text)?;
    let presentation = match &file.presentation {
        Some(r) => r.resolve(base, word_limit)?,
        None => crate::fixtures::counterexample_presentation_with_limit(word_limit),
    };
    let mut complex = flag_complex(&file.vertices, &file.edges, file.max_dim)?;
    if let Some(keep) = &file.simplices {
        let keep = keep
            .iter()
            .map(|s| Simplex::parse(s).map_err(|e| schema(format!("simplices.{s}"), e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        complex = complex.restrict_to(&keep)?;
    }
    let mut base_times = BTreeMap::new();
    for (k, v) in &file.base_times {
        let dim: usize = k
            .parse()
            .map_err(|_| schema(format!("base_times.{k}"), "key must be a dimension"))?;
        let t = v
            .resolve()
            .map_err(|e| schema(format!("base_times.{k}"), e.to_string()))?;
        base_times.insert(dim, t);
    }
    let mut tagged = BTreeMap::new();
    for (k, name) in &file.tagged {
        let s = Simplex::parse(k).map_err(|e| schema(format!("tagged.{k}"), e.to_string()))?;
        tagged.insert(s, name.clone());
    }
    let mut functionals = BTreeMap::new();
    for (name, coeffs) in &file.functionals {
        let mut resolved = BTreeMap::new();
        for (w, q) in coeffs {
            let q = q
                .resolve()
                .map_err(|e| schema(format!("functionals.{name}.{w}"), e.to_string()))?;
            resolved.insert(w.clone(), q);
        }
        functionals.insert(name.clone(), LinearFunctional::from_named(&presentation, &resolved)?);
    }
    let spec = CurvatureFiltrationSpec::new(base_times, tagged, functionals)?;
    let mut curvatures = BTreeMap::new();
    for (name, c) in &file.curvatures {
        let e = c
            .resolve(&presentation)
            .map_err(|e| schema(format!("curvatures.{name}"), e.to_string()))?;
        curvatures.insert(name.clone(), e);
    }
    Ok(LoadedScenario {
        presentation,
        complex,
        spec,
        curvatures,
    })
}
