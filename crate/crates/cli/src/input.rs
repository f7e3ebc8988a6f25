//! Loading inputs: file paths, inline JSON, and structure references of the
//! form `builtin:<name>`, a path, or an inline object.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use gpcomod::exactla::{LinMap, Subspace};
use gpcomod::findimcat::Direction;
use gpcomod::structures::{builtin, Structure, StructureJson, BUILTIN_NAMES};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid input in {context}: {source}")]
    Json {
        context: String,
        source: serde_json::Error,
    },
    #[error("unknown builtin structure {name:?} (known: {known})")]
    UnknownBuiltin { name: String, known: String },
    #[error("{0}")]
    Schema(String),
}

/// A parsed JSON document and the directory relative paths resolve against.
#[derive(Debug, Clone)]
pub struct Document {
    pub value: Value,
    pub base: PathBuf,
    pub context: String,
}

impl Document {
    pub fn parse<T: DeserializeOwned>(&self) -> Result<T, InputError> {
        serde_json::from_value(self.value.clone()).map_err(|source| InputError::Json {
            context: self.context.clone(),
            source,
        })
    }
}

/// An argument that is either inline JSON (starting with `{`) or a path.
pub fn load(arg: &str) -> Result<Document, InputError> {
    load_relative(arg, Path::new("."))
}

fn load_relative(arg: &str, base: &Path) -> Result<Document, InputError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        let value = serde_json::from_str(trimmed).map_err(|source| InputError::Json {
            context: "inline JSON".into(),
            source,
        })?;
        return Ok(Document {
            value,
            base: base.to_path_buf(),
            context: "inline JSON".into(),
        });
    }
    let path = base.join(arg);
    let text = std::fs::read_to_string(&path).map_err(|source| InputError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let value = serde_json::from_str(&text).map_err(|source| InputError::Json {
        context: path.display().to_string(),
        source,
    })?;
    Ok(Document {
        value,
        base: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        context: path.display().to_string(),
    })
}

/// Resolve a reference found inside `doc`: a string (`builtin:<name>` or a
/// path relative to the document) or an inline object.
pub fn resolve(value: &Value, doc: &Document) -> Result<Document, InputError> {
    match value {
        Value::String(s) => load_relative(s, &doc.base),
        Value::Object(_) => Ok(Document {
            value: value.clone(),
            base: doc.base.clone(),
            context: format!("{} (inline)", doc.context),
        }),
        _ => Err(InputError::Schema(format!(
            "{}: a reference must be a string or an object",
            doc.context
        ))),
    }
}

pub fn structure(value: &Value, doc: &Document) -> Result<Structure, InputError> {
    if let Value::String(s) = value {
        if let Some(name) = s.strip_prefix("builtin:") {
            return builtin(name).ok_or_else(|| InputError::UnknownBuiltin {
                name: name.to_string(),
                known: BUILTIN_NAMES.join(", "),
            });
        }
    }
    let d = resolve(value, doc)?;
    let json: StructureJson = d.parse()?;
    json.parse()
        .map_err(|e| InputError::Schema(format!("{}: {e}", d.context)))
}

/// A top-level structure argument: `builtin:<name>`, a path, or inline JSON.
pub fn structure_arg(arg: &str) -> Result<Structure, InputError> {
    let here = Document {
        value: Value::Null,
        base: PathBuf::from("."),
        context: "argument".into(),
    };
    structure(&Value::String(arg.to_string()), &here).or_else(|e| match e {
        InputError::Read { .. } if arg.trim_start().starts_with('{') => {
            let d = load(arg)?;
            let json: StructureJson = d.parse()?;
            json.parse()
                .map_err(|e| InputError::Schema(format!("{}: {e}", d.context)))
        }
        other => Err(other),
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub coalgebra: Value,
    #[serde(default)]
    pub x_dim: Option<usize>,
    #[serde(default)]
    pub bullet_dim: Option<usize>,
    pub pi: LinMap,
    pub rho: LinMap,
    #[serde(default)]
    pub direction: Direction,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NcFile {
    pub coalgebra: Value,
    pub coaction: LinMap,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialModuleFile {
    pub hopf: Value,
    pub m_dim: usize,
    pub lambda: LinMap,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialRepFile {
    pub group: Vec<Vec<usize>>,
    pub v_dim: usize,
    /// Operators keyed by element index or element name.
    pub pi: BTreeMap<String, LinMap>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ApcFile {
    Fixture {
        fixture: String,
        #[serde(rename = "N")]
        n: usize,
    },
    Explicit {
        hopf: Value,
        m_dim: usize,
        partial_coaction: LinMap,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfFile {
    pub bialgebra: Value,
    pub datum: Value,
    pub act_m: LinMap,
    #[serde(default)]
    pub act_bullet: Option<LinMap>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub hopf: Value,
    pub v_dim: usize,
    /// Basis rows of `N ⊆ V⊗H`.
    #[serde(rename = "N")]
    pub n: LinMap,
}

impl PairFile {
    pub fn subspace(&self) -> Result<Subspace, InputError> {
        if self.n.rows() > 0 && self.n.cols() == 0 {
            return Err(InputError::Schema("N has zero columns".into()));
        }
        Ok(Subspace::from_rows(&self.n))
    }
}
