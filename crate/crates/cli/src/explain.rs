//! Turning engine errors into report failures: a witness value and whether
//! the error is an input problem (exit 2) or a mathematical one (exit 1).

use gpcomod::algpcom::ApcError;
use gpcomod::exactla::LaError;
use gpcomod::globalization::GlobError;
use gpcomod::gpc::GpcError;
use gpcomod::hopfpc::HopfError;
use gpcomod::parmod::ParmodError;
use gpcomod::structures::StructureError;
use serde_json::{json, Value};

use crate::report::vector;

pub trait Explain: std::fmt::Display {
    fn witness(&self) -> Value;
    fn is_input(&self) -> bool;
}

impl Explain for LaError {
    fn witness(&self) -> Value {
        match self {
            LaError::NoSolution { witness } => vector(witness),
            LaError::DimensionMismatch {
                op,
                expected,
                found,
            } => json!({"op": op, "expected": expected, "found": found}),
            _ => Value::Null,
        }
    }

    fn is_input(&self) -> bool {
        !matches!(self, LaError::NoSolution { .. })
    }
}

impl Explain for StructureError {
    fn witness(&self) -> Value {
        match self {
            StructureError::AxiomViolation { axiom, row, col } => {
                json!({"axiom": axiom, "row": row, "col": col})
            }
            StructureError::La(e) => e.witness(),
            _ => Value::Null,
        }
    }

    fn is_input(&self) -> bool {
        match self {
            StructureError::BadGroup(_) => true,
            StructureError::La(e) => e.is_input(),
            _ => false,
        }
    }
}

impl Explain for GpcError {
    fn witness(&self) -> Value {
        match self {
            GpcError::Gpc1 { witness, .. }
            | GpcError::Gpc2 { witness, .. }
            | GpcError::Morphism { witness, .. } => vector(witness),
            GpcError::NotEpi { rank, bullet_dim } => {
                json!({"rank": rank, "bullet_dim": bullet_dim})
            }
            GpcError::Counitality { index } => json!({"index": index}),
            GpcError::La(e) => e.witness(),
            _ => Value::Null,
        }
    }

    fn is_input(&self) -> bool {
        match self {
            GpcError::Malformed(_) => true,
            GpcError::La(e) => e.is_input(),
            _ => false,
        }
    }
}

impl Explain for GlobError {
    fn witness(&self) -> Value {
        match self {
            GlobError::Gpc(e) => e.witness(),
            GlobError::CertificateFailure { certificate, .. } => json!({
                "equalizer_dim": certificate.equalizer_dim,
                "gl1": certificate.gl1,
                "pushout": certificate.pushout,
                "proper": certificate.proper,
            }),
            GlobError::NotProper { witness } | GlobError::ConditionViolated { witness } => {
                vector(witness)
            }
            GlobError::La(e) => e.witness(),
            GlobError::NoIso(_) => Value::Null,
        }
    }

    fn is_input(&self) -> bool {
        match self {
            GlobError::Gpc(e) => e.is_input(),
            GlobError::La(e) => e.is_input(),
            _ => false,
        }
    }
}

impl Explain for ParmodError {
    fn witness(&self) -> Value {
        match self {
            ParmodError::PartialModule { axiom, h, k } => json!({"axiom": axiom, "h": h, "k": k}),
            ParmodError::PartialRep { axiom, g, h } => json!({"axiom": axiom, "g": g, "h": h}),
            ParmodError::Glob(e) => e.witness(),
            ParmodError::La(e) => e.witness(),
            _ => Value::Null,
        }
    }

    fn is_input(&self) -> bool {
        match self {
            ParmodError::Malformed(_) => true,
            ParmodError::Glob(e) => e.is_input(),
            ParmodError::La(e) => e.is_input(),
            _ => false,
        }
    }
}

impl Explain for ApcError {
    fn witness(&self) -> Value {
        match self {
            ApcError::Axiom { axiom, index } => json!({"axiom": axiom, "index": index}),
            ApcError::Gpc(e) => e.witness(),
            ApcError::Glob(e) => e.witness(),
            ApcError::Malformed(_) => Value::Null,
        }
    }

    fn is_input(&self) -> bool {
        match self {
            ApcError::Malformed(_) => true,
            ApcError::Gpc(e) => e.is_input(),
            ApcError::Glob(e) => e.is_input(),
            ApcError::Axiom { .. } => false,
        }
    }
}

impl Explain for HopfError {
    fn witness(&self) -> Value {
        match self {
            HopfError::Module { which, law } => json!({"which": which, "law": law}),
            HopfError::Linearity { witness, .. } | HopfError::ConditionViolated { witness } => {
                vector(witness)
            }
            HopfError::Gpc(e) => e.witness(),
            HopfError::Glob(e) => e.witness(),
            HopfError::La(e) => e.witness(),
            _ => Value::Null,
        }
    }

    fn is_input(&self) -> bool {
        match self {
            HopfError::Malformed(_) => true,
            HopfError::Gpc(e) => e.is_input(),
            HopfError::Glob(e) => e.is_input(),
            HopfError::La(e) => e.is_input(),
            _ => false,
        }
    }
}
