//! Proof files: a tree of `{kind, schema | rule, conclusion, premises}`
//! objects with conclusions written as sequent text.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Proof, Rule, Schema};
use crate::syntax::{parse_sequent, ParseError};

#[derive(Debug, Error)]
pub enum ProofJsonError {
    #[error("malformed proof JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad conclusion `{text}`: {err}")]
    Sequent { text: String, err: ParseError },
    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
    #[error("node kind must be `axiom` or `rule`, found `{0}`")]
    Kind(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct Node {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rule: Option<String>,
    conclusion: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    premises: Vec<Node>,
}

fn to_node(p: &Proof) -> Node {
    match p {
        Proof::Axiom { schema, conclusion } => Node {
            kind: "axiom".into(),
            schema: Some(schema.name().into()),
            rule: None,
            conclusion: conclusion.to_string(),
            premises: vec![],
        },
        Proof::Rule {
            rule,
            premises,
            conclusion,
        } => Node {
            kind: "rule".into(),
            schema: None,
            rule: Some(rule.name().into()),
            conclusion: conclusion.to_string(),
            premises: premises.iter().map(to_node).collect(),
        },
    }
}

fn from_node(n: Node) -> Result<Proof, ProofJsonError> {
    let conclusion = parse_sequent(&n.conclusion).map_err(|err| ProofJsonError::Sequent {
        text: n.conclusion.clone(),
        err,
    })?;
    let unknown = |what, name: Option<String>| ProofJsonError::Unknown {
        what,
        name: name.unwrap_or_default(),
    };
    match n.kind.as_str() {
        "axiom" => {
            let schema = n
                .schema
                .as_deref()
                .and_then(Schema::parse)
                .ok_or_else(|| unknown("schema", n.schema.clone()))?;
            Ok(Proof::Axiom { schema, conclusion })
        }
        "rule" => {
            let rule = n
                .rule
                .as_deref()
                .and_then(Rule::parse)
                .ok_or_else(|| unknown("rule", n.rule.clone()))?;
            let premises = n
                .premises
                .into_iter()
                .map(from_node)
                .collect::<Result<_, _>>()?;
            Ok(Proof::Rule {
                rule,
                premises,
                conclusion,
            })
        }
        k => Err(ProofJsonError::Kind(k.to_string())),
    }
}

pub fn proof_to_json(p: &Proof) -> String {
    serde_json::to_string_pretty(&to_node(p)).expect("proof nodes serialize")
}

pub fn proof_from_json(text: &str) -> Result<Proof, ProofJsonError> {
    from_node(serde_json::from_str(text)?)
}
