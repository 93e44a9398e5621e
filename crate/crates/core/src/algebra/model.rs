use std::fmt;

use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Algebra, DenseModel, FiniteAlgebra, Shape, TableError};
use crate::numeric::{Dyadic, Scalar};

/// Any shipped model, for callers that pick the model at run time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Finite(FiniteAlgebra),
    Dyadic(DenseModel<Dyadic>),
    Rational(DenseModel<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Index(usize),
    Dyadic(Dyadic),
    Rational(BigRational),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Index(i) => write!(f, "{i}"),
            Value::Dyadic(d) => write!(f, "{d}"),
            Value::Rational(q) => f.write_str(&crate::numeric::fmt_rational(q)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelSpecError {
    #[error("unknown model `{0}`")]
    Unknown(String),
    #[error("bad cap in `{0}`")]
    BadCap(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("value `{0}` is not in the carrier")]
    BadValue(String),
}

fn parse_dense<S: Scalar>(rest: &str, spec: &str) -> Result<DenseModel<S>, ModelSpecError> {
    if rest == "unbounded" {
        return Ok(DenseModel::unbounded());
    }
    let cap = rest
        .strip_prefix("capped:")
        .ok_or_else(|| ModelSpecError::Unknown(spec.to_string()))?;
    let a = S::parse(cap).map_err(|_| ModelSpecError::BadCap(spec.to_string()))?;
    if a <= S::zero() {
        return Err(ModelSpecError::BadCap(spec.to_string()));
    }
    Ok(DenseModel::capped(a))
}

impl Model {
    /// Parses `dyadic-unbounded`, `dyadic-capped:A`, `rational-unbounded`,
    /// `rational-capped:A`, `luk:N` or `godel:N`.
    pub fn from_spec(spec: &str) -> Result<Model, ModelSpecError> {
        if let Some(rest) = spec.strip_prefix("dyadic-") {
            return parse_dense(rest, spec).map(Model::Dyadic);
        }
        if let Some(rest) = spec.strip_prefix("rational-") {
            return parse_dense(rest, spec).map(Model::Rational);
        }
        let chain = |rest: &str| -> Result<usize, ModelSpecError> {
            rest.parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| ModelSpecError::Unknown(spec.to_string()))
        };
        if let Some(rest) = spec.strip_prefix("luk:") {
            return Ok(Model::Finite(FiniteAlgebra::lukasiewicz(chain(rest)?)));
        }
        if let Some(rest) = spec.strip_prefix("godel:") {
            return Ok(Model::Finite(FiniteAlgebra::godel(chain(rest)?)));
        }
        Err(ModelSpecError::Unknown(spec.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Model, ModelSpecError> {
        Ok(Model::Finite(FiniteAlgebra::from_json(text)?))
    }

    pub fn parse_value(&self, text: &str) -> Result<Value, ModelSpecError> {
        let bad = || ModelSpecError::BadValue(text.to_string());
        match self {
            Model::Finite(a) => {
                let i: usize = text.trim().parse().map_err(|_| bad())?;
                if i < a.size {
                    Ok(Value::Index(i))
                } else {
                    Err(bad())
                }
            }
            Model::Dyadic(m) => {
                let x = Dyadic::parse(text).map_err(|_| bad())?;
                m.contains(&x).then_some(Value::Dyadic(x)).ok_or_else(bad)
            }
            Model::Rational(m) => {
                let x = BigRational::parse(text).map_err(|_| bad())?;
                m.contains(&x).then_some(Value::Rational(x)).ok_or_else(bad)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Model::Finite(a) => format!("finite:{}", a.size),
            Model::Dyadic(m) => m.spec(),
            Model::Rational(m) => m.spec(),
        }
    }

    pub fn is_dense(&self) -> bool {
        !matches!(self, Model::Finite(_))
    }

    pub fn is_capped(&self) -> bool {
        match self {
            Model::Finite(_) => false,
            Model::Dyadic(m) => matches!(m.shape, Shape::Capped(_)),
            Model::Rational(m) => matches!(m.shape, Shape::Capped(_)),
        }
    }
}

fn mismatch() -> ! {
    panic!("value does not belong to this model")
}

macro_rules! dispatch2 {
    ($self:expr, $x:expr, $y:expr, $op:ident) => {
        match ($self, $x, $y) {
            (Model::Finite(a), Value::Index(x), Value::Index(y)) => Value::Index(a.$op(x, y)),
            (Model::Dyadic(m), Value::Dyadic(x), Value::Dyadic(y)) => Value::Dyadic(m.$op(x, y)),
            (Model::Rational(m), Value::Rational(x), Value::Rational(y)) => {
                Value::Rational(m.$op(x, y))
            }
            _ => mismatch(),
        }
    };
}

impl Algebra for Model {
    type Elem = Value;

    fn zero(&self) -> Value {
        match self {
            Model::Finite(a) => Value::Index(a.zero()),
            Model::Dyadic(m) => Value::Dyadic(m.zero()),
            Model::Rational(m) => Value::Rational(m.zero()),
        }
    }

    fn add(&self, x: &Value, y: &Value) -> Value {
        dispatch2!(self, x, y, add)
    }

    fn imp(&self, x: &Value, y: &Value) -> Value {
        dispatch2!(self, x, y, imp)
    }

    fn half(&self, x: &Value) -> Option<Value> {
        match (self, x) {
            (Model::Finite(a), Value::Index(x)) => a.half(x).map(Value::Index),
            (Model::Dyadic(m), Value::Dyadic(x)) => m.half(x).map(Value::Dyadic),
            (Model::Rational(m), Value::Rational(x)) => m.half(x).map(Value::Rational),
            _ => mismatch(),
        }
    }

    fn has_half(&self) -> bool {
        match self {
            Model::Finite(a) => a.has_half(),
            _ => true,
        }
    }

    fn one(&self) -> Option<Value> {
        match self {
            Model::Finite(a) => a.one().map(Value::Index),
            Model::Dyadic(m) => m.one().map(Value::Dyadic),
            Model::Rational(m) => m.one().map(Value::Rational),
        }
    }

    fn geq(&self, x: &Value, y: &Value) -> bool {
        match (self, x, y) {
            (Model::Finite(a), Value::Index(x), Value::Index(y)) => a.geq(x, y),
            (Model::Dyadic(m), Value::Dyadic(x), Value::Dyadic(y)) => m.geq(x, y),
            (Model::Rational(m), Value::Rational(x), Value::Rational(y)) => m.geq(x, y),
            _ => mismatch(),
        }
    }

    fn elements(&self) -> Option<Vec<Value>> {
        match self {
            Model::Finite(a) => Some((0..a.size).map(Value::Index).collect()),
            _ => None,
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Value {
        match self {
            Model::Finite(a) => Value::Index(a.sample(rng)),
            Model::Dyadic(m) => Value::Dyadic(m.sample(rng)),
            Model::Rational(m) => Value::Rational(m.sample(rng)),
        }
    }

    fn show(&self, x: &Value) -> String {
        x.to_string()
    }
}
