//! Models of the logics: finite operation tables and dense exact-arithmetic
//! models, together with law checking, evaluation and countermodel search.
//!
//! Notation is additive and ordered by logical strength: `0` is truth,
//! `x ≥ y` abbreviates `x → y = 0`, and the annihilator `1` (when present)
//! is falsehood.

mod classes;
mod constructions;
mod dense;
mod enumerate;
mod finite;
mod laws;
mod model;
mod search;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::syntax::{Formula, Sequent};

pub use classes::AlgebraClass;
pub use constructions::{
    cap_at, dyadic_scale, embed_poset, ordinal_sum, poset_image, OrdinalSum, Poset, Summand,
};
pub use dense::{DenseModel, Shape};
pub use enumerate::{
    canonical_form, enumerate_class, enumerate_hoops, enumerate_pocrims, exhaustive_coop_search,
    CoopSearchReport,
};
pub use finite::{FiniteAlgebra, TableError};
pub use laws::{check_laws, check_laws_subset, law_holds, Law, LawMode, LawOutcome, LawReport, LawStatus};
pub use model::{Model, ModelSpecError, Value};
pub use search::{search_countermodel, verify_countermodel, Countermodel, SearchError};

/// The signature `(0, +, →)` with optional halving and annihilator.
pub trait Algebra: Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn imp(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn half(&self, _x: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn has_half(&self) -> bool {
        false
    }

    fn one(&self) -> Option<Self::Elem> {
        None
    }

    /// `x ≥ y`, i.e. `x → y = 0`.
    fn geq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.imp(x, y) == self.zero()
    }

    /// The whole carrier, when it is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;

    fn show(&self, x: &Self::Elem) -> String;

    /// `¬x = x → 1`.
    fn neg(&self, x: &Self::Elem) -> Option<Self::Elem> {
        self.one().map(|o| self.imp(x, &o))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unsupported connective `{0}` in this model")]
    UnsupportedConnective(&'static str),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
}

pub type Assignment<E> = BTreeMap<String, E>;

pub fn eval_formula<A: Algebra>(
    f: &Formula,
    assignment: &Assignment<A::Elem>,
    model: &A,
) -> Result<A::Elem, EvalError> {
    Ok(match f {
        Formula::Zero => model.zero(),
        Formula::One => model.one().ok_or(EvalError::UnsupportedConnective("1"))?,
        Formula::Var(v) => assignment
            .get(v)
            .cloned()
            .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?,
        Formula::Conj(a, b) => {
            let x = eval_formula(a, assignment, model)?;
            let y = eval_formula(b, assignment, model)?;
            model.add(&x, &y)
        }
        Formula::Imp(a, b) => {
            let x = eval_formula(a, assignment, model)?;
            let y = eval_formula(b, assignment, model)?;
            model.imp(&x, &y)
        }
        Formula::Half(a) => {
            let x = eval_formula(a, assignment, model)?;
            model
                .half(&x)
                .ok_or(EvalError::UnsupportedConnective("/2"))?
        }
    })
}

/// `v(C1) + … + v(Cn) ≥ v(A)`.
pub fn check_sequent<A: Algebra>(
    s: &Sequent,
    assignment: &Assignment<A::Elem>,
    model: &A,
) -> Result<bool, EvalError> {
    let mut sum = model.zero();
    for c in s.antecedent() {
        let v = eval_formula(c, assignment, model)?;
        sum = model.add(&sum, &v);
    }
    let rhs = eval_formula(s.succedent(), assignment, model)?;
    Ok(model.geq(&sum, &rhs))
}

/// Whether the model interprets every connective occurring in `s`.
pub fn supports_sequent<A: Algebra>(s: &Sequent, model: &A) -> bool {
    let lang = s.language();
    (!lang.allows_one() || model.one().is_some()) && (!lang.allows_half() || model.has_half())
}

pub fn random_assignment<A: Algebra>(
    vars: impl IntoIterator<Item = String>,
    model: &A,
    rng: &mut ChaCha8Rng,
) -> Assignment<A::Elem> {
    vars.into_iter().map(|v| (v, model.sample(rng))).collect()
}

/// Checks `s` at `count` seeded random assignments; returns the first
/// falsifying assignment, if any.
pub fn sample_sequent<A: Algebra>(
    s: &Sequent,
    model: &A,
    count: usize,
    seed: u64,
) -> Result<Option<Assignment<A::Elem>>, EvalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = s.vars();
    for _ in 0..count {
        let asg = random_assignment(vars.iter().cloned(), model, &mut rng);
        if !check_sequent(s, &asg, model)? {
            return Ok(Some(asg));
        }
    }
    Ok(None)
}
