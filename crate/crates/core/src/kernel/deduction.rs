//! Conversions between the three equivalent shapes of a theorem:
//! `A1, …, Am ⊢ B`, `⊢ A1 ⊸ … ⊸ Am ⊸ B` and `⊢ A1 ⊗ … ⊗ Am ⊸ B`.

use thiserror::Error;

use super::build::{asm, conj_e, conj_i, imp_e, imp_i};
use super::Proof;
use crate::syntax::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeductionTarget {
    Uncurried,
    Curried,
    ConjForm,
}

impl DeductionTarget {
    pub fn parse(s: &str) -> Option<DeductionTarget> {
        match s {
            "uncurried" => Some(DeductionTarget::Uncurried),
            "curried" => Some(DeductionTarget::Curried),
            "conj" | "conj-form" => Some(DeductionTarget::ConjForm),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot uncurry `{0}`: the succedent is not an implication")]
pub struct ShapeError(pub String);

/// Converts `p` to the requested shape. Proofs with an empty antecedent are
/// read as curried, except that a single conjunctive premise
/// `⊢ A1 ⊗ … ⊗ Am ⊸ B` is read as the conjunction form. The result checks in
/// every logic the input checks in: only `ASM` leaves and the structural
/// rules are added.
pub fn apply_deduction(p: &Proof, target: DeductionTarget) -> Result<Proof, ShapeError> {
    let c = p.conclusion();
    if c.antecedent().is_empty() {
        let Formula::Imp(lhs, rest) = c.succedent() else {
            return match target {
                DeductionTarget::Uncurried => Err(ShapeError(c.to_string())),
                _ => Ok(p.clone()),
            };
        };
        let conj_form = matches!(lhs.as_ref(), Formula::Conj(..)) && !matches!(rest.as_ref(), Formula::Imp(..));
        match (target, conj_form) {
            (DeductionTarget::Curried, false) | (DeductionTarget::ConjForm, true) => Ok(p.clone()),
            _ => {
                let flat = uncurry(p, conj_form);
                apply_deduction(&flat, target)
            }
        }
    } else {
        let ante = c.antecedent().to_vec();
        Ok(match target {
            DeductionTarget::Uncurried => p.clone(),
            DeductionTarget::Curried => ante.iter().rev().fold(p.clone(), imp_i),
            DeductionTarget::ConjForm => {
                let k = Formula::conj_all(ante.iter().cloned());
                imp_i(collapse(p.clone(), &ante, &[]), &k)
            }
        })
    }
}

/// From `⊢ A1 ⊸ … ⊸ Am ⊸ B` (or its conjunction form) to `A1, …, Am ⊢ B`.
fn uncurry(p: &Proof, conj_form: bool) -> Proof {
    let Formula::Imp(lhs, _) = p.conclusion().succedent() else {
        unreachable!()
    };
    if conj_form {
        return imp_e(split(lhs), p.clone());
    }
    let mut q = p.clone();
    while let Formula::Imp(a, _) = q.conclusion().succedent().clone() {
        q = imp_e(asm(vec![], (*a).clone()), q);
    }
    q
}

/// `A1, …, Am ⊢ K` for a conjunction `K` of the `Ai`, by `ConjI` along its
/// tree.
fn split(k: &Formula) -> Proof {
    match k {
        Formula::Conj(a, b) => conj_i(split(a), split(b)),
        _ => asm(vec![], k.clone()),
    }
}

/// From a proof of `items, rest ⊢ B`, a proof of `K(items), rest ⊢ B` where
/// `K` is the left-nested conjunction built by `Formula::conj_all`.
fn collapse(p: Proof, items: &[Formula], rest: &[Formula]) -> Proof {
    if items.len() <= 1 {
        return p;
    }
    let (init, last) = items.split_at(items.len() - 1);
    let mut rest2 = rest.to_vec();
    rest2.push(last[0].clone());
    let q = collapse(p, init, &rest2);
    let k = Formula::conj_all(items.iter().cloned());
    conj_e(asm(vec![], k), q)
}
