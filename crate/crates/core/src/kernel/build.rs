//! Proof constructors that compute conclusions. They panic when the premises
//! have the wrong shape, so callers validate user input first.

use super::{Proof, Rule, Schema};
use crate::syntax::{multiset_minus, multiset_union, Formula, Sequent};

pub fn axiom(schema: Schema, conclusion: Sequent) -> Proof {
    debug_assert!(super::match_axiom(&conclusion, schema), "{schema}: {conclusion}");
    Proof::Axiom { schema, conclusion }
}

/// `Γ, A ⊢ A`.
pub fn asm(context: Vec<Formula>, a: Formula) -> Proof {
    let mut ante = context;
    ante.push(a.clone());
    axiom(Schema::Asm, Sequent::new(ante, a))
}

/// From `Γ, A ⊢ B` infer `Γ ⊢ A ⊸ B`.
pub fn imp_i(p: Proof, a: &Formula) -> Proof {
    let c = p.conclusion().clone();
    let gamma = multiset_minus(c.antecedent(), std::slice::from_ref(a))
        .expect("discharged formula is not an assumption");
    Proof::Rule {
        rule: Rule::ImpI,
        conclusion: Sequent::new(gamma, Formula::imp(a.clone(), c.succedent().clone())),
        premises: vec![p],
    }
}

/// From `Γ ⊢ A` and `Δ ⊢ A ⊸ B` infer `Γ, Δ ⊢ B`.
pub fn imp_e(minor: Proof, major: Proof) -> Proof {
    let (g, d) = (minor.conclusion(), major.conclusion());
    let Formula::Imp(a, b) = d.succedent() else {
        panic!("major premise is not an implication");
    };
    assert_eq!(a.as_ref(), g.succedent(), "antecedent mismatch");
    let conclusion = Sequent::new(multiset_union(g.antecedent(), d.antecedent()), (**b).clone());
    Proof::Rule {
        rule: Rule::ImpE,
        premises: vec![minor, major],
        conclusion,
    }
}

/// From `Γ ⊢ A` and `Δ ⊢ B` infer `Γ, Δ ⊢ A ⊗ B`.
pub fn conj_i(left: Proof, right: Proof) -> Proof {
    let (g, d) = (left.conclusion(), right.conclusion());
    let conclusion = Sequent::new(
        multiset_union(g.antecedent(), d.antecedent()),
        Formula::conj(g.succedent().clone(), d.succedent().clone()),
    );
    Proof::Rule {
        rule: Rule::ConjI,
        premises: vec![left, right],
        conclusion,
    }
}

/// From `Γ ⊢ A ⊗ B` and `Δ, A, B ⊢ C` infer `Γ, Δ ⊢ C`.
pub fn conj_e(pair: Proof, body: Proof) -> Proof {
    let (g, d) = (pair.conclusion(), body.conclusion());
    let Formula::Conj(a, b) = g.succedent() else {
        panic!("first premise is not a conjunction");
    };
    let delta = multiset_minus(d.antecedent(), &[(**a).clone(), (**b).clone()])
        .expect("body does not assume both conjuncts");
    let conclusion = Sequent::new(multiset_union(g.antecedent(), &delta), d.succedent().clone());
    Proof::Rule {
        rule: Rule::ConjE,
        premises: vec![pair, body],
        conclusion,
    }
}

/// From `Γ ⊢ A` and `Δ, A ⊢ B` infer `Γ, Δ ⊢ B`.
pub fn cut(p: Proof, q: Proof, a: &Formula) -> Proof {
    imp_e(p, imp_i(q, a))
}
