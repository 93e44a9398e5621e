//! Moving a proof up the lattice of logics.
//!
//! Inclusion of axiom sets is not monotone along every arrow: `LLc` lacks
//! the DNE and CWC schemata of its predecessors, the idempotent logics lack
//! CWC and `BL` lacks CSD. Those schemata are derivable in the larger logic,
//! so transfer replaces each missing leaf by a derivation of the same
//! sequent from the target's own axioms.

use thiserror::Error;

use super::build::{asm, axiom, conj_e, conj_i, imp_e, imp_i};
use super::{axiom_instance, weaken, LogicId, Proof, Schema};
use crate::syntax::{Formula, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("{schema} has no derivation in {target}")]
    NoDerivation { schema: Schema, target: LogicId },
    #[error("proof uses connectives outside the language of {0}")]
    Language(LogicId),
}

/// Rewrites `p` so that it checks in `target`, expanding axiom leaves that
/// `target` does not have. Fails when some leaf is not derivable there.
pub fn transfer(p: &Proof, target: LogicId) -> Result<Proof, TransferError> {
    if !p.language().within(target.language()) {
        return Err(TransferError::Language(target));
    }
    expand(p, target)
}

fn expand(p: &Proof, target: LogicId) -> Result<Proof, TransferError> {
    match p {
        Proof::Axiom { schema, conclusion } => {
            if target.has(*schema) {
                return Ok(p.clone());
            }
            let no = || TransferError::NoDerivation {
                schema: *schema,
                target,
            };
            let inst = axiom_instance(conclusion, *schema).ok_or_else(no)?;
            let core = derive(*schema, &inst.a, inst.b.as_ref(), target).ok_or_else(no)?;
            Ok(inst.residual.into_iter().fold(core, |q, f| weaken(&q, f)))
        }
        Proof::Rule {
            rule,
            premises,
            conclusion,
        } => Ok(Proof::Rule {
            rule: *rule,
            premises: premises
                .iter()
                .map(|q| expand(q, target))
                .collect::<Result<_, _>>()?,
            conclusion: conclusion.clone(),
        }),
    }
}

/// A derivation of the bare instance of `schema` in `target`.
fn derive(schema: Schema, a: &Formula, b: Option<&Formula>, target: LogicId) -> Option<Proof> {
    let has = |s: Schema| target.has(s);
    match schema {
        Schema::Dne if has(Schema::Dne) => Some(dne_leaf(a)),
        Schema::Dne if has(Schema::Csd) && has(Schema::Efq) => Some(dne_from_csd(a)),
        Schema::Cwc if has(Schema::Con) => Some(cwc_from_con(a, b?)),
        Schema::Cwc if has(Schema::Csd) && has(Schema::Efq) => Some(cwc_from_csd(a, b?)),
        Schema::Csd if has(Schema::Con) && has(Schema::Efq) && has(Schema::Dne) => {
            Some(csd_from_con(a, b?))
        }
        _ => None,
    }
}

fn neg(a: &Formula) -> Formula {
    Formula::neg(a.clone())
}

fn dne_leaf(a: &Formula) -> Proof {
    axiom(Schema::Dne, Sequent::new([neg(&neg(a))], a.clone()))
}

/// `A^⊥⊥ ⊢ A` in whichever way `target` allows.
fn dne_in(a: &Formula, target: LogicId) -> Proof {
    if target.has(Schema::Dne) {
        dne_leaf(a)
    } else {
        dne_from_csd(a)
    }
}

/// From `Γ ⊢ A^⊥⊥` infer `Γ ⊢ A`.
fn by_dne(p: Proof, a: &Formula, target: LogicId) -> Proof {
    imp_e(p, imp_i(dne_in(a, target), &neg(&neg(a))))
}

/// `A^⊥⊥ ⊢ A` from CSD at `(A, 1)` and `1 ⊢ A`.
fn dne_from_csd(a: &Formula) -> Proof {
    let one = Formula::One;
    let csd = axiom(
        Schema::Csd,
        Sequent::new(
            [Formula::imp(Formula::imp(a.clone(), one.clone()), one.clone())],
            Formula::imp(Formula::imp(one.clone(), a.clone()), a.clone()),
        ),
    );
    let efq = imp_i(axiom(Schema::Efq, Sequent::new([one.clone()], a.clone())), &one);
    imp_e(efq, csd)
}

/// `A ⊗ (A ⊸ B) ⊢ B ⊗ (B ⊸ A)` using contraction on `A`.
fn cwc_from_con(a: &Formula, b: &Formula) -> Proof {
    let ab = Formula::imp(a.clone(), b.clone());
    let x = Formula::conj(a.clone(), ab.clone());
    let gives_b = imp_e(asm(vec![], a.clone()), asm(vec![], ab));
    let b_to_a = imp_i(asm(vec![b.clone()], a.clone()), b);
    let body = conj_i(gives_b, b_to_a);
    let con = axiom(
        Schema::Con,
        Sequent::new([a.clone()], Formula::conj(a.clone(), a.clone())),
    );
    conj_e(asm(vec![], x), conj_e(con, body))
}

/// `A ⊸ B ⊢ B^⊥ ⊸ A^⊥`.
fn contrapose(a: &Formula, b: &Formula) -> Proof {
    let ab = Formula::imp(a.clone(), b.clone());
    let gives_b = imp_e(asm(vec![], a.clone()), asm(vec![], ab));
    let absurd = imp_e(gives_b, asm(vec![], neg(b)));
    imp_i(imp_i(absurd, a), &neg(b))
}

/// `A ⊗ (A ⊸ B) ⊢ B ⊗ (B ⊸ A)` in the involutive hoop logics: the negated
/// goal curries to `(A^⊥ ⊸ B^⊥) ⊸ B^⊥`, which CSD turns into
/// `(B^⊥ ⊸ A^⊥) ⊸ A^⊥`, contradicting `A` and `A ⊸ B`.
fn cwc_from_csd(a: &Formula, b: &Formula) -> Proof {
    let target = LogicId::LLc;
    let ab = Formula::imp(a.clone(), b.clone());
    let ba = Formula::imp(b.clone(), a.clone());
    let c = Formula::conj(b.clone(), ba.clone());
    let nc = neg(&c);
    let (na, nb) = (neg(a), neg(b));
    let na_nb = Formula::imp(na.clone(), nb.clone());
    let nb_na = Formula::imp(nb.clone(), na.clone());

    // C^⊥ ⊢ (B ⊸ A) ⊸ B^⊥
    let absurd = imp_e(
        conj_i(asm(vec![], b.clone()), asm(vec![], ba.clone())),
        asm(vec![], nc.clone()),
    );
    let nc_curried = imp_i(imp_i(absurd, b), &ba);

    // A^⊥ ⊸ B^⊥ ⊢ B ⊸ A
    let to_nb = imp_e(asm(vec![], na.clone()), asm(vec![], na_nb.clone()));
    let absurd = imp_e(asm(vec![], b.clone()), to_nb);
    let nna = imp_i(absurd, &na);
    let back = imp_i(by_dne(nna, a, target), b);

    // C^⊥ ⊢ (A^⊥ ⊸ B^⊥) ⊸ B^⊥
    let step_a = imp_i(imp_e(back, nc_curried), &na_nb);
    let csd = axiom(
        Schema::Csd,
        Sequent::new(
            [Formula::imp(na_nb.clone(), nb.clone())],
            Formula::imp(nb_na.clone(), na.clone()),
        ),
    );
    let via_csd = imp_e(step_a, imp_i(csd, &Formula::imp(na_nb, nb.clone())));
    let gives_na = imp_e(contrapose(a, b), via_csd);
    let absurd = imp_e(asm(vec![], a.clone()), gives_na);
    let nnc = imp_i(absurd, &nc);
    let body = by_dne(nnc, &c, target);
    conj_e(asm(vec![], Formula::conj(a.clone(), ab)), body)
}

/// `(A ⊸ B) ⊸ B ⊢ (B ⊸ A) ⊸ A` classically, using two copies of `A^⊥`.
fn csd_from_con(a: &Formula, b: &Formula) -> Proof {
    let target = LogicId::BL;
    let na = neg(a);
    let ab = Formula::imp(a.clone(), b.clone());
    let ba = Formula::imp(b.clone(), a.clone());
    let abb = Formula::imp(ab.clone(), b.clone());

    let absurd = imp_e(asm(vec![], a.clone()), asm(vec![], na.clone()));
    let efq = imp_i(axiom(Schema::Efq, Sequent::new([Formula::One], b.clone())), &Formula::One);
    let na_ab = imp_i(imp_e(absurd, efq), a);
    let gives_b = imp_e(na_ab, asm(vec![], abb));
    let gives_a = imp_e(gives_b, asm(vec![], ba.clone()));
    let twice = imp_e(gives_a, asm(vec![], na.clone()));
    let con = axiom(
        Schema::Con,
        Sequent::new([na.clone()], Formula::conj(na.clone(), na.clone())),
    );
    let once = conj_e(con, twice);
    let d = by_dne(imp_i(once, &na), a, target);
    imp_i(d, &ba)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::check_proof;
    use crate::syntax::{parse_formula, parse_sequent};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn derived_schemata_check() {
        let (a, b) = (f("P -o Q"), f("R * P"));
        let cases = [
            (dne_from_csd(&a), LogicId::LLc),
            (cwc_from_con(&a, &b), LogicId::ILu),
            (cwc_from_csd(&a, &b), LogicId::LLc),
            (csd_from_con(&a, &b), LogicId::BL),
        ];
        for (p, logic) in &cases {
            let r = check_proof(p, *logic);
            assert!(r.ok, "{logic}: {:?}", r.failures);
        }
        assert_eq!(
            cases[2].0.conclusion(),
            &parse_sequent("(P -o Q) * ((P -o Q) -o R * P) |- (R * P) * (R * P -o (P -o Q))").unwrap()
        );
        assert_eq!(
            cases[3].0.conclusion(),
            &parse_sequent("((P -o Q) -o R * P) -o R * P |- (R * P -o (P -o Q)) -o (P -o Q)").unwrap()
        );
    }

    #[test]
    fn transfer_expands_missing_leaves() {
        let leaf = axiom(Schema::Dne, parse_sequent("Q, P^^ |- P").unwrap());
        for t in [LogicId::LLc, LogicId::CLc, LogicId::BL, LogicId::ALc] {
            let moved = transfer(&leaf, t).unwrap();
            assert_eq!(moved.conclusion(), leaf.conclusion());
            assert!(check_proof(&moved, t).ok, "{t}");
        }
        assert_eq!(
            transfer(&leaf, LogicId::IL),
            Err(TransferError::NoDerivation {
                schema: Schema::Dne,
                target: LogicId::IL
            })
        );
        let cwc = axiom(Schema::Cwc, parse_sequent("R, P * (P -o Q) |- Q * (Q -o P)").unwrap());
        for t in [LogicId::ILu, LogicId::IL, LogicId::BL, LogicId::LLc, LogicId::CLc] {
            assert!(check_proof(&transfer(&cwc, t).unwrap(), t).ok, "{t}");
        }
        assert!(transfer(&cwc, LogicId::ALc).is_err());
        assert_eq!(transfer(&cwc, LogicId::CLu).unwrap(), cwc);
    }

    #[test]
    fn transfer_respects_language() {
        let leaf = axiom(Schema::Efq, parse_sequent("1 |- P").unwrap());
        assert_eq!(transfer(&leaf, LogicId::LLu), Err(TransferError::Language(LogicId::LLu)));
    }
}
