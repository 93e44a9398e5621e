//! From `LLu` proofs to equational chains. A proof of `B1, …, Bm ⊢ A`
//! becomes a chain from `γ → a` (or from `a` when `m = 0`) down to `0`,
//! where `γ = [B1] + … + [Bm]`. Each axiom and rule contributes the steps
//! of its case; hypotheses are spliced in by replaying the premise's chain
//! backwards inside a summand that starts out as `0`.

use thiserror::Error;

use super::chain::{apply_equation, Direction, EqChain, EqStep, Equation, Justification, Subst};
use super::{ac_normalize, translate_formula, AlgTerm};
use crate::kernel::{axiom_instance, check_proof, LogicId, Proof, Rule, Schema};
use crate::syntax::{Formula, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("{0} is not an axiom of LLu")]
    UnsupportedAxiom(Schema),
    #[error("proof does not check in LLu: {0}")]
    NotChecked(String),
    #[error("internal: no position for {eq} reaching `{to}`")]
    Internal { eq: &'static str, to: String },
}

fn tr(f: &Formula) -> AlgTerm {
    translate_formula(f).expect("LLu formulas translate")
}

fn sum(items: impl IntoIterator<Item = AlgTerm>) -> AlgTerm {
    AlgTerm::sum(items)
}

fn imp(a: AlgTerm, b: AlgTerm) -> AlgTerm {
    ac_normalize(&AlgTerm::imp(a, b))
}

fn subst(pairs: &[(&str, &AlgTerm)]) -> Subst {
    pairs.iter().map(|(k, v)| (k.to_string(), ac_normalize(v))).collect()
}

/// The term a chain for `s` starts from.
pub fn sequent_term(s: &Sequent) -> AlgTerm {
    let a = tr(s.succedent());
    if s.antecedent().is_empty() {
        a
    } else {
        imp(sum(s.antecedent().iter().map(tr)), a)
    }
}

struct Builder {
    start: AlgTerm,
    cur: AlgTerm,
    steps: Vec<EqStep>,
}

impl Builder {
    fn new(start: AlgTerm) -> Self {
        let start = ac_normalize(&start);
        Builder {
            cur: start.clone(),
            start,
            steps: vec![],
        }
    }

    /// Records the step to `to`, finding a position where the instance
    /// produces it.
    fn step(&mut self, to: AlgTerm, eq: Equation, direction: Direction, s: Subst) -> Result<(), TranslateError> {
        let to = ac_normalize(&to);
        let position = self
            .cur
            .positions()
            .into_iter()
            .find(|p| apply_equation(&self.cur, p, eq, direction, &s).as_ref() == Some(&to))
            .ok_or_else(|| TranslateError::Internal {
                eq: eq.name(),
                to: to.to_string(),
            })?;
        self.steps.push(EqStep {
            to: to.clone(),
            justification: Justification::Equation {
                eq,
                position,
                direction,
                subst: s,
            },
        });
        self.cur = to;
        Ok(())
    }

    fn replay(&mut self, to: AlgTerm, j: &Justification, reverse: bool) -> Result<(), TranslateError> {
        match j {
            Justification::Rearrange => {
                let to = ac_normalize(&to);
                self.steps.push(EqStep {
                    to: to.clone(),
                    justification: Justification::Rearrange,
                });
                self.cur = to;
                Ok(())
            }
            Justification::Equation {
                eq, direction, subst, ..
            } => {
                let d = if reverse { direction.flip() } else { *direction };
                self.step(to, *eq, d, subst.clone())
            }
        }
    }

    /// Runs `c` inside the context `ctx`, which must currently hold its start.
    fn lift(&mut self, c: &EqChain, ctx: impl Fn(AlgTerm) -> AlgTerm) -> Result<(), TranslateError> {
        debug_assert_eq!(ac_normalize(&ctx(c.start.clone())), self.cur);
        for s in &c.steps {
            self.replay(ctx(s.to.clone()), &s.justification, false)?;
        }
        Ok(())
    }

    /// Runs `c` backwards inside `ctx`, turning the `0` it ends at into the
    /// term it starts from.
    fn lift_rev(&mut self, c: &EqChain, ctx: impl Fn(AlgTerm) -> AlgTerm) -> Result<(), TranslateError> {
        debug_assert_eq!(ac_normalize(&ctx(AlgTerm::Zero)), self.cur);
        let terms = c.terms();
        for (i, s) in c.steps.iter().enumerate().rev() {
            self.replay(ctx(terms[i].clone()), &s.justification, true)?;
        }
        Ok(())
    }

    fn finish(self) -> EqChain {
        EqChain {
            start: self.start,
            steps: self.steps,
        }
    }
}

/// Translates a proof that checks in `LLu` into a chain ending at `0`.
pub fn translate_proof(p: &Proof) -> Result<EqChain, TranslateError> {
    if let Some(s) = p.schemas().into_iter().find(|s| !LogicId::LLu.has(*s)) {
        return Err(TranslateError::UnsupportedAxiom(s));
    }
    let report = check_proof(p, LogicId::LLu);
    if let Some(f) = report.failures.first() {
        return Err(TranslateError::NotChecked(format!("{:?}: {}", f.path, f.reason)));
    }
    go(p)
}

fn go(p: &Proof) -> Result<EqChain, TranslateError> {
    let concl = p.conclusion();
    let start = sequent_term(concl);
    let mut b = Builder::new(start);
    match p {
        Proof::Axiom { schema, conclusion } => {
            let inst = axiom_instance(conclusion, *schema).expect("checked axiom");
            let g = sum(inst.residual.iter().map(tr));
            let a = tr(&inst.a);
            match schema {
                Schema::Asm if inst.residual.is_empty() => {
                    b.step(AlgTerm::Zero, Equation::Eq1, Direction::L2R, subst(&[("x", &a)]))?;
                }
                Schema::Asm => {
                    b.step(
                        imp(g.clone(), imp(a.clone(), a.clone())),
                        Equation::Eq4,
                        Direction::L2R,
                        subst(&[("x", &g), ("y", &a), ("z", &a)]),
                    )?;
                    b.step(imp(g.clone(), AlgTerm::Zero), Equation::Eq1, Direction::L2R, subst(&[("x", &a)]))?;
                    b.step(AlgTerm::Zero, Equation::Eq2, Direction::L2R, subst(&[("x", &g)]))?;
                }
                Schema::Cwc => {
                    let bb = tr(inst.b.as_ref().expect("cwc has two parameters"));
                    let c = sum([bb.clone(), imp(bb.clone(), a.clone())]);
                    b.step(
                        imp(sum([g.clone(), c.clone()]), c.clone()),
                        Equation::Eq5,
                        Direction::L2R,
                        subst(&[("x", &a), ("y", &bb)]),
                    )?;
                    b.step(
                        AlgTerm::imp(g.clone(), imp(c.clone(), c.clone())),
                        Equation::Eq4,
                        Direction::L2R,
                        subst(&[("x", &g), ("y", &c), ("z", &c)]),
                    )?;
                    b.step(
                        AlgTerm::imp(g.clone(), AlgTerm::Zero),
                        Equation::Eq1,
                        Direction::L2R,
                        subst(&[("x", &c)]),
                    )?;
                    b.step(AlgTerm::Zero, Equation::Eq2, Direction::L2R, subst(&[("x", &g)]))?;
                }
                s => return Err(TranslateError::UnsupportedAxiom(*s)),
            }
        }
        Proof::Rule { rule, premises, .. } => {
            let subs = premises.iter().map(go).collect::<Result<Vec<_>, _>>()?;
            match rule {
                Rule::ImpI => imp_intro(&mut b, p, &subs[0])?,
                Rule::ImpE => imp_elim(&mut b, premises, &subs)?,
                Rule::ConjI => conj_intro(&mut b, premises, &subs)?,
                Rule::ConjE => conj_elim(&mut b, premises, &subs)?,
            }
        }
    }
    Ok(b.finish())
}

fn parts(s: &Sequent) -> (Vec<AlgTerm>, AlgTerm) {
    (s.antecedent().iter().map(tr).collect(), tr(s.succedent()))
}

/// `γ → a → b = γ + a → b`, then the premise's chain.
fn imp_intro(b: &mut Builder, p: &Proof, sub: &EqChain) -> Result<(), TranslateError> {
    let (gamma, ab) = parts(p.conclusion());
    if !gamma.is_empty() {
        let AlgTerm::Imp(a, bb) = &ab else { unreachable!() };
        let g = sum(gamma.clone());
        b.step(
            imp(sum(gamma.iter().cloned().chain([(**a).clone()])), (**bb).clone()),
            Equation::Eq4,
            Direction::R2L,
            subst(&[("x", &g), ("y", a), ("z", bb)]),
        )?;
    }
    b.lift(sub, |t| t)
}

/// With empty antecedent the chain first rewrites `a` as `0 → a`.
fn open_antecedent(b: &mut Builder, empty: bool, succ: &AlgTerm) -> Result<(), TranslateError> {
    if empty {
        b.step(
            AlgTerm::imp(AlgTerm::Zero, succ.clone()),
            Equation::Eq3,
            Direction::R2L,
            subst(&[("x", succ)]),
        )?;
    }
    Ok(())
}

fn imp_elim(b: &mut Builder, premises: &[Proof], subs: &[EqChain]) -> Result<(), TranslateError> {
    let (gamma, a) = parts(premises[0].conclusion());
    let (delta, a_b) = parts(premises[1].conclusion());
    let AlgTerm::Imp(_, bb) = &a_b else { unreachable!() };
    let bb = (**bb).clone();
    open_antecedent(b, gamma.is_empty() && delta.is_empty(), &bb)?;
    let (g, d) = (sum(gamma.clone()), sum(delta.clone()));

    let base: Vec<AlgTerm> = gamma.iter().chain(&delta).cloned().collect();
    b.lift_rev(&subs[0], |h| imp(sum(base.iter().cloned().chain([h])), bb.clone()))?;
    let mut rest = vec![];
    if !gamma.is_empty() {
        rest.push(imp(a.clone(), g.clone()));
        b.step(
            imp(sum(rest.iter().chain(&delta).cloned().chain([a.clone()])), bb.clone()),
            Equation::Eq5,
            Direction::L2R,
            subst(&[("x", &g), ("y", &a)]),
        )?;
    }
    let base: Vec<AlgTerm> = rest.iter().chain(&delta).cloned().chain([a.clone()]).collect();
    b.lift_rev(&subs[1], |h| imp(sum(base.iter().cloned().chain([h])), bb.clone()))?;
    let e = sum(delta.iter().cloned().chain([a.clone()]));
    if !delta.is_empty() {
        b.step(
            imp(sum(base.iter().cloned().chain([imp(e.clone(), bb.clone())])), bb.clone()),
            Equation::Eq4,
            Direction::R2L,
            subst(&[("x", &d), ("y", &a), ("z", &bb)]),
        )?;
    }
    rest.push(imp(bb.clone(), e.clone()));
    b.step(
        imp(sum(rest.iter().cloned().chain([bb.clone()])), bb.clone()),
        Equation::Eq5,
        Direction::L2R,
        subst(&[("x", &e), ("y", &bb)]),
    )?;
    close(b, &rest, &bb)
}

/// From `R + c → c` to `0` by Eq4, Eq1 and Eq2 (or Eq1 alone when `R` is
/// empty).
fn close(b: &mut Builder, rest: &[AlgTerm], c: &AlgTerm) -> Result<(), TranslateError> {
    if rest.is_empty() {
        return b.step(AlgTerm::Zero, Equation::Eq1, Direction::L2R, subst(&[("x", c)]));
    }
    let r = sum(rest.to_vec());
    b.step(
        AlgTerm::imp(r.clone(), imp(c.clone(), c.clone())),
        Equation::Eq4,
        Direction::L2R,
        subst(&[("x", &r), ("y", c), ("z", c)]),
    )?;
    b.step(AlgTerm::imp(r.clone(), AlgTerm::Zero), Equation::Eq1, Direction::L2R, subst(&[("x", c)]))?;
    b.step(AlgTerm::Zero, Equation::Eq2, Direction::L2R, subst(&[("x", &r)]))
}

fn conj_intro(b: &mut Builder, premises: &[Proof], subs: &[EqChain]) -> Result<(), TranslateError> {
    let (gamma, a) = parts(premises[0].conclusion());
    let (delta, bb) = parts(premises[1].conclusion());
    let c = sum([a.clone(), bb.clone()]);
    open_antecedent(b, gamma.is_empty() && delta.is_empty(), &c)?;
    let t1 = subs[0].start.clone();
    let base: Vec<AlgTerm> = gamma.iter().chain(&delta).cloned().collect();
    b.lift_rev(&subs[0], |h| imp(sum(base.iter().cloned().chain([h])), c.clone()))?;
    b.lift_rev(&subs[1], |h| imp(sum(base.iter().cloned().chain([t1.clone(), h])), c.clone()))?;
    let mut rest = vec![];
    let mut pending: Vec<AlgTerm> = vec![t1, subs[1].start.clone()];
    for (ctx, x, y, slot) in [(&gamma, sum(gamma.clone()), &a, 0), (&delta, sum(delta.clone()), &bb, 1)] {
        if ctx.is_empty() {
            continue;
        }
        rest.push(imp(y.clone(), x.clone()));
        pending[slot] = y.clone();
        let remaining: Vec<AlgTerm> = if slot == 0 {
            delta.clone()
        } else {
            vec![]
        };
        b.step(
            imp(
                sum(rest.iter().cloned().chain(remaining).chain(pending.iter().cloned())),
                c.clone(),
            ),
            Equation::Eq5,
            Direction::L2R,
            subst(&[("x", &x), ("y", y)]),
        )?;
    }
    close(b, &rest, &c)
}

fn conj_elim(b: &mut Builder, premises: &[Proof], subs: &[EqChain]) -> Result<(), TranslateError> {
    let (gamma, ab) = parts(premises[0].conclusion());
    let (_, c) = parts(premises[1].conclusion());
    let inner = premises[1].conclusion().antecedent().len() - 2;
    let all = premises[1].conclusion().antecedent();
    let Formula::Conj(fa, fb) = premises[0].conclusion().succedent() else { unreachable!() };
    let delta: Vec<AlgTerm> = crate::syntax::multiset_minus(all, &[(**fa).clone(), (**fb).clone()])
        .expect("checked conjunction elimination")
        .iter()
        .map(tr)
        .collect();
    debug_assert_eq!(delta.len(), inner);
    open_antecedent(b, gamma.is_empty() && delta.is_empty(), &c)?;
    let base: Vec<AlgTerm> = gamma.iter().chain(&delta).cloned().collect();
    b.lift_rev(&subs[0], |h| imp(sum(base.iter().cloned().chain([h])), c.clone()))?;
    if gamma.is_empty() {
        return b.lift(&subs[1], |t| t);
    }
    let g = sum(gamma.clone());
    let back = imp(ab.clone(), g.clone());
    b.step(
        imp(sum(delta.iter().cloned().chain([ab.clone(), back.clone()])), c.clone()),
        Equation::Eq5,
        Direction::L2R,
        subst(&[("x", &g), ("y", &ab)]),
    )?;
    let body = sum(delta.iter().cloned().chain([ab.clone()]));
    b.step(
        AlgTerm::imp(back.clone(), imp(body.clone(), c.clone())),
        Equation::Eq4,
        Direction::L2R,
        subst(&[("x", &back), ("y", &body), ("z", &c)]),
    )?;
    b.lift(&subs[1], |h| AlgTerm::imp(back.clone(), h))?;
    b.step(AlgTerm::Zero, Equation::Eq2, Direction::L2R, subst(&[("x", &back)]))
}
