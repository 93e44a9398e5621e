use std::collections::{BTreeMap, BTreeSet};

use super::matrix::{Atom, Rel};
use crate::syntax::Formula;

/// `h1 ∧ … ∧ hk ⇒ c` with equations or inequations as atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornClause {
    pub hypotheses: Vec<Atom>,
    pub conclusion: Atom,
}

impl HornClause {
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.hypotheses.iter().chain(std::iter::once(&self.conclusion))
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for a in self.atoms() {
            a.lhs.collect_vars(&mut out);
            a.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn to_matrix(&self) -> super::Matrix {
        let concl = super::Matrix::Atom(self.conclusion.clone());
        self.hypotheses.iter().rev().fold(concl, |m, h| super::Matrix::implies(super::Matrix::Atom(h.clone()), m))
    }
}

struct Eliminator {
    used: BTreeSet<String>,
    fresh: BTreeMap<Formula, String>,
    hyps: Vec<Atom>,
    next: usize,
}

impl Eliminator {
    fn name(&mut self) -> String {
        loop {
            self.next += 1;
            let v = format!("v{}", self.next);
            if self.used.insert(v.clone()) {
                return v;
            }
        }
    }

    fn rewrite(&mut self, t: &Formula) -> Formula {
        match t {
            Formula::Zero | Formula::One | Formula::Var(_) => t.clone(),
            Formula::Conj(a, b) => Formula::conj(self.rewrite(a), self.rewrite(b)),
            Formula::Imp(a, b) => Formula::imp(self.rewrite(a), self.rewrite(b)),
            Formula::Half(a) => {
                let inner = self.rewrite(a);
                if let Some(v) = self.fresh.get(&inner) {
                    return Formula::var(v.clone());
                }
                let v = self.name();
                self.fresh.insert(inner.clone(), v.clone());
                let fv = Formula::var(v);
                self.hyps.push(Atom {
                    lhs: fv.clone(),
                    rel: Rel::Eq,
                    rhs: Formula::imp(fv.clone(), inner),
                });
                fv
            }
        }
    }
}

/// Replaces each distinct `t/2` (innermost first) by a fresh `v` and adds
/// the hypothesis `v = v → t`, which pins `v` to `t/2` in any coop.
pub fn eliminate_halving(c: &HornClause) -> HornClause {
    let mut e = Eliminator {
        used: c.vars(),
        fresh: BTreeMap::new(),
        hyps: vec![],
        next: 0,
    };
    let mut rw = |a: &Atom| Atom {
        lhs: e.rewrite(&a.lhs),
        rel: a.rel,
        rhs: e.rewrite(&a.rhs),
    };
    let old: Vec<Atom> = c.hypotheses.iter().map(&mut rw).collect();
    let conclusion = rw(&c.conclusion);
    let mut hypotheses = e.hyps;
    hypotheses.extend(old);
    HornClause { hypotheses, conclusion }
}
