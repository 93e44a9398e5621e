//! Decision procedure for universal sentences over the standard models:
//! terms compile to piecewise-linear functions and each case of the
//! negated matrix becomes a system of strict and non-strict rational
//! inequalities.
//!
//! `nonneg` stands for the linearly ordered cancellative coops and
//! `interval` for the bounded ones; a sentence holds in every Wajsberg coop
//! iff it holds in both.

mod compile;
mod halving;
pub mod linear;
mod matrix;

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

pub use compile::{compile_pl, compile_pl_over, Ambient, CompileError, PLTerm, Piece};
pub use halving::{eliminate_halving, HornClause};
pub use matrix::{parse_matrix, Atom, Matrix, MatrixParseError, Rel};

use crate::algebra::{eval_formula, Algebra, Assignment, DenseModel};
use crate::numeric::{fmt_rational, Scalar};
use crate::syntax::{Formula, Sequent};
use linear::{feasible, is_feasible, Constraint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Compile(#[from] CompileError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomWitness {
    pub atom: Atom,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub ambient: Ambient,
    pub assignment: BTreeMap<String, BigRational>,
    pub witnesses: Vec<AtomWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Countermodel(Countermodel),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            Verdict::Valid => None,
            Verdict::Countermodel(c) => Some(c),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Verdict::Valid => json!({ "verdict": "valid" }),
            Verdict::Countermodel(c) => json!({
                "verdict": "countermodel",
                "ambient": c.ambient.name(),
                "assignment": c.assignment.iter().map(|(k, v)| (k.clone(), fmt_rational(v))).collect::<BTreeMap<_, _>>(),
                "atoms": c.witnesses.iter().map(|w| json!({
                    "atom": w.atom.to_string(),
                    "lhs": fmt_rational(&w.lhs),
                    "rhs": fmt_rational(&w.rhs),
                })).collect::<Vec<_>>(),
            }),
        }
    }
}

fn model(ambient: Ambient) -> DenseModel<BigRational> {
    match ambient {
        Ambient::Nonneg => DenseModel::unbounded(),
        Ambient::Interval => DenseModel::capped(BigRational::from_int(1)),
    }
}

/// Direct evaluation of `t` in the ambient's standard model.
pub fn eval_exact(t: &Formula, ambient: Ambient, asg: &BTreeMap<String, BigRational>) -> Option<BigRational> {
    let asg: Assignment<BigRational> = asg.clone();
    eval_formula(t, &asg, &model(ambient)).ok()
}

impl Countermodel {
    /// Re-evaluates `m` at the assignment without the compiled form; true
    /// when the matrix fails there.
    pub fn refutes(&self, m: &Matrix) -> bool {
        let dm = model(self.ambient);
        let in_domain = self.assignment.values().all(|v| dm.contains(v));
        in_domain && m.eval(&dm, &self.assignment, &|a: &BigRational, b: &BigRational| a.cmp(b)) == Ok(false)
    }
}

/// For each atom, the ways it can hold: piece-pair guard plus the relation
/// on the difference.
fn alternatives(a: &Atom, ambient: Ambient, vars: &[String]) -> Result<Vec<Vec<Constraint>>, CompileError> {
    let l = compile_pl_over(&a.lhs, ambient, vars)?;
    let r = compile_pl_over(&a.rhs, ambient, vars)?;
    let n = vars.len();
    let domain = ambient.domain(n);
    let mut out = vec![];
    for p in &l.pieces {
        for q in &r.pieces {
            let mut guard: Vec<Constraint> = p.guard.iter().chain(&q.guard).cloned().collect();
            let mut probe = domain.clone();
            probe.extend(guard.iter().cloned());
            if !is_feasible(&probe, n) {
                continue;
            }
            let d = p.value.sub(&q.value);
            let rels: Vec<Vec<Constraint>> = match a.rel {
                Rel::Eq => vec![vec![Constraint::ge(d.clone()), Constraint::ge(d.neg())]],
                Rel::Ne => vec![vec![Constraint::gt(d.clone())], vec![Constraint::gt(d.neg())]],
                Rel::Le => vec![vec![Constraint::ge(d.neg())]],
                Rel::Lt => vec![vec![Constraint::gt(d.neg())]],
                Rel::Ge => vec![vec![Constraint::ge(d.clone())]],
                Rel::Gt => vec![vec![Constraint::gt(d.clone())]],
            };
            for extra in rels {
                let mut g = std::mem::take(&mut guard);
                guard = g.clone();
                g.extend(extra);
                out.push(g);
            }
        }
    }
    Ok(out)
}

fn search(alts: &[Vec<Vec<Constraint>>], acc: &mut Vec<Constraint>, n: usize) -> Option<Vec<BigRational>> {
    let Some((first, rest)) = alts.split_first() else {
        return feasible(acc, n);
    };
    for alt in first {
        let len = acc.len();
        acc.extend(alt.iter().cloned());
        if is_feasible(acc, n) {
            if let Some(x) = search(rest, acc, n) {
                return Some(x);
            }
        }
        acc.truncate(len);
    }
    None
}

/// A point of the ambient domain satisfying every atom, if any.
fn satisfy(conj: &[Atom], ambient: Ambient, vars: &[String]) -> Result<Option<Vec<BigRational>>, CompileError> {
    let alts = conj
        .iter()
        .map(|a| alternatives(a, ambient, vars))
        .collect::<Result<Vec<_>, _>>()?;
    let mut acc = ambient.domain(vars.len());
    Ok(search(&alts, &mut acc, vars.len()))
}

fn decide_in(m: &Matrix, ambient: Ambient) -> Result<Verdict, DecideError> {
    let vars: Vec<String> = m.vars().into_iter().collect();
    let cases = m.negated_dnf();
    let found = cases
        .par_iter()
        .map(|c| satisfy(c, ambient, &vars))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    let point = match found {
        None => return Ok(Verdict::Valid),
        Some(r) => r?.expect("found cases are satisfiable"),
    };
    let assignment: BTreeMap<String, BigRational> = vars.into_iter().zip(point).collect();
    let witnesses = m
        .atoms()
        .into_iter()
        .map(|a| AtomWitness {
            atom: a.clone(),
            lhs: eval_exact(&a.lhs, ambient, &assignment).expect("compiled terms evaluate"),
            rhs: eval_exact(&a.rhs, ambient, &assignment).expect("compiled terms evaluate"),
        })
        .collect();
    Ok(Verdict::Countermodel(Countermodel {
        ambient,
        assignment,
        witnesses,
    }))
}

/// Valid iff valid in every listed ambient; otherwise the first
/// countermodel in list order.
pub fn decide_universal(m: &Matrix, ambients: &[Ambient]) -> Result<Verdict, DecideError> {
    for &a in ambients {
        let v = decide_in(m, a)?;
        if !v.is_valid() {
            return Ok(v);
        }
    }
    Ok(Verdict::Valid)
}

pub fn decide_equation(s: &Formula, t: &Formula, ambient: Ambient) -> Result<Verdict, DecideError> {
    decide_universal(&Matrix::eq(s.clone(), t.clone()), &[ambient])
}

/// `B1 + … + Bm → A`; the sequent is valid in a model iff this is `0`.
pub fn sequent_formula(s: &Sequent) -> Formula {
    Formula::imp(Formula::conj_all(s.antecedent().iter().cloned()), s.succedent().clone())
}

pub fn decide_sequent(s: &Sequent, ambient: Ambient) -> Result<Verdict, DecideError> {
    decide_equation(&sequent_formula(s), &Formula::Zero, ambient)
}

/// Sampled check that a clause and its halving-free form agree on coop
/// models: with each fresh variable set to its halved term the hypotheses
/// hold and the two clauses have the same truth value. Returns the first
/// failing assignment.
pub fn spot_check_halving(c: &HornClause, ambient: Ambient, samples: usize, seed: u64) -> Option<BTreeMap<String, BigRational>> {
    let out = eliminate_halving(c);
    let fresh: Vec<(String, Formula)> = out
        .hypotheses
        .iter()
        .take(out.hypotheses.len() - c.hypotheses.len())
        .map(|h| {
            let Formula::Var(v) = &h.lhs else { unreachable!() };
            let Formula::Imp(_, t) = &h.rhs else { unreachable!() };
            (v.clone(), (**t).clone())
        })
        .collect();
    let dm = model(ambient);
    let order = |a: &BigRational, b: &BigRational| a.cmp(b);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars: Vec<String> = c.vars().into_iter().collect();
    for _ in 0..samples {
        let mut asg: Assignment<BigRational> = vars.iter().map(|v| (v.clone(), dm.sample(&mut rng))).collect();
        let before = c.to_matrix().eval(&dm, &asg, &order).ok()?;
        for (v, t) in &fresh {
            let val = eval_formula(t, &asg, &dm).ok()?.half();
            asg.insert(v.clone(), val);
        }
        let hyps_hold = out.hypotheses[..fresh.len()]
            .iter()
            .all(|h| Matrix::Atom(h.clone()).eval(&dm, &asg, &order) == Ok(true));
        let after = out.to_matrix().eval(&dm, &asg, &order).ok()?;
        if !hyps_hold || before != after || out.atoms().any(|a| a.lhs.contains_half() || a.rhs.contains_half()) {
            return Some(asg);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_sequent};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn asg_of(v: &Verdict) -> Vec<(String, String)> {
        v.countermodel()
            .unwrap()
            .assignment
            .iter()
            .map(|(k, q)| (k.clone(), fmt_rational(q)))
            .collect()
    }

    #[test]
    fn equation_examples() {
        let v = decide_equation(&f("x + (x -> y)"), &f("y + (y -> x)"), Ambient::Nonneg).unwrap();
        assert!(v.is_valid());
        let v = decide_equation(&f("(x -> y) -> y"), &f("(y -> x) -> x"), Ambient::Interval).unwrap();
        assert!(v.is_valid());
        let v = decide_equation(&f("x + x"), &f("x"), Ambient::Interval).unwrap();
        assert_eq!(asg_of(&v), [("x".to_string(), "1/2".to_string())]);
        assert!(v.countermodel().unwrap().refutes(&Matrix::eq(f("x + x"), f("x"))));
    }

    #[test]
    fn universal_examples() {
        let both = [Ambient::Nonneg, Ambient::Interval];
        let m = parse_matrix("(x -> y) -> y = (y -> x) -> x").unwrap();
        assert!(decide_universal(&m, &both).unwrap().is_valid());
        let m = parse_matrix("x + y = x => y = 0").unwrap();
        assert!(decide_universal(&m, &[Ambient::Nonneg]).unwrap().is_valid());
        let v = decide_universal(&m, &both).unwrap();
        let c = v.countermodel().unwrap();
        assert_eq!(c.ambient, Ambient::Interval);
        assert_eq!(asg_of(&v), [("x".into(), "1".into()), ("y".into(), "1".into())]);
        assert!(c.refutes(&m));
        assert!(decide_universal(&parse_matrix("x = x").unwrap(), &both).unwrap().is_valid());
    }

    #[test]
    fn sequents() {
        let con = parse_sequent("P |- P * P").unwrap();
        let v = decide_sequent(&con, Ambient::Interval).unwrap();
        assert_eq!(asg_of(&v), [("P".to_string(), "1/2".to_string())]);
        assert!(decide_sequent(&parse_sequent("P, P -o Q |- Q * (Q -o P)").unwrap(), Ambient::Nonneg).unwrap().is_valid());
        assert!(decide_sequent(&parse_sequent("1 |- P").unwrap(), Ambient::Nonneg).is_err());
    }

    #[test]
    fn halving_spot_checks() {
        let eq = |l: &str, r: &str| Atom { lhs: f(l), rel: Rel::Eq, rhs: f(r) };
        let clauses = [
            HornClause { hypotheses: vec![], conclusion: eq("x/2 + x/2", "x") },
            HornClause { hypotheses: vec![eq("x/2", "y")], conclusion: eq("(x/2)/2", "y/2") },
            HornClause { hypotheses: vec![eq("x + y", "x")], conclusion: eq("(x -> y)/2", "0") },
        ];
        for c in &clauses {
            for amb in [Ambient::Nonneg, Ambient::Interval] {
                assert_eq!(spot_check_halving(c, amb, 200, 3), None);
            }
        }
    }
}
