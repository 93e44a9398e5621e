//! Natural-deduction proofs for the twelve logics and an independent checker.
//!
//! Axiom leaves carry their conclusion; the checker re-derives the schema
//! match and every rule shape rather than trusting labels, because proof
//! files are untrusted input.

mod build;
mod deduction;
mod json;
mod transfer;

use std::fmt;

use serde::Serialize;

use crate::algebra::AlgebraClass;
use crate::syntax::{multiset_minus, multiset_union, Formula, LanguageId, Sequent};

pub use build::*;
pub use deduction::{apply_deduction, DeductionTarget, ShapeError};
pub use json::{proof_from_json, proof_to_json, ProofJsonError};
pub use transfer::{transfer, TransferError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Schema {
    #[serde(rename = "ASM")]
    Asm,
    #[serde(rename = "EFQ")]
    Efq,
    #[serde(rename = "DNE")]
    Dne,
    #[serde(rename = "CWC")]
    Cwc,
    #[serde(rename = "CSD")]
    Csd,
    #[serde(rename = "CON")]
    Con,
    #[serde(rename = "HLB")]
    Hlb,
    #[serde(rename = "HUB")]
    Hub,
}

impl Schema {
    pub const ALL: [Schema; 8] = [
        Schema::Asm,
        Schema::Efq,
        Schema::Dne,
        Schema::Cwc,
        Schema::Csd,
        Schema::Con,
        Schema::Hlb,
        Schema::Hub,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Schema::Asm => "ASM",
            Schema::Efq => "EFQ",
            Schema::Dne => "DNE",
            Schema::Cwc => "CWC",
            Schema::Csd => "CSD",
            Schema::Con => "CON",
            Schema::Hlb => "HLB",
            Schema::Hub => "HUB",
        }
    }

    pub fn parse(s: &str) -> Option<Schema> {
        Schema::ALL.into_iter().find(|x| x.name() == s)
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    ImpI,
    ImpE,
    ConjI,
    ConjE,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::ImpI => "ImpI",
            Rule::ImpE => "ImpE",
            Rule::ConjI => "ConjI",
            Rule::ConjE => "ConjE",
        }
    }

    pub fn parse(s: &str) -> Option<Rule> {
        [Rule::ImpI, Rule::ImpE, Rule::ConjI, Rule::ConjE]
            .into_iter()
            .find(|r| r.name() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            Rule::ImpI => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LogicId {
    ALu,
    ALi,
    ALc,
    LLu,
    LLi,
    LLc,
    ILu,
    IL,
    BL,
    CLu,
    CLi,
    CLc,
}

impl LogicId {
    pub const ALL: [LogicId; 12] = [
        LogicId::ALu,
        LogicId::ALi,
        LogicId::ALc,
        LogicId::LLu,
        LogicId::LLi,
        LogicId::LLc,
        LogicId::ILu,
        LogicId::IL,
        LogicId::BL,
        LogicId::CLu,
        LogicId::CLi,
        LogicId::CLc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LogicId::ALu => "ALu",
            LogicId::ALi => "ALi",
            LogicId::ALc => "ALc",
            LogicId::LLu => "LLu",
            LogicId::LLi => "LLi",
            LogicId::LLc => "LLc",
            LogicId::ILu => "ILu",
            LogicId::IL => "IL",
            LogicId::BL => "BL",
            LogicId::CLu => "CLu",
            LogicId::CLi => "CLi",
            LogicId::CLc => "CLc",
        }
    }

    /// Accepts the plain names and the `Ł` spelling of the Łukasiewicz logics.
    pub fn parse(s: &str) -> Option<LogicId> {
        let s = match s.strip_prefix('Ł') {
            Some(r) => format!("L{r}"),
            None => s.to_string(),
        };
        LogicId::ALL.into_iter().find(|l| l.name() == s)
    }

    pub fn axioms(self) -> &'static [Schema] {
        use Schema::*;
        match self {
            LogicId::ALu => &[Asm],
            LogicId::ALi => &[Asm, Efq],
            LogicId::ALc => &[Asm, Efq, Dne],
            LogicId::LLu => &[Asm, Cwc],
            LogicId::LLi => &[Asm, Cwc, Efq],
            LogicId::LLc => &[Asm, Efq, Csd],
            LogicId::ILu => &[Asm, Con],
            LogicId::IL => &[Asm, Efq, Con],
            LogicId::BL => &[Asm, Efq, Con, Dne],
            LogicId::CLu => &[Asm, Cwc, Hlb, Hub],
            LogicId::CLi => &[Asm, Cwc, Efq, Hlb, Hub],
            LogicId::CLc => &[Asm, Efq, Csd, Hlb, Hub],
        }
    }

    pub fn has(self, s: Schema) -> bool {
        self.axioms().contains(&s)
    }

    pub fn language(self) -> LanguageId {
        let one = self.has(Schema::Efq) || self.has(Schema::Dne) || self.has(Schema::Csd);
        let half = self.has(Schema::Hlb);
        LanguageId::from_features(one, half)
    }

    pub fn model_class(self) -> AlgebraClass {
        match self {
            LogicId::ALu => AlgebraClass::Pocrim,
            LogicId::ALi => AlgebraClass::BoundedPocrim,
            LogicId::ALc => AlgebraClass::InvolutivePocrim,
            LogicId::LLu => AlgebraClass::Hoop,
            LogicId::LLi => AlgebraClass::BoundedHoop,
            LogicId::LLc => AlgebraClass::InvolutiveHoop,
            LogicId::ILu => AlgebraClass::IdempotentPocrim,
            LogicId::IL => AlgebraClass::BoundedIdempotentPocrim,
            LogicId::BL => AlgebraClass::InvolutiveIdempotentPocrim,
            LogicId::CLu => AlgebraClass::Coop,
            LogicId::CLi => AlgebraClass::BoundedCoop,
            LogicId::CLc => AlgebraClass::InvolutiveCoop,
        }
    }

    /// Direct arrows of the lattice of logics.
    pub fn successors(self) -> &'static [LogicId] {
        use LogicId::*;
        match self {
            ALu => &[ALi, LLu],
            ALi => &[ALc, LLi],
            ALc => &[LLc],
            LLu => &[LLi, CLu, ILu],
            LLi => &[LLc, CLi, IL],
            LLc => &[CLc, BL],
            ILu => &[IL],
            IL => &[BL],
            BL => &[],
            CLu => &[CLi],
            CLi => &[CLc],
            CLc => &[],
        }
    }

    /// Every logic reachable by arrows, including `self`.
    pub fn extensions(self) -> Vec<LogicId> {
        let mut seen = vec![self];
        let mut i = 0;
        while i < seen.len() {
            for &n in seen[i].successors() {
                if !seen.contains(&n) {
                    seen.push(n);
                }
            }
            i += 1;
        }
        seen.sort();
        seen
    }

    pub fn extends(self, base: LogicId) -> bool {
        base.extensions().contains(&self)
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Proof {
    Axiom {
        schema: Schema,
        conclusion: Sequent,
    },
    Rule {
        rule: Rule,
        premises: Vec<Proof>,
        conclusion: Sequent,
    },
}

impl Proof {
    pub fn conclusion(&self) -> &Sequent {
        match self {
            Proof::Axiom { conclusion, .. } | Proof::Rule { conclusion, .. } => conclusion,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Proof::Axiom { .. } => 1,
            Proof::Rule { premises, .. } => 1 + premises.iter().map(Proof::size).sum::<usize>(),
        }
    }

    pub fn schemas(&self) -> Vec<Schema> {
        let mut out = Vec::new();
        self.collect_schemas(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_schemas(&self, out: &mut Vec<Schema>) {
        match self {
            Proof::Axiom { schema, .. } => out.push(*schema),
            Proof::Rule { premises, .. } => premises.iter().for_each(|p| p.collect_schemas(out)),
        }
    }

    /// Smallest language containing every formula in the proof.
    pub fn language(&self) -> LanguageId {
        match self {
            Proof::Axiom { conclusion, .. } => conclusion.language(),
            Proof::Rule {
                premises,
                conclusion,
                ..
            } => premises
                .iter()
                .map(Proof::language)
                .fold(conclusion.language(), LanguageId::join),
        }
    }
}

/// Instance data of an axiom: the residual context, the principal
/// antecedent formula, and the schema variables `A` and (if any) `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomInstance {
    pub residual: Vec<Formula>,
    pub principal: Formula,
    pub a: Formula,
    pub b: Option<Formula>,
}

/// Matches `s` against `schema` with an arbitrary residual context.
pub fn axiom_instance(s: &Sequent, schema: Schema) -> Option<AxiomInstance> {
    let succ = s.succedent();
    let ante = s.antecedent();
    let pick = |principal: Formula, a: Formula, b: Option<Formula>| -> Option<AxiomInstance> {
        let residual = multiset_minus(ante, std::slice::from_ref(&principal))?;
        Some(AxiomInstance {
            residual,
            principal,
            a,
            b,
        })
    };
    match schema {
        Schema::Asm => pick(succ.clone(), succ.clone(), None),
        Schema::Efq => pick(Formula::One, succ.clone(), None),
        Schema::Dne => pick(
            Formula::neg(Formula::neg(succ.clone())),
            succ.clone(),
            None,
        ),
        Schema::Cwc => {
            let Formula::Conj(b, rest) = succ else { return None };
            let Formula::Imp(b2, a) = rest.as_ref() else { return None };
            if b2 != b {
                return None;
            }
            let principal = Formula::conj((**a).clone(), Formula::imp((**a).clone(), (**b).clone()));
            pick(principal, (**a).clone(), Some((**b).clone()))
        }
        Schema::Csd => {
            let Formula::Imp(ba, a) = succ else { return None };
            let Formula::Imp(b, a2) = ba.as_ref() else { return None };
            if a2 != a {
                return None;
            }
            let principal = Formula::imp(Formula::imp((**a).clone(), (**b).clone()), (**b).clone());
            pick(principal, (**a).clone(), Some((**b).clone()))
        }
        Schema::Con => {
            let Formula::Conj(a, a2) = succ else { return None };
            if a != a2 {
                return None;
            }
            pick((**a).clone(), (**a).clone(), None)
        }
        Schema::Hlb => {
            let h = Formula::half(succ.clone());
            pick(Formula::conj(h.clone(), h), succ.clone(), None)
        }
        Schema::Hub => {
            let Formula::Half(a) = succ else { return None };
            pick(
                Formula::imp(succ.clone(), (**a).clone()),
                (**a).clone(),
                None,
            )
        }
    }
}

pub fn match_axiom(s: &Sequent, schema: Schema) -> bool {
    axiom_instance(s, schema).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub path: Vec<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub ok: bool,
    pub failures: Vec<Failure>,
}

/// Reasons a single node fails, given its premises' conclusions.
fn node_errors(p: &Proof, logic: LogicId) -> Vec<String> {
    let mut errs = Vec::new();
    let lang = logic.language();
    let concl = p.conclusion();
    if !concl.language().within(lang) {
        errs.push(format!(
            "language violation: `{concl}` is not in {lang} (the language of {logic})"
        ));
    }
    match p {
        Proof::Axiom { schema, conclusion } => {
            if !logic.has(*schema) {
                errs.push(format!("axiom not in logic: {schema} is not an axiom of {logic}"));
            }
            if !match_axiom(conclusion, *schema) {
                errs.push(format!("bad axiom: `{conclusion}` is not an instance of {schema}"));
            }
        }
        Proof::Rule {
            rule,
            premises,
            conclusion,
        } => {
            if premises.len() != rule.arity() {
                errs.push(format!(
                    "rule-shape mismatch: {rule} needs {} premise(s), found {}",
                    rule.arity(),
                    premises.len()
                ));
                return errs;
            }
            if let Err(e) = rule_shape(*rule, premises, conclusion) {
                errs.push(e);
            }
        }
    }
    errs
}

fn same_multiset(a: &[Formula], b: &[Formula]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

fn rule_shape(rule: Rule, premises: &[Proof], c: &Sequent) -> Result<(), String> {
    let p0 = premises[0].conclusion();
    let mismatch = |what: &str| Err(format!("rule-shape mismatch in {rule}: {what}"));
    let multiset = |what: &str| Err(format!("multiset mismatch in {rule}: {what}"));
    match rule {
        Rule::ImpI => {
            let Formula::Imp(a, b) = c.succedent() else {
                return mismatch("conclusion is not an implication");
            };
            if p0.succedent() != b.as_ref() {
                return mismatch("premise succedent differs from the consequent");
            }
            let expected = multiset_union(c.antecedent(), std::slice::from_ref(a));
            if !same_multiset(&expected, p0.antecedent()) {
                return multiset("premise antecedent is not the conclusion's plus the discharged formula");
            }
        }
        Rule::ImpE => {
            let p1 = premises[1].conclusion();
            let expected = Formula::imp(p0.succedent().clone(), c.succedent().clone());
            if p1.succedent() != &expected {
                return mismatch("second premise is not the implication from the first premise to the conclusion");
            }
            if !same_multiset(&multiset_union(p0.antecedent(), p1.antecedent()), c.antecedent()) {
                return multiset("conclusion antecedent is not the union of the premises'");
            }
        }
        Rule::ConjI => {
            let p1 = premises[1].conclusion();
            let expected = Formula::conj(p0.succedent().clone(), p1.succedent().clone());
            if c.succedent() != &expected {
                return mismatch("conclusion is not the conjunction of the premises");
            }
            if !same_multiset(&multiset_union(p0.antecedent(), p1.antecedent()), c.antecedent()) {
                return multiset("conclusion antecedent is not the union of the premises'");
            }
        }
        Rule::ConjE => {
            let p1 = premises[1].conclusion();
            let Formula::Conj(a, b) = p0.succedent() else {
                return mismatch("first premise is not a conjunction");
            };
            if p1.succedent() != c.succedent() {
                return mismatch("second premise and conclusion have different succedents");
            }
            let Some(delta) = multiset_minus(p1.antecedent(), &[(**a).clone(), (**b).clone()]) else {
                return multiset("second premise does not assume both conjuncts");
            };
            if !same_multiset(&multiset_union(p0.antecedent(), &delta), c.antecedent()) {
                return multiset("conclusion antecedent is not the union of the contexts");
            }
        }
    }
    Ok(())
}

fn check_at(p: &Proof, logic: LogicId, path: &mut Vec<usize>, out: &mut Vec<Failure>) {
    for reason in node_errors(p, logic) {
        out.push(Failure {
            path: path.clone(),
            reason,
        });
    }
    if let Proof::Rule { premises, .. } = p {
        for (i, q) in premises.iter().enumerate() {
            path.push(i);
            check_at(q, logic, path, out);
            path.pop();
        }
    }
}

/// Checks every node; failures are listed in pre-order, so the first entry
/// is the failing node nearest the root.
pub fn check_proof(p: &Proof, logic: LogicId) -> CheckReport {
    let mut failures = Vec::new();
    check_at(p, logic, &mut Vec::new(), &mut failures);
    CheckReport {
        ok: failures.is_empty(),
        failures,
    }
}

/// Adds `extra` to the conclusion by pushing it along first premises down to
/// an axiom leaf, which absorbs it into its residual context.
pub fn weaken(p: &Proof, extra: Formula) -> Proof {
    match p {
        Proof::Axiom { schema, conclusion } => Proof::Axiom {
            schema: *schema,
            conclusion: conclusion.with_extra(extra),
        },
        Proof::Rule {
            rule,
            premises,
            conclusion,
        } => {
            let mut premises = premises.clone();
            premises[0] = weaken(&premises[0], extra.clone());
            Proof::Rule {
                rule: *rule,
                premises,
                conclusion: conclusion.with_extra(extra),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_sequent};

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn axiom_matching() {
        assert!(match_axiom(&seq("Q, P |- P"), Schema::Asm));
        assert!(match_axiom(&seq("1 |- P/2"), Schema::Efq));
        assert!(!match_axiom(&seq("P |- P * P"), Schema::Asm));
        assert!(match_axiom(&seq("P |- P * P"), Schema::Con));
        assert!(match_axiom(&seq("R, P * (P -o Q) |- Q * (Q -o P)"), Schema::Cwc));
        assert!(!match_axiom(&seq("P * (P -o Q) |- Q * (Q -o R)"), Schema::Cwc));
        assert!(match_axiom(&seq("(P -o Q) -o Q |- (Q -o P) -o P"), Schema::Csd));
        assert!(match_axiom(&seq("P^^ |- P"), Schema::Dne));
        assert!(match_axiom(&seq("P/2 * P/2 |- P"), Schema::Hlb));
        assert!(match_axiom(&seq("P/2 -o P |- P/2"), Schema::Hub));
        assert!(!match_axiom(&seq("P/2 -o Q |- P/2"), Schema::Hub));
    }

    #[test]
    fn table_of_axioms() {
        assert_eq!(LogicId::LLc.axioms(), &[Schema::Asm, Schema::Efq, Schema::Csd]);
        assert_eq!(LogicId::CLu.language(), LanguageId::Lh);
        assert_eq!(LogicId::LLu.language(), LanguageId::Lo);
        assert_eq!(LogicId::IL.language(), LanguageId::Li);
        assert_eq!(LogicId::CLc.language(), LanguageId::Lih);
    }

    #[test]
    fn lattice() {
        assert_eq!(LogicId::ALu.extensions().len(), 12);
        assert!(LogicId::BL.extends(LogicId::LLu));
        assert!(!LogicId::CLu.extends(LogicId::ILu));
        assert!(!LogicId::ILu.extends(LogicId::CLu));
        assert_eq!(LogicId::CLc.extensions(), vec![LogicId::CLc]);
        assert_eq!(LogicId::parse("ŁLu"), Some(LogicId::LLu));
        assert_eq!(LogicId::parse("BL"), Some(LogicId::BL));
        assert_eq!(LogicId::parse("CLc"), Some(LogicId::CLc));
    }

    #[test]
    fn identity_proof() {
        let p = imp_i(asm(vec![], f("P")), &f("P"));
        assert_eq!(p.conclusion(), &seq("|- P -o P"));
        assert!(check_proof(&p, LogicId::ALu).ok);
    }

    #[test]
    fn contraction_leaf_rejected_outside_intuitionistic_logics() {
        let p = Proof::Axiom {
            schema: Schema::Con,
            conclusion: seq("P |- P * P"),
        };
        let r = check_proof(&p, LogicId::CLu);
        assert!(!r.ok);
        assert!(r.failures[0].reason.starts_with("axiom not in logic"));
        assert!(check_proof(&p, LogicId::ILu).ok);
    }

    #[test]
    fn detects_multiset_misuse() {
        // P ⊢ P ⊗ P by pairing one assumption with itself.
        let bad = Proof::Rule {
            rule: Rule::ConjI,
            premises: vec![asm(vec![], f("P")), asm(vec![], f("P"))],
            conclusion: seq("P |- P * P"),
        };
        let r = check_proof(&bad, LogicId::ALu);
        assert!(!r.ok);
        assert!(r.failures[0].reason.starts_with("multiset mismatch"));
        assert_eq!(r.failures[0].path, Vec::<usize>::new());
    }

    #[test]
    fn language_violation() {
        let p = asm(vec![], f("P/2"));
        let r = check_proof(&p, LogicId::LLc);
        assert!(r.failures[0].reason.starts_with("language violation"));
        assert!(check_proof(&p, LogicId::CLu).ok);
    }

    #[test]
    fn wrong_arity() {
        let p = Proof::Rule {
            rule: Rule::ImpE,
            premises: vec![asm(vec![], f("P"))],
            conclusion: seq("P |- P"),
        };
        assert!(check_proof(&p, LogicId::ALu).failures[0]
            .reason
            .contains("needs 2 premise"));
    }

    #[test]
    fn weakening() {
        let p = asm(vec![], f("P"));
        let w = weaken(&p, f("Q"));
        assert_eq!(w.conclusion(), &seq("Q, P |- P"));
        assert!(check_proof(&w, LogicId::ALu).ok);
        let id = imp_i(asm(vec![], f("P")), &f("P"));
        let w = weaken(&id, f("R"));
        assert_eq!(w.conclusion(), &seq("R |- P -o P"));
        assert!(check_proof(&w, LogicId::ALu).ok);
        let ww = weaken(&w, f("R"));
        assert_eq!(ww.conclusion().antecedent().len(), 2);
        assert!(check_proof(&ww, LogicId::ALu).ok);
    }
}
