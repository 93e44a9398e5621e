//! Formulas, sequents and the four sublanguages.
//!
//! Concrete syntax (ASCII):
//!
//! ```text
//! formula := imp
//! imp     := conj ( ("-o" | "->") imp )?          right associative, loosest
//! conj    := postfix ( ("*" | "+") postfix )*     left associative
//! postfix := atom ( "/2" | "^" )*                 A^ is sugar for A -o 1
//! atom    := "0" | "1" | ident | "(" formula ")"
//! ident   := [A-Za-z][A-Za-z0-9_]*
//! sequent := [ formula ("," formula)* ] "|-" formula
//! ```
//!
//! `+` and `->` are accepted so that pocrim terms such as `x + (x -> y)` can be
//! read with the same parser; rendering always uses `*` and `-o`.

mod parse;
mod render;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use parse::{parse_formula, parse_sequent, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Zero,
    One,
    Var(String),
    Conj(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Half(Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    pub fn conj(a: Formula, b: Formula) -> Self {
        Formula::Conj(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn half(a: Formula) -> Self {
        Formula::Half(Box::new(a))
    }

    /// `A^⊥`, i.e. `A -o 1`.
    pub fn neg(a: Formula) -> Self {
        Formula::imp(a, Formula::One)
    }

    /// Left-nested conjunction of `items`; `0` when empty.
    pub fn conj_all(items: impl IntoIterator<Item = Formula>) -> Self {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::Zero,
            Some(first) => it.fold(first, Formula::conj),
        }
    }

    pub fn contains_one(&self) -> bool {
        match self {
            Formula::One => true,
            Formula::Zero | Formula::Var(_) => false,
            Formula::Conj(a, b) | Formula::Imp(a, b) => a.contains_one() || b.contains_one(),
            Formula::Half(a) => a.contains_one(),
        }
    }

    pub fn contains_half(&self) -> bool {
        match self {
            Formula::Half(_) => true,
            Formula::Zero | Formula::One | Formula::Var(_) => false,
            Formula::Conj(a, b) | Formula::Imp(a, b) => a.contains_half() || b.contains_half(),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Zero | Formula::One => {}
            Formula::Conj(a, b) | Formula::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Half(a) => a.collect_vars(out),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Zero | Formula::One | Formula::Var(_) => 1,
            Formula::Conj(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::Half(a) => 1 + a.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Zero | Formula::One | Formula::Var(_) => 0,
            Formula::Conj(a, b) | Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Half(a) => 1 + a.depth(),
        }
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Zero | Formula::One | Formula::Var(_) => vec![],
            Formula::Conj(a, b) | Formula::Imp(a, b) => vec![a, b],
            Formula::Half(a) => vec![a],
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render_formula(self))
    }
}

pub fn render_formula(f: &Formula) -> String {
    render::render_formula(f)
}

/// The sublanguages: `Lo` has neither `1` nor halving, `Li` allows `1`,
/// `Lh` allows halving, `Lih` allows both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LanguageId {
    #[serde(rename = "L_o")]
    Lo,
    #[serde(rename = "L_i")]
    Li,
    #[serde(rename = "L_h")]
    Lh,
    #[serde(rename = "L_ih")]
    Lih,
}

impl LanguageId {
    pub fn from_features(one: bool, half: bool) -> Self {
        match (one, half) {
            (false, false) => LanguageId::Lo,
            (true, false) => LanguageId::Li,
            (false, true) => LanguageId::Lh,
            (true, true) => LanguageId::Lih,
        }
    }

    pub fn allows_one(self) -> bool {
        matches!(self, LanguageId::Li | LanguageId::Lih)
    }

    pub fn allows_half(self) -> bool {
        matches!(self, LanguageId::Lh | LanguageId::Lih)
    }

    /// Sublanguage inclusion.
    pub fn within(self, other: LanguageId) -> bool {
        (!self.allows_one() || other.allows_one()) && (!self.allows_half() || other.allows_half())
    }

    pub fn join(self, other: LanguageId) -> LanguageId {
        LanguageId::from_features(
            self.allows_one() || other.allows_one(),
            self.allows_half() || other.allows_half(),
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            LanguageId::Lo => "L_o",
            LanguageId::Li => "L_i",
            LanguageId::Lh => "L_h",
            LanguageId::Lih => "L_ih",
        }
    }
}

impl fmt::Display for LanguageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Smallest sublanguage containing `f`.
pub fn classify_language(f: &Formula) -> LanguageId {
    LanguageId::from_features(f.contains_one(), f.contains_half())
}

/// `Γ ⊢ A`. The antecedent is kept sorted so that equality and hashing ignore
/// the order in which assumptions were written.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    antecedent: Vec<Formula>,
    succedent: Formula,
}

impl Sequent {
    pub fn new(antecedent: impl IntoIterator<Item = Formula>, succedent: Formula) -> Self {
        let mut antecedent: Vec<Formula> = antecedent.into_iter().collect();
        antecedent.sort();
        Sequent {
            antecedent,
            succedent,
        }
    }

    pub fn antecedent(&self) -> &[Formula] {
        &self.antecedent
    }

    pub fn succedent(&self) -> &Formula {
        &self.succedent
    }

    pub fn with_extra(&self, extra: Formula) -> Sequent {
        let mut ante = self.antecedent.clone();
        ante.push(extra);
        Sequent::new(ante, self.succedent.clone())
    }

    pub fn language(&self) -> LanguageId {
        self.antecedent
            .iter()
            .chain(std::iter::once(&self.succedent))
            .map(classify_language)
            .fold(LanguageId::Lo, LanguageId::join)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in &self.antecedent {
            f.collect_vars(&mut out);
        }
        self.succedent.collect_vars(&mut out);
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ante: Vec<String> = self.antecedent.iter().map(render_formula).collect();
        if ante.is_empty() {
            write!(f, "|- {}", self.succedent)
        } else {
            write!(f, "{} |- {}", ante.join(", "), self.succedent)
        }
    }
}

/// Multiset difference `big - small`; `None` when `small` is not contained in `big`.
pub fn multiset_minus(big: &[Formula], small: &[Formula]) -> Option<Vec<Formula>> {
    let mut rest: Vec<Formula> = big.to_vec();
    for f in small {
        let pos = rest.iter().position(|g| g == f)?;
        rest.remove(pos);
    }
    Some(rest)
}

/// Multiset union, sorted.
pub fn multiset_union(a: &[Formula], b: &[Formula]) -> Vec<Formula> {
    let mut out: Vec<Formula> = a.iter().chain(b).cloned().collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_language(&p("P -o Q")), LanguageId::Lo);
        assert_eq!(classify_language(&p("P -o 1")), LanguageId::Li);
        assert_eq!(classify_language(&p("P/2 -o 1")), LanguageId::Lih);
        assert_eq!(classify_language(&p("P/2")), LanguageId::Lh);
    }

    #[test]
    fn lo_is_intersection() {
        for l in [LanguageId::Lo, LanguageId::Li, LanguageId::Lh, LanguageId::Lih] {
            let in_both = l.within(LanguageId::Li) && l.within(LanguageId::Lh);
            assert_eq!(in_both, l == LanguageId::Lo);
        }
    }

    #[test]
    fn sequent_antecedent_order_is_irrelevant() {
        let a = Sequent::new(vec![p("P"), p("Q")], p("P"));
        let b = Sequent::new(vec![p("Q"), p("P")], p("P"));
        assert_eq!(a, b);
        let c = Sequent::new(vec![p("P"), p("P"), p("Q")], p("P"));
        assert_ne!(a, c);
    }

    #[test]
    fn multiset_ops() {
        let big = vec![p("P"), p("P"), p("Q")];
        assert_eq!(multiset_minus(&big, &[p("P")]).unwrap(), vec![p("P"), p("Q")]);
        assert!(multiset_minus(&big, &[p("R")]).is_none());
        assert!(multiset_minus(&big, &[p("Q"), p("Q")]).is_none());
    }
}
