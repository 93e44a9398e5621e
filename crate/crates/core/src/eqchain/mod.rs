//! Equational proofs over the hoop signature `(0, +, →)`: terms modulo the
//! commutative-monoid laws, chains of equation applications, and the
//! translation of `LLu` proofs into such chains.

mod chain;
mod translate;

use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, Assignment, EvalError};
use crate::syntax::Formula;

pub use chain::{
    apply_equation, chain_from_json, chain_to_json, verify_chain, ChainError, Direction, EqChain,
    EqStep, Equation, Justification, Subst,
};
pub use translate::{translate_proof, TranslateError};

/// A term with `+` read as an n-ary operator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgTerm {
    Zero,
    Atom(String),
    Sum(Vec<AlgTerm>),
    Imp(Box<AlgTerm>, Box<AlgTerm>),
}

impl AlgTerm {
    pub fn atom(name: impl Into<String>) -> Self {
        AlgTerm::Atom(name.into())
    }

    pub fn imp(a: AlgTerm, b: AlgTerm) -> Self {
        AlgTerm::Imp(Box::new(a), Box::new(b))
    }

    pub fn sum(items: impl IntoIterator<Item = AlgTerm>) -> Self {
        ac_normalize(&AlgTerm::Sum(items.into_iter().collect()))
    }

    /// The summands of the normal form (empty for `0`).
    pub fn summands(&self) -> Vec<AlgTerm> {
        match ac_normalize(self) {
            AlgTerm::Zero => vec![],
            AlgTerm::Sum(xs) => xs,
            t => vec![t],
        }
    }

    pub fn at(&self, path: &[usize]) -> Option<&AlgTerm> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(self);
        };
        match self {
            AlgTerm::Sum(xs) => xs.get(i)?.at(rest),
            AlgTerm::Imp(a, b) => match i {
                0 => a.at(rest),
                1 => b.at(rest),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn replace(&self, path: &[usize], new: AlgTerm) -> Option<AlgTerm> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(new);
        };
        match self {
            AlgTerm::Sum(xs) => {
                let mut xs = xs.clone();
                let child = xs.get(i)?.replace(rest, new)?;
                xs[i] = child;
                Some(AlgTerm::Sum(xs))
            }
            AlgTerm::Imp(a, b) => match i {
                0 => Some(AlgTerm::Imp(Box::new(a.replace(rest, new)?), b.clone())),
                1 => Some(AlgTerm::Imp(a.clone(), Box::new(b.replace(rest, new)?))),
                _ => None,
            },
            _ => None,
        }
    }

    /// Every path into the term, in pre-order.
    pub fn positions(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        let children: Vec<&AlgTerm> = match self {
            AlgTerm::Sum(xs) => xs.iter().collect(),
            AlgTerm::Imp(a, b) => vec![a, b],
            _ => vec![],
        };
        for (i, c) in children.into_iter().enumerate() {
            for mut p in c.positions() {
                p.insert(0, i);
                out.push(p);
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        match self {
            AlgTerm::Zero | AlgTerm::Atom(_) => 1,
            AlgTerm::Sum(xs) => 1 + xs.iter().map(AlgTerm::size).sum::<usize>(),
            AlgTerm::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn vars(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        fn go(t: &AlgTerm, out: &mut std::collections::BTreeSet<String>) {
            match t {
                AlgTerm::Zero => {}
                AlgTerm::Atom(v) => {
                    out.insert(v.clone());
                }
                AlgTerm::Sum(xs) => xs.iter().for_each(|x| go(x, out)),
                AlgTerm::Imp(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        go(self, &mut out);
        out
    }
}

/// Canonical representative modulo associativity, commutativity and unit
/// of `+`: sums are flattened, zeros dropped, summands sorted, and sums of
/// zero or one summand collapsed.
pub fn ac_normalize(t: &AlgTerm) -> AlgTerm {
    match t {
        AlgTerm::Zero | AlgTerm::Atom(_) => t.clone(),
        AlgTerm::Imp(a, b) => AlgTerm::imp(ac_normalize(a), ac_normalize(b)),
        AlgTerm::Sum(xs) => {
            let mut flat = Vec::new();
            for x in xs {
                match ac_normalize(x) {
                    AlgTerm::Zero => {}
                    AlgTerm::Sum(ys) => flat.extend(ys),
                    y => flat.push(y),
                }
            }
            flat.sort();
            match flat.len() {
                0 => AlgTerm::Zero,
                1 => flat.pop().unwrap(),
                _ => AlgTerm::Sum(flat),
            }
        }
    }
}

/// `[A]`: conjunction becomes `+`, implication `→`. `None` when `A` uses
/// `1` or halving.
pub fn translate_formula(f: &Formula) -> Option<AlgTerm> {
    Some(match f {
        Formula::Zero => AlgTerm::Zero,
        Formula::Var(v) => AlgTerm::atom(v.clone()),
        Formula::Conj(a, b) => AlgTerm::sum([translate_formula(a)?, translate_formula(b)?]),
        Formula::Imp(a, b) => AlgTerm::imp(translate_formula(a)?, translate_formula(b)?),
        Formula::One | Formula::Half(_) => return None,
    })
}

pub fn eval_term<A: Algebra>(
    t: &AlgTerm,
    assignment: &Assignment<A::Elem>,
    model: &A,
) -> Result<A::Elem, EvalError> {
    Ok(match t {
        AlgTerm::Zero => model.zero(),
        AlgTerm::Atom(v) => assignment
            .get(v)
            .cloned()
            .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?,
        AlgTerm::Sum(xs) => {
            let mut acc = model.zero();
            for x in xs {
                acc = model.add(&acc, &eval_term(x, assignment, model)?);
            }
            acc
        }
        AlgTerm::Imp(a, b) => model.imp(&eval_term(a, assignment, model)?, &eval_term(b, assignment, model)?),
    })
}

fn write_term(t: &AlgTerm, f: &mut fmt::Formatter<'_>, in_sum: bool) -> fmt::Result {
    match t {
        AlgTerm::Zero => f.write_str("0"),
        AlgTerm::Atom(v) => f.write_str(v),
        AlgTerm::Sum(xs) if xs.is_empty() => f.write_str("0"),
        AlgTerm::Sum(xs) => {
            if in_sum {
                f.write_str("(")?;
            }
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(" + ")?;
                }
                write_term(x, f, true)?;
            }
            if in_sum {
                f.write_str(")")?;
            }
            Ok(())
        }
        AlgTerm::Imp(a, b) => {
            if in_sum {
                f.write_str("(")?;
            }
            match a.as_ref() {
                AlgTerm::Imp(..) => {
                    f.write_str("(")?;
                    write_term(a, f, false)?;
                    f.write_str(")")?;
                }
                _ => write_term(a, f, false)?,
            }
            f.write_str(" -> ")?;
            write_term(b, f, false)?;
            if in_sum {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

/// `+` binds tighter than `->`, which associates to the right.
impl fmt::Display for AlgTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f, false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad term at {pos}: {msg}")]
pub struct TermParseError {
    pub pos: usize,
    pub msg: String,
}

struct TermParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl TermParser<'_> {
    fn skip(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T, TermParseError> {
        Err(TermParseError {
            pos: self.i,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip();
        if self.s[self.i..].starts_with(tok.as_bytes()) {
            self.i += tok.len();
            true
        } else {
            false
        }
    }

    fn imp(&mut self) -> Result<AlgTerm, TermParseError> {
        let lhs = self.sum()?;
        if self.eat("->") {
            Ok(AlgTerm::imp(lhs, self.imp()?))
        } else {
            Ok(lhs)
        }
    }

    fn sum(&mut self) -> Result<AlgTerm, TermParseError> {
        let mut items = vec![self.atom()?];
        while self.eat("+") {
            items.push(self.atom()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            AlgTerm::Sum(items)
        })
    }

    fn atom(&mut self) -> Result<AlgTerm, TermParseError> {
        self.skip();
        if self.eat("(") {
            let t = self.imp()?;
            if !self.eat(")") {
                return self.err("expected `)`");
            }
            return Ok(t);
        }
        let start = self.i;
        while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
            self.i += 1;
        }
        match &self.s[start..self.i] {
            b"" => self.err("expected a term"),
            b"0" => Ok(AlgTerm::Zero),
            w if w[0].is_ascii_digit() => self.err("numerals other than 0 are not terms"),
            w => Ok(AlgTerm::atom(String::from_utf8_lossy(w).into_owned())),
        }
    }
}

pub fn parse_term(text: &str) -> Result<AlgTerm, TermParseError> {
    let mut p = TermParser {
        s: text.as_bytes(),
        i: 0,
    };
    let t = p.imp()?;
    p.skip();
    if p.i != p.s.len() {
        return p.err("trailing input");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> AlgTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(ac_normalize(&t("(a + b) + c")), ac_normalize(&t("c + (b + a)")));
        assert_eq!(ac_normalize(&t("a + 0")), t("a"));
        assert_eq!(ac_normalize(&t("a -> b + c")), ac_normalize(&t("a -> c + b")));
        assert_ne!(ac_normalize(&t("a -> b")), ac_normalize(&t("b -> a")));
        assert_eq!(ac_normalize(&t("0 + 0")), AlgTerm::Zero);
    }

    #[test]
    fn render_and_parse() {
        for s in ["a + b -> c", "(a -> b) -> a -> b", "a + (a -> b)", "0"] {
            assert_eq!(t(s).to_string(), s);
        }
        assert!(parse_term("a +").is_err());
        assert!(parse_term("2").is_err());
    }

    #[test]
    fn formula_translation() {
        let f = crate::syntax::parse_formula("P * (P -o Q) -o Q").unwrap();
        assert_eq!(translate_formula(&f).unwrap().to_string(), "P + (P -> Q) -> Q");
        let f = crate::syntax::parse_formula("P -o 1").unwrap();
        assert_eq!(translate_formula(&f), None);
    }

    fn arb_term() -> impl Strategy<Value = AlgTerm> {
        let leaf = prop_oneof![Just(AlgTerm::Zero), "[abc]".prop_map(AlgTerm::atom)];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 0..4).prop_map(AlgTerm::Sum),
                (inner.clone(), inner).prop_map(|(a, b)| AlgTerm::imp(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(x in arb_term()) {
            let n = ac_normalize(&x);
            prop_assert_eq!(ac_normalize(&n), n.clone());
            prop_assert_eq!(ac_normalize(&parse_term(&n.to_string()).unwrap()), n);
        }
    }
}
