//! Quantifier-free matrices over coop terms, read as universally closed.
//!
//! Grammar, loosest first: `=>` (right associative), `|`, `&`, prefix `~`,
//! then an atom `s R t` with `R` one of `= != <= < >= >`, or a
//! parenthesized matrix. Terms use the formula syntax (`+`, `->`, `/2`).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::{eval_formula, Algebra, Assignment, EvalError};
use crate::syntax::{parse_formula, render_formula, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rel {
    Eq,
    Ne,
    Le,
    Lt,
    Ge,
    Gt,
}

impl Rel {
    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Le => "<=",
            Rel::Lt => "<",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }

    pub fn negate(self) -> Rel {
        match self {
            Rel::Eq => Rel::Ne,
            Rel::Ne => Rel::Eq,
            Rel::Le => Rel::Gt,
            Rel::Lt => Rel::Ge,
            Rel::Ge => Rel::Lt,
            Rel::Gt => Rel::Le,
        }
    }

    pub fn holds<T: Ord>(self, a: &T, b: &T) -> bool {
        match self {
            Rel::Eq => a == b,
            Rel::Ne => a != b,
            Rel::Le => a <= b,
            Rel::Lt => a < b,
            Rel::Ge => a >= b,
            Rel::Gt => a > b,
        }
    }
}

/// `lhs R rhs`, comparing in the order of the ambient (numeric order, which
/// is the order by logical strength).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub lhs: Formula,
    pub rel: Rel,
    pub rhs: Formula,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", render_formula(&self.lhs), self.rel.symbol(), render_formula(&self.rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Matrix {
    Atom(Atom),
    Not(Box<Matrix>),
    And(Box<Matrix>, Box<Matrix>),
    Or(Box<Matrix>, Box<Matrix>),
    Implies(Box<Matrix>, Box<Matrix>),
}

impl Matrix {
    pub fn atom(lhs: Formula, rel: Rel, rhs: Formula) -> Matrix {
        Matrix::Atom(Atom { lhs, rel, rhs })
    }

    pub fn eq(lhs: Formula, rhs: Formula) -> Matrix {
        Matrix::atom(lhs, Rel::Eq, rhs)
    }

    pub fn implies(a: Matrix, b: Matrix) -> Matrix {
        Matrix::Implies(Box::new(a), Box::new(b))
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        match self {
            Matrix::Atom(a) => vec![a],
            Matrix::Not(m) => m.atoms(),
            Matrix::And(a, b) | Matrix::Or(a, b) | Matrix::Implies(a, b) => {
                let mut v = a.atoms();
                v.extend(b.atoms());
                v
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for a in self.atoms() {
            a.lhs.collect_vars(&mut out);
            a.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn eval<A: Algebra>(&self, m: &A, asg: &Assignment<A::Elem>, order: &impl Fn(&A::Elem, &A::Elem) -> std::cmp::Ordering) -> Result<bool, EvalError> {
        Ok(match self {
            Matrix::Atom(a) => {
                let (l, r) = (eval_formula(&a.lhs, asg, m)?, eval_formula(&a.rhs, asg, m)?);
                let o = order(&l, &r);
                a.rel.holds(&o, &std::cmp::Ordering::Equal)
            }
            Matrix::Not(x) => !x.eval(m, asg, order)?,
            Matrix::And(x, y) => x.eval(m, asg, order)? && y.eval(m, asg, order)?,
            Matrix::Or(x, y) => x.eval(m, asg, order)? || y.eval(m, asg, order)?,
            Matrix::Implies(x, y) => !x.eval(m, asg, order)? || y.eval(m, asg, order)?,
        })
    }

    /// Disjunctive normal form of the negation: `self` is valid iff every
    /// returned conjunction is unsatisfiable.
    pub fn negated_dnf(&self) -> Vec<Vec<Atom>> {
        dnf(self, true)
    }
}

fn dnf(m: &Matrix, negated: bool) -> Vec<Vec<Atom>> {
    let cross = |a: Vec<Vec<Atom>>, b: Vec<Vec<Atom>>| -> Vec<Vec<Atom>> {
        a.iter()
            .flat_map(|x| b.iter().map(move |y| x.iter().chain(y).cloned().collect()))
            .collect()
    };
    match (m, negated) {
        (Matrix::Atom(a), false) => vec![vec![a.clone()]],
        (Matrix::Atom(a), true) => vec![vec![Atom {
            rel: a.rel.negate(),
            ..a.clone()
        }]],
        (Matrix::Not(x), n) => dnf(x, !n),
        (Matrix::And(x, y), false) | (Matrix::Or(x, y), true) => cross(dnf(x, negated), dnf(y, negated)),
        (Matrix::Or(x, y), false) | (Matrix::And(x, y), true) => {
            let mut v = dnf(x, negated);
            v.extend(dnf(y, negated));
            v
        }
        (Matrix::Implies(x, y), false) => {
            let mut v = dnf(x, true);
            v.extend(dnf(y, false));
            v
        }
        (Matrix::Implies(x, y), true) => cross(dnf(x, false), dnf(y, true)),
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Matrix::Atom(a) => write!(f, "{a}"),
            Matrix::Not(x) => write!(f, "~({x})"),
            Matrix::And(x, y) => write!(f, "({x}) & ({y})"),
            Matrix::Or(x, y) => write!(f, "({x}) | ({y})"),
            Matrix::Implies(x, y) => write!(f, "({x}) => ({y})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixParseError {
    #[error("no relation in `{0}`")]
    NoRelation(String),
    #[error("unbalanced parentheses in `{0}`")]
    Unbalanced(String),
    #[error("in `{0}`: {1}")]
    Term(String, String),
}

/// Byte offsets of `op` at parenthesis depth zero.
fn top_level(s: &str, op: &str) -> Result<Vec<usize>, MatrixParseError> {
    let b = s.as_bytes();
    let mut depth = 0i32;
    let mut hits = vec![];
    for i in 0..b.len() {
        match b[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(MatrixParseError::Unbalanced(s.to_string()));
        }
        if depth == 0 && b[i..].starts_with(op.as_bytes()) {
            hits.push(i);
        }
    }
    if depth != 0 {
        return Err(MatrixParseError::Unbalanced(s.to_string()));
    }
    Ok(hits)
}

fn binary(s: &str, op: &str, right: bool) -> Result<Option<(String, String)>, MatrixParseError> {
    let hits = top_level(s, op)?;
    let pick = if right { hits.first() } else { hits.last() };
    Ok(pick.map(|&i| (s[..i].to_string(), s[i + op.len()..].to_string())))
}

fn wrapped(s: &str) -> bool {
    if !(s.starts_with('(') && s.ends_with(')')) {
        return false;
    }
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && i < s.len() - 1 {
            return false;
        }
    }
    true
}

/// The relation at depth zero; `>` inside `->` and `=` inside `=>` are not
/// relations.
fn relation(s: &str) -> Result<Option<(usize, Rel, usize)>, MatrixParseError> {
    let b = s.as_bytes();
    let mut depth = 0;
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ if depth != 0 => {}
            b'!' if b.get(i + 1) == Some(&b'=') => return Ok(Some((i, Rel::Ne, 2))),
            b'<' if b.get(i + 1) == Some(&b'=') => return Ok(Some((i, Rel::Le, 2))),
            b'>' if b.get(i + 1) == Some(&b'=') => return Ok(Some((i, Rel::Ge, 2))),
            b'<' => return Ok(Some((i, Rel::Lt, 1))),
            b'>' if i == 0 || b[i - 1] != b'-' => return Ok(Some((i, Rel::Gt, 1))),
            b'=' => return Ok(Some((i, Rel::Eq, 1))),
            _ => {}
        }
        i += 1;
    }
    Ok(None)
}

fn term(s: &str) -> Result<Formula, MatrixParseError> {
    parse_formula(s).map_err(|e| MatrixParseError::Term(s.trim().to_string(), e.to_string()))
}

pub fn parse_matrix(src: &str) -> Result<Matrix, MatrixParseError> {
    let s = src.trim();
    if let Some((a, b)) = binary(s, "=>", true)? {
        return Ok(Matrix::implies(parse_matrix(&a)?, parse_matrix(&b)?));
    }
    if let Some((a, b)) = binary(s, "|", false)? {
        return Ok(Matrix::Or(Box::new(parse_matrix(&a)?), Box::new(parse_matrix(&b)?)));
    }
    if let Some((a, b)) = binary(s, "&", false)? {
        return Ok(Matrix::And(Box::new(parse_matrix(&a)?), Box::new(parse_matrix(&b)?)));
    }
    if let Some(rest) = s.strip_prefix('~') {
        return Ok(Matrix::Not(Box::new(parse_matrix(rest)?)));
    }
    match relation(s)? {
        Some((i, rel, len)) => Ok(Matrix::atom(term(&s[..i])?, rel, term(&s[i + len..])?)),
        None if wrapped(s) => parse_matrix(&s[1..s.len() - 1]),
        None => Err(MatrixParseError::NoRelation(s.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_quasi_identity() {
        let m = parse_matrix("x + y = x => y = 0").unwrap();
        let Matrix::Implies(a, b) = &m else { panic!() };
        assert_eq!(a.to_string(), "x * y = x");
        assert_eq!(b.to_string(), "y = 0");
        assert_eq!(m.vars().into_iter().collect::<Vec<_>>(), ["x", "y"]);
    }

    #[test]
    fn arrows_are_not_relations() {
        let m = parse_matrix("(x -> y) -> y = (y -> x) -> x").unwrap();
        assert!(matches!(m, Matrix::Atom(Atom { rel: Rel::Eq, .. })));
        let m = parse_matrix("((x -> y) >= x) & ~(x < 1/2)").unwrap();
        assert!(matches!(m, Matrix::And(..)));
        assert!(parse_matrix("(x = y)").is_ok());
        assert!(matches!(parse_matrix("x + y"), Err(MatrixParseError::NoRelation(_))));
    }

    #[test]
    fn negated_dnf_shapes() {
        let m = parse_matrix("x = 0 | y = 0 => x + y = 0").unwrap();
        let d = m.negated_dnf();
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|c| c.len() == 2 && c[1].rel == Rel::Ne));
    }
}
