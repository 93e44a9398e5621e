use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ac_normalize, parse_term, AlgTerm};

/// The five hoop equations, with `x`, `y`, `z` as schematic variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Equation {
    Eq1,
    Eq2,
    Eq3,
    Eq4,
    Eq5,
}

impl Equation {
    pub fn name(self) -> &'static str {
        match self {
            Equation::Eq1 => "Eq1",
            Equation::Eq2 => "Eq2",
            Equation::Eq3 => "Eq3",
            Equation::Eq4 => "Eq4",
            Equation::Eq5 => "Eq5",
        }
    }

    pub fn parse(s: &str) -> Option<Equation> {
        use Equation::*;
        [Eq1, Eq2, Eq3, Eq4, Eq5].into_iter().find(|e| e.name() == s)
    }

    /// Both sides instantiated by `s`. Missing variables are an error.
    pub fn instance(self, s: &Subst) -> Option<(AlgTerm, AlgTerm)> {
        let v = |k: &str| s.get(k).cloned();
        Some(match self {
            Equation::Eq1 => {
                let x = v("x")?;
                (AlgTerm::imp(x.clone(), x), AlgTerm::Zero)
            }
            Equation::Eq2 => (AlgTerm::imp(v("x")?, AlgTerm::Zero), AlgTerm::Zero),
            Equation::Eq3 => {
                let x = v("x")?;
                (AlgTerm::imp(AlgTerm::Zero, x.clone()), x)
            }
            Equation::Eq4 => {
                let (x, y, z) = (v("x")?, v("y")?, v("z")?);
                (
                    AlgTerm::imp(AlgTerm::Sum(vec![x.clone(), y.clone()]), z.clone()),
                    AlgTerm::imp(x, AlgTerm::imp(y, z)),
                )
            }
            Equation::Eq5 => {
                let (x, y) = (v("x")?, v("y")?);
                (
                    AlgTerm::Sum(vec![x.clone(), AlgTerm::imp(x.clone(), y.clone())]),
                    AlgTerm::Sum(vec![y.clone(), AlgTerm::imp(y, x)]),
                )
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    L2R,
    R2L,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::L2R => Direction::R2L,
            Direction::R2L => Direction::L2R,
        }
    }
}

pub type Subst = BTreeMap<String, AlgTerm>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Equation {
        eq: Equation,
        position: Vec<usize>,
        direction: Direction,
        subst: Subst,
    },
    /// Commutative-monoid rearrangement: both sides have the same normal form.
    Rearrange,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqStep {
    pub to: AlgTerm,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqChain {
    pub start: AlgTerm,
    pub steps: Vec<EqStep>,
}

impl EqChain {
    pub fn terms(&self) -> Vec<&AlgTerm> {
        std::iter::once(&self.start)
            .chain(self.steps.iter().map(|s| &s.to))
            .collect()
    }

    pub fn end(&self) -> &AlgTerm {
        self.steps.last().map_or(&self.start, |s| &s.to)
    }
}

/// Rewrites the subterm of `from` at `position` with the oriented instance.
/// The subterm must equal the redex modulo AC, or, when both are sums,
/// contain the redex's summands; a redex `0` matches any subterm by the unit
/// law.
pub fn apply_equation(
    from: &AlgTerm,
    position: &[usize],
    eq: Equation,
    direction: Direction,
    subst: &Subst,
) -> Option<AlgTerm> {
    let (l, r) = eq.instance(subst)?;
    let (lhs, rhs) = match direction {
        Direction::L2R => (l, r),
        Direction::R2L => (r, l),
    };
    let sub = ac_normalize(from.at(position)?);
    let lhs = ac_normalize(&lhs);
    let new = if sub == lhs {
        rhs
    } else if lhs == AlgTerm::Zero {
        AlgTerm::Sum(vec![sub, rhs])
    } else {
        match (&sub, &lhs) {
            (AlgTerm::Sum(ss), AlgTerm::Sum(ls)) => {
                let mut items = minus(ss, ls)?;
                items.push(rhs);
                AlgTerm::Sum(items)
            }
            _ => return None,
        }
    };
    Some(ac_normalize(&from.replace(position, new)?))
}

fn minus(big: &[AlgTerm], small: &[AlgTerm]) -> Option<Vec<AlgTerm>> {
    let mut rest = big.to_vec();
    for x in small {
        let i = rest.iter().position(|y| y == x)?;
        rest.remove(i);
    }
    Some(rest)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("step {step}: {eq} does not apply at {position:?}")]
    NoRedex {
        step: usize,
        eq: &'static str,
        position: Vec<usize>,
    },
    #[error("step {step}: expected `{expected}`, chain has `{found}`")]
    Mismatch {
        step: usize,
        expected: String,
        found: String,
    },
    #[error("chain ends at `{0}`, not 0")]
    NotZero(String),
}

/// Re-checks every step independently and that the chain ends at `0`.
pub fn verify_chain(c: &EqChain) -> Result<(), ChainError> {
    let mut cur = &c.start;
    for (i, step) in c.steps.iter().enumerate() {
        let step_no = i + 1;
        let expected = match &step.justification {
            Justification::Rearrange => ac_normalize(cur),
            Justification::Equation {
                eq,
                position,
                direction,
                subst,
            } => apply_equation(cur, position, *eq, *direction, subst).ok_or_else(|| {
                ChainError::NoRedex {
                    step: step_no,
                    eq: eq.name(),
                    position: position.clone(),
                }
            })?,
        };
        let found = ac_normalize(&step.to);
        if expected != found {
            return Err(ChainError::Mismatch {
                step: step_no,
                expected: expected.to_string(),
                found: found.to_string(),
            });
        }
        cur = &step.to;
    }
    if ac_normalize(cur) != AlgTerm::Zero {
        return Err(ChainError::NotZero(cur.to_string()));
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
struct Line {
    term: String,
    justification: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    position: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    direction: Option<Direction>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    subst: BTreeMap<String, String>,
}

/// A list of lines; the first has justification `start`.
pub fn chain_to_json(c: &EqChain) -> String {
    let mut lines = vec![Line {
        term: c.start.to_string(),
        justification: "start".into(),
        position: vec![],
        direction: None,
        subst: BTreeMap::new(),
    }];
    for s in &c.steps {
        lines.push(match &s.justification {
            Justification::Rearrange => Line {
                term: s.to.to_string(),
                justification: "Rearrange".into(),
                position: vec![],
                direction: None,
                subst: BTreeMap::new(),
            },
            Justification::Equation {
                eq,
                position,
                direction,
                subst,
            } => Line {
                term: s.to.to_string(),
                justification: eq.name().into(),
                position: position.clone(),
                direction: Some(*direction),
                subst: subst.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            },
        });
    }
    serde_json::to_string_pretty(&lines).expect("chain serializes")
}

#[derive(Debug, Error)]
pub enum ChainJsonError {
    #[error("malformed chain JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {0}: {1}")]
    Line(usize, String),
}

pub fn chain_from_json(text: &str) -> Result<EqChain, ChainJsonError> {
    let lines: Vec<Line> = serde_json::from_str(text)?;
    let bad = |i: usize, m: String| ChainJsonError::Line(i, m);
    let term = |i: usize, s: &str| parse_term(s).map_err(|e| bad(i, e.to_string()));
    let Some(first) = lines.first() else {
        return Err(bad(0, "empty chain".into()));
    };
    if first.justification != "start" {
        return Err(bad(0, "first line must be the start term".into()));
    }
    let start = term(0, &first.term)?;
    let mut steps = Vec::new();
    for (i, l) in lines.iter().enumerate().skip(1) {
        let to = term(i, &l.term)?;
        let justification = if l.justification == "Rearrange" {
            Justification::Rearrange
        } else {
            let eq = Equation::parse(&l.justification)
                .ok_or_else(|| bad(i, format!("unknown justification `{}`", l.justification)))?;
            let mut subst = Subst::new();
            for (k, v) in &l.subst {
                subst.insert(k.clone(), term(i, v)?);
            }
            Justification::Equation {
                eq,
                position: l.position.clone(),
                direction: l.direction.unwrap_or(Direction::L2R),
                subst,
            }
        };
        steps.push(EqStep { to, justification });
    }
    Ok(EqChain { start, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> AlgTerm {
        ac_normalize(&parse_term(s).unwrap())
    }

    fn subst(pairs: &[(&str, &str)]) -> Subst {
        pairs.iter().map(|(k, v)| (k.to_string(), t(v))).collect()
    }

    fn step(to: &str, eq: Equation, position: Vec<usize>, direction: Direction, s: Subst) -> EqStep {
        EqStep {
            to: t(to),
            justification: Justification::Equation {
                eq,
                position,
                direction,
                subst: s,
            },
        }
    }

    #[test]
    fn single_cwc_step() {
        let c = EqChain {
            start: t("x + (x -> y)"),
            steps: vec![step("y + (y -> x)", Equation::Eq5, vec![], Direction::L2R, subst(&[("x", "x"), ("y", "y")]))],
        };
        assert_eq!(
            apply_equation(&c.start, &[], Equation::Eq5, Direction::L2R, &subst(&[("x", "x"), ("y", "y")])),
            Some(t("y + (y -> x)"))
        );
        assert!(matches!(verify_chain(&c), Err(ChainError::NotZero(_))));
    }

    #[test]
    fn asm_chain() {
        let c = EqChain {
            start: t("b + a -> a"),
            steps: vec![
                step("b -> a -> a", Equation::Eq4, vec![], Direction::L2R, subst(&[("x", "b"), ("y", "a"), ("z", "a")])),
                step("b -> 0", Equation::Eq1, vec![1], Direction::L2R, subst(&[("x", "a")])),
                step("0", Equation::Eq2, vec![], Direction::L2R, subst(&[("x", "b")])),
            ],
        };
        assert_eq!(verify_chain(&c), Ok(()));
        let text = chain_to_json(&c);
        assert_eq!(chain_from_json(&text).unwrap(), c);
        let mut bad = c.clone();
        bad.steps[1] = step("b -> 0", Equation::Eq1, vec![0], Direction::L2R, subst(&[("x", "a")]));
        assert!(matches!(verify_chain(&bad), Err(ChainError::NoRedex { step: 2, .. })));
    }

    #[test]
    fn partial_sum_redex_and_unit() {
        let s = subst(&[("x", "a"), ("y", "b")]);
        let from = t("c + a + (a -> b) -> d");
        assert_eq!(
            apply_equation(&from, &[0], Equation::Eq5, Direction::L2R, &s),
            Some(t("c + b + (b -> a) -> d"))
        );
        let z = subst(&[("x", "c")]);
        assert_eq!(
            apply_equation(&t("a -> d"), &[0], Equation::Eq1, Direction::R2L, &z),
            Some(t("a + (c -> c) -> d"))
        );
    }
}
