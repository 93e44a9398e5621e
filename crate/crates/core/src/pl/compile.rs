use serde::Serialize;
use thiserror::Error;

use super::linear::{feasible, is_feasible, rat, Constraint, Lin};
use crate::syntax::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Ambient {
    /// Nonnegative rationals, `x ⊕ y = x + y`.
    Nonneg,
    /// `[0, 1]`, `x ⊕ y = min(1, x + y)`.
    Interval,
}

impl Ambient {
    pub fn name(self) -> &'static str {
        match self {
            Ambient::Nonneg => "nonneg",
            Ambient::Interval => "interval",
        }
    }

    /// `nonneg`, `interval`, or `wajsberg` for both.
    pub fn parse_set(s: &str) -> Option<Vec<Ambient>> {
        match s {
            "nonneg" => Some(vec![Ambient::Nonneg]),
            "interval" => Some(vec![Ambient::Interval]),
            "wajsberg" => Some(vec![Ambient::Nonneg, Ambient::Interval]),
            _ => None,
        }
    }

    /// The domain constraints on `n` variables.
    pub fn domain(self, n: usize) -> Vec<Constraint> {
        let mut cs: Vec<Constraint> = (0..n).map(|i| Constraint::ge(Lin::var(i, n))).collect();
        if self == Ambient::Interval {
            cs.extend((0..n).map(|i| Constraint::ge(Lin::constant(rat(1, 1), n).sub(&Lin::var(i, n)))));
        }
        cs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("`1` has no meaning in the nonneg ambient")]
    UnsupportedSymbol,
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub guard: Vec<Constraint>,
    pub value: Lin,
}

/// A continuous piecewise-linear function given by closed polyhedral
/// pieces of full dimension covering the ambient domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLTerm {
    pub vars: Vec<String>,
    pub ambient: Ambient,
    pub pieces: Vec<Piece>,
}

struct Compiler<'a> {
    vars: &'a [String],
    ambient: Ambient,
    domain: Vec<Constraint>,
}

impl Compiler<'_> {
    fn n(&self) -> usize {
        self.vars.len()
    }

    /// Keeps the piece when its guard has interior points in the domain,
    /// dropping guard constraints the others already imply.
    fn keep(&self, guard: Vec<Constraint>, value: Lin, out: &mut Vec<Piece>) {
        let strict: Vec<Constraint> = self.domain.iter().chain(&guard).map(Constraint::strictly).collect();
        if !is_feasible(&strict, self.n()) {
            return;
        }
        let mut guard = guard;
        let mut i = 0;
        while i < guard.len() {
            let mut probe: Vec<Constraint> = self.domain.clone();
            probe.extend(guard.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| c.clone()));
            probe.push(guard[i].negate());
            if is_feasible(&probe, self.n()) {
                i += 1;
            } else {
                guard.remove(i);
            }
        }
        out.push(Piece { guard, value });
    }

    /// `max(0, v)` on each piece.
    fn clamp_below(&self, pieces: Vec<Piece>) -> Vec<Piece> {
        let mut out = vec![];
        for p in pieces {
            let mut pos = p.guard.clone();
            pos.push(Constraint::ge(p.value.clone()));
            self.keep(pos, p.value.clone(), &mut out);
            let mut neg = p.guard;
            neg.push(Constraint::ge(p.value.neg()));
            self.keep(neg, Lin::zero(self.n()), &mut out);
        }
        out
    }

    fn combine(&self, a: &[Piece], b: &[Piece], f: impl Fn(&Lin, &Lin) -> Lin) -> Vec<Piece> {
        let mut out = vec![];
        for p in a {
            for q in b {
                let mut guard = p.guard.clone();
                guard.extend(q.guard.iter().cloned());
                self.keep(guard, f(&p.value, &q.value), &mut out);
            }
        }
        out
    }

    fn compile(&self, t: &Formula) -> Result<Vec<Piece>, CompileError> {
        let n = self.n();
        let leaf = |value| {
            Ok(vec![Piece {
                guard: vec![],
                value,
            }])
        };
        match t {
            Formula::Zero => leaf(Lin::zero(n)),
            Formula::One => match self.ambient {
                Ambient::Interval => leaf(Lin::constant(rat(1, 1), n)),
                Ambient::Nonneg => Err(CompileError::UnsupportedSymbol),
            },
            Formula::Var(v) => {
                let i = self.vars.iter().position(|w| w == v).ok_or_else(|| CompileError::UnknownVar(v.clone()))?;
                leaf(Lin::var(i, n))
            }
            Formula::Half(a) => Ok(self
                .compile(a)?
                .into_iter()
                .map(|p| Piece {
                    guard: p.guard,
                    value: p.value.scale(&rat(1, 2)),
                })
                .collect()),
            Formula::Imp(a, b) => {
                let d = self.combine(&self.compile(a)?, &self.compile(b)?, |x, y| y.sub(x));
                Ok(self.clamp_below(d))
            }
            Formula::Conj(a, b) => {
                let s = self.combine(&self.compile(a)?, &self.compile(b)?, |x, y| x.add(y));
                Ok(match self.ambient {
                    Ambient::Nonneg => s,
                    Ambient::Interval => {
                        let one = Lin::constant(rat(1, 1), n);
                        let mut out = vec![];
                        for p in s {
                            let mut below = p.guard.clone();
                            below.push(Constraint::ge(one.sub(&p.value)));
                            self.keep(below, p.value.clone(), &mut out);
                            let mut above = p.guard;
                            above.push(Constraint::ge(p.value.sub(&one)));
                            self.keep(above, one.clone(), &mut out);
                        }
                        out
                    }
                })
            }
        }
    }
}

/// Compiles `t` with variables indexed as in `vars`.
pub fn compile_pl_over(t: &Formula, ambient: Ambient, vars: &[String]) -> Result<PLTerm, CompileError> {
    let c = Compiler {
        vars,
        ambient,
        domain: ambient.domain(vars.len()),
    };
    Ok(PLTerm {
        vars: vars.to_vec(),
        ambient,
        pieces: c.compile(t)?,
    })
}

pub fn compile_pl(t: &Formula, ambient: Ambient) -> Result<PLTerm, CompileError> {
    let vars: Vec<String> = t.vars().into_iter().collect();
    compile_pl_over(t, ambient, &vars)
}

impl PLTerm {
    pub fn n(&self) -> usize {
        self.vars.len()
    }

    /// Every piece's value lies in the ambient range over its guard.
    pub fn values_in_range(&self) -> bool {
        let n = self.n();
        let domain = self.ambient.domain(n);
        self.pieces.iter().all(|p| {
            let mut below = domain.clone();
            below.extend(p.guard.iter().cloned());
            let mut above = below.clone();
            below.push(Constraint::gt(p.value.neg()));
            let above_ok = match self.ambient {
                Ambient::Nonneg => true,
                Ambient::Interval => {
                    above.push(Constraint::gt(p.value.sub(&Lin::constant(rat(1, 1), n))));
                    !is_feasible(&above, n)
                }
            };
            !is_feasible(&below, n) && above_ok
        })
    }

    /// Every piece's value is identically zero.
    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.value.is_zero())
    }

    /// Overlapping pieces agree: checked as two strict systems per pair.
    pub fn consistent(&self) -> bool {
        let n = self.n();
        let domain = self.ambient.domain(n);
        self.pieces.iter().enumerate().all(|(i, p)| {
            self.pieces[i + 1..].iter().all(|q| {
                let mut both = domain.clone();
                both.extend(p.guard.iter().chain(&q.guard).cloned());
                let d = p.value.sub(&q.value);
                [d.clone(), d.neg()].into_iter().all(|e| {
                    let mut sys = both.clone();
                    sys.push(Constraint::gt(e));
                    !is_feasible(&sys, n)
                })
            })
        })
    }

    /// Some point of each piece, for spot-checks.
    pub fn sample_points(&self) -> Vec<Vec<num_rational::BigRational>> {
        let domain = self.ambient.domain(self.n());
        self.pieces
            .iter()
            .filter_map(|p| {
                let sys: Vec<Constraint> = domain.iter().chain(&p.guard).map(Constraint::strictly).collect();
                feasible(&sys, self.n())
            })
            .collect()
    }

    pub fn render(&self) -> Vec<String> {
        self.pieces
            .iter()
            .map(|p| {
                let g: Vec<String> = p.guard.iter().map(|c| c.render(&self.vars)).collect();
                format!("{{{}}} -> {}", g.join(", "), p.value.render(&self.vars))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{eval_formula, Assignment, DenseModel};
    use crate::syntax::parse_formula;
    use num_rational::BigRational;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn contraction_two_pieces() {
        let t = compile_pl(&f("P -o P * P"), Ambient::Interval).unwrap();
        assert_eq!(t.render(), ["{-2P + 1 >= 0} -> P", "{2P - 1 >= 0} -> -P + 1"]);
        assert!(t.values_in_range());
        assert!(t.consistent());
    }

    #[test]
    fn halving_is_linear() {
        for amb in [Ambient::Nonneg, Ambient::Interval] {
            let t = compile_pl(&f("P/2"), amb).unwrap();
            assert_eq!(t.render(), ["{} -> 1/2P"]);
        }
    }

    #[test]
    fn a5_is_zero() {
        let t = compile_pl(&f("(A/2 -o A) -o A/2"), Ambient::Interval).unwrap();
        assert!(t.is_zero());
        assert!(!t.pieces.is_empty());
    }

    #[test]
    fn one_needs_a_bound() {
        assert_eq!(compile_pl(&f("1"), Ambient::Nonneg), Err(CompileError::UnsupportedSymbol));
    }

    #[test]
    fn pieces_match_direct_evaluation() {
        let m = DenseModel::<BigRational>::capped(rat(1, 1));
        for s in ["(x -o y) -o y", "x * y -o x/2", "(x/2 * y) -o (y -o x) * 1", "x -o x * x * x"] {
            let t = compile_pl(&f(s), Ambient::Interval).unwrap();
            assert!(t.consistent(), "{s}");
            for (p, pt) in t.pieces.iter().zip(t.sample_points()) {
                let asg: Assignment<BigRational> = t.vars.iter().cloned().zip(pt.iter().cloned()).collect();
                assert_eq!(eval_formula(&f(s), &asg, &m).unwrap(), p.value.eval(&pt), "{s}");
            }
        }
    }
}
