use rayon::prelude::*;
use thiserror::Error;

use super::{
    check_sequent, enumerate_class, supports_sequent, Algebra, AlgebraClass, Assignment,
    DenseModel, EvalError, Model, Value,
};
use crate::numeric::Dyadic;
use crate::syntax::Sequent;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub model: Model,
    pub assignment: Assignment<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("no countermodel found within budget {0}")]
    Exhausted(usize),
    #[error("the sequent uses connectives the class does not interpret: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Largest grid the coop search will scan at one resolution.
const GRID_LIMIT: u64 = 4_000_000;

/// Looks for a member of `class` and an assignment falsifying `s`.
///
/// Pocrim and hoop classes are searched by enumerating finite algebras of
/// size `1..=budget` (in canonical order). Coop classes, which have no
/// nontrivial finite members, are searched over dyadic grids of step `2^-k`
/// for `k = 2..=budget` in `Capped(1)` and, for unbounded classes, in
/// `Unbounded` restricted to `[0, 2]`. The first witness in that order is
/// returned, independent of thread scheduling.
pub fn search_countermodel(
    s: &Sequent,
    class: AlgebraClass,
    budget: usize,
) -> Result<Countermodel, SearchError> {
    let lang = s.language();
    if lang.allows_one() && !class.bounded() {
        return Err(SearchError::Unsupported("1 in an unbounded class".into()));
    }
    if lang.allows_half() && !class.is_coop() {
        return Err(SearchError::Unsupported("halving outside coops".into()));
    }
    let vars: Vec<String> = s.vars().into_iter().collect();
    if class.is_coop() {
        grid_search(s, class, &vars, budget)
    } else {
        for n in 1..=budget {
            for a in enumerate_class(class, n).into_iter().filter(|a| a.size == n) {
                if !supports_sequent(s, &a) {
                    continue;
                }
                if let Some(asg) = first_falsifier(s, &a, &vars, &(0..n).collect::<Vec<_>>())? {
                    return Ok(Countermodel {
                        assignment: asg.into_iter().map(|(k, v)| (k, Value::Index(v))).collect(),
                        model: Model::Finite(a),
                    });
                }
            }
        }
        Err(SearchError::Exhausted(budget))
    }
}

/// First falsifying assignment in lexicographic order over `values`.
fn first_falsifier<A: Algebra>(
    s: &Sequent,
    model: &A,
    vars: &[String],
    values: &[A::Elem],
) -> Result<Option<Assignment<A::Elem>>, EvalError> {
    let n = values.len() as u64;
    let total = n.pow(vars.len() as u32);
    let found = (0..total)
        .into_par_iter()
        .map(|code| {
            let mut c = code;
            let mut idx = vec![0usize; vars.len()];
            for slot in idx.iter_mut().rev() {
                *slot = (c % n) as usize;
                c /= n;
            }
            let asg: Assignment<A::Elem> = vars
                .iter()
                .cloned()
                .zip(idx.iter().map(|&i| values[i].clone()))
                .collect();
            match check_sequent(s, &asg, model) {
                Ok(true) => None,
                Ok(false) => Some(Ok(asg)),
                Err(e) => Some(Err(e)),
            }
        })
        .find_first(|r| r.is_some())
        .flatten();
    found.transpose()
}

/// Grid points `i / 2^k` in `[0, top]`, coarsest first.
fn grid(k: u32, top: i64) -> Vec<Dyadic> {
    let mut pts: Vec<Dyadic> = (0..=(top << k)).map(|i| Dyadic::new(i, k)).collect();
    pts.sort_by(|a, b| {
        a.exponent()
            .cmp(&b.exponent())
            .then_with(|| a.cmp(b))
    });
    pts
}

fn grid_search(
    s: &Sequent,
    class: AlgebraClass,
    vars: &[String],
    budget: usize,
) -> Result<Countermodel, SearchError> {
    let mut models = vec![(DenseModel::capped(Dyadic::from_int(1)), 1)];
    if !class.bounded() {
        models.push((DenseModel::unbounded(), 2));
    }
    for k in 2..=budget.max(2) as u32 {
        for (m, top) in &models {
            let pts = grid(k, *top);
            if (pts.len() as u64).checked_pow(vars.len() as u32).is_none_or(|t| t > GRID_LIMIT) {
                continue;
            }
            if let Some(asg) = first_falsifier(s, m, vars, &pts)? {
                return Ok(Countermodel {
                    model: Model::Dyadic(m.clone()),
                    assignment: asg.into_iter().map(|(k, v)| (k, Value::Dyadic(v))).collect(),
                });
            }
        }
    }
    Err(SearchError::Exhausted(budget))
}

/// Re-checks a countermodel: the model belongs to the class and the
/// sequent fails under the assignment.
pub fn verify_countermodel(s: &Sequent, class: AlgebraClass, c: &Countermodel) -> bool {
    let in_class = match &c.model {
        Model::Finite(a) => class.is_member(a, super::LawMode::Exhaustive),
        m => class.is_member(m, super::LawMode::Sampled { count: 500, seed: 0 }),
    };
    in_class && check_sequent(s, &c.assignment, &c.model) == Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    #[test]
    fn csd_fails_in_godel_chain() {
        let s = parse_sequent("(P -o Q) -o Q |- (Q -o P) -o P").unwrap();
        let c = search_countermodel(&s, AlgebraClass::Hoop, 3).unwrap();
        assert!(verify_countermodel(&s, AlgebraClass::Hoop, &c));
        let Model::Finite(a) = &c.model else { panic!() };
        assert_eq!(a.size, 3);
        assert!((0..3).all(|x| a.plus[x][x] == x));
        let p = &c.assignment["P"];
        let q = &c.assignment["Q"];
        assert_eq!(q, &Value::Index(a.top().unwrap()));
        assert_ne!(p, &Value::Index(0));
        assert_ne!(p, q);
    }

    #[test]
    fn contraction_fails_in_unit_interval() {
        let s = parse_sequent("P |- P * P").unwrap();
        let c = search_countermodel(&s, AlgebraClass::Coop, 8).unwrap();
        assert_eq!(c.assignment["P"], Value::Dyadic("1/2".parse().unwrap()));
        assert!(c.model.is_capped());
        assert!(verify_countermodel(&s, AlgebraClass::Coop, &c));
    }

    #[test]
    fn valid_sequent_exhausts() {
        let s = parse_sequent("|- P -o P").unwrap();
        for class in [AlgebraClass::Pocrim, AlgebraClass::Hoop, AlgebraClass::InvolutiveCoop] {
            assert_eq!(search_countermodel(&s, class, 3), Err(SearchError::Exhausted(3)));
        }
    }

    #[test]
    fn unsupported_connectives() {
        let s = parse_sequent("|- P/2 -o P").unwrap();
        assert!(matches!(
            search_countermodel(&s, AlgebraClass::Hoop, 2),
            Err(SearchError::Unsupported(_))
        ));
    }
}
