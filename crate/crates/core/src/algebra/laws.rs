use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Algebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    M1,
    M2,
    M3,
    O1,
    O2,
    O3,
    O4,
    Le,
    R,
    Cwc,
    Idem,
    Ann,
    Inv,
    H,
    Csd,
}

impl Law {
    pub const ALL: [Law; 15] = [
        Law::M1,
        Law::M2,
        Law::M3,
        Law::O1,
        Law::O2,
        Law::O3,
        Law::O4,
        Law::Le,
        Law::R,
        Law::Cwc,
        Law::Idem,
        Law::Ann,
        Law::Inv,
        Law::H,
        Law::Csd,
    ];

    /// The pocrim axioms.
    pub const POCRIM: [Law; 9] = [
        Law::M1,
        Law::M2,
        Law::M3,
        Law::O1,
        Law::O2,
        Law::O3,
        Law::O4,
        Law::Le,
        Law::R,
    ];

    pub fn arity(self) -> usize {
        match self {
            Law::M3 | Law::O1 | Law::Le | Law::Idem | Law::Ann | Law::Inv | Law::H => 1,
            Law::M2 | Law::O3 | Law::Cwc | Law::Csd => 2,
            Law::M1 | Law::O2 | Law::O4 | Law::R => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Law::M1 => "m1",
            Law::M2 => "m2",
            Law::M3 => "m3",
            Law::O1 => "o1",
            Law::O2 => "o2",
            Law::O3 => "o3",
            Law::O4 => "o4",
            Law::Le => "le",
            Law::R => "r",
            Law::Cwc => "cwc",
            Law::Idem => "idem",
            Law::Ann => "ann",
            Law::Inv => "inv",
            Law::H => "h",
            Law::Csd => "csd",
        }
    }

    pub fn parse(s: &str) -> Option<Law> {
        Law::ALL.into_iter().find(|l| l.name() == s)
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether `law` holds at the tuple `t` (of length `law.arity()`); `None`
/// when the law needs an operation the algebra lacks.
pub fn law_holds<A: Algebra>(a: &A, law: Law, t: &[A::Elem]) -> Option<bool> {
    let ge = |x: &A::Elem, y: &A::Elem| a.geq(x, y);
    let add = |x: &A::Elem, y: &A::Elem| a.add(x, y);
    let imp = |x: &A::Elem, y: &A::Elem| a.imp(x, y);
    let zero = a.zero();
    Some(match law {
        Law::M1 => add(&add(&t[0], &t[1]), &t[2]) == add(&t[0], &add(&t[1], &t[2])),
        Law::M2 => add(&t[0], &t[1]) == add(&t[1], &t[0]),
        Law::M3 => add(&t[0], &zero) == t[0],
        Law::O1 => ge(&t[0], &t[0]),
        Law::O2 => !(ge(&t[0], &t[1]) && ge(&t[1], &t[2])) || ge(&t[0], &t[2]),
        Law::O3 => !(ge(&t[0], &t[1]) && ge(&t[1], &t[0])) || t[0] == t[1],
        Law::O4 => !ge(&t[0], &t[1]) || ge(&add(&t[0], &t[2]), &add(&t[1], &t[2])),
        Law::Le => ge(&t[0], &zero),
        Law::R => ge(&add(&t[0], &t[1]), &t[2]) == ge(&t[0], &imp(&t[1], &t[2])),
        Law::Cwc => {
            add(&t[0], &imp(&t[0], &t[1])) == add(&t[1], &imp(&t[1], &t[0]))
        }
        Law::Idem => add(&t[0], &t[0]) == t[0],
        Law::Ann => {
            let one = a.one()?;
            add(&t[0], &one) == one
        }
        Law::Inv => {
            let nx = a.neg(&t[0])?;
            a.neg(&nx)? == t[0]
        }
        Law::H => {
            let h = a.half(&t[0])?;
            h == imp(&h, &t[0])
        }
        Law::Csd => imp(&imp(&t[0], &t[1]), &t[1]) == imp(&imp(&t[1], &t[0]), &t[0]),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LawStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawOutcome {
    pub law: Law,
    pub status: LawStatus,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub mode: String,
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    pub fn status(&self, law: Law) -> LawStatus {
        self.outcomes
            .iter()
            .find(|o| o.law == law)
            .map(|o| o.status)
            .unwrap_or(LawStatus::NotApplicable)
    }

    pub fn passes(&self, law: Law) -> bool {
        self.status(law) == LawStatus::Pass
    }

    pub fn passes_all(&self, laws: &[Law]) -> bool {
        laws.iter().all(|&l| self.passes(l))
    }

    pub fn failures(&self) -> Vec<&LawOutcome> {
        self.outcomes
            .iter()
            .filter(|o| o.status == LawStatus::Fail)
            .collect()
    }
}

fn tuples<E: Clone>(elems: &[E], k: usize) -> impl Iterator<Item = Vec<E>> + '_ {
    let n = elems.len();
    let total = n.pow(k as u32);
    (0..total).map(move |mut code| {
        let mut t = Vec::with_capacity(k);
        for _ in 0..k {
            t.push(elems[code % n].clone());
            code /= n;
        }
        t
    })
}

/// Checks every law in `laws`, returning the first violating tuple as the
/// witness for each failing law.
pub fn check_laws_subset<A: Algebra>(a: &A, laws: &[Law], mode: LawMode) -> LawReport {
    let mut outcomes = Vec::new();
    let elems = a.elements();
    for &law in laws {
        let k = law.arity();
        let mut checked = 0u64;
        let mut status = LawStatus::Pass;
        let mut witness = None;
        let mut visit = |t: &[A::Elem]| -> bool {
            match law_holds(a, law, t) {
                None => {
                    status = LawStatus::NotApplicable;
                    false
                }
                Some(true) => {
                    checked += 1;
                    true
                }
                Some(false) => {
                    checked += 1;
                    status = LawStatus::Fail;
                    witness = Some(t.iter().map(|x| a.show(x)).collect());
                    false
                }
            }
        };
        match mode {
            LawMode::Exhaustive => {
                let elems = elems.as_ref().expect("exhaustive checking needs a finite carrier");
                for t in tuples(elems, k) {
                    if !visit(&t) {
                        break;
                    }
                }
            }
            LawMode::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (law as u64).wrapping_mul(0x9e37));
                for _ in 0..count {
                    let t: Vec<A::Elem> = (0..k).map(|_| a.sample(&mut rng)).collect();
                    if !visit(&t) {
                        break;
                    }
                }
            }
        }
        outcomes.push(LawOutcome {
            law,
            status,
            checked,
            witness,
        });
    }
    let mode = match mode {
        LawMode::Exhaustive => "exhaustive".to_string(),
        LawMode::Sampled { count, seed } => format!("sampled:{count}:{seed}"),
    };
    LawReport { mode, outcomes }
}

pub fn check_laws<A: Algebra>(a: &A, mode: LawMode) -> LawReport {
    check_laws_subset(a, &Law::ALL, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{DenseModel, FiniteAlgebra};
    use crate::numeric::Dyadic;

    #[test]
    fn boolean_hoop() {
        let r = check_laws(&FiniteAlgebra::boolean(), LawMode::Exhaustive);
        assert!(r.passes_all(&Law::POCRIM));
        for l in [Law::Cwc, Law::Idem, Law::Ann, Law::Inv, Law::Csd] {
            assert!(r.passes(l), "{l}");
        }
        assert_eq!(r.status(Law::H), LawStatus::NotApplicable);
    }

    #[test]
    fn godel_chain_is_not_involutive() {
        let g = FiniteAlgebra::godel(3);
        let r = check_laws(&g, LawMode::Exhaustive);
        assert!(r.passes_all(&Law::POCRIM));
        assert!(r.passes(Law::Idem));
        assert!(!r.passes(Law::Inv));
        assert!(!r.passes(Law::Csd));
        let w = r.outcomes.iter().find(|o| o.law == Law::Inv).unwrap();
        let x: usize = w.witness.as_ref().unwrap()[0].parse().unwrap();
        assert_eq!(law_holds(&g, Law::Inv, &[x]), Some(false));
    }

    #[test]
    fn unit_interval_passes_everything_but_idempotence() {
        let m = DenseModel::capped(Dyadic::from_int(1));
        let r = check_laws(&m, LawMode::Sampled { count: 2000, seed: 5 });
        for l in Law::ALL {
            if l == Law::Idem {
                assert!(!r.passes(l));
            } else {
                assert!(r.passes(l), "{l}");
            }
        }
    }

    #[test]
    fn broken_table_yields_verified_witness() {
        let mut a = FiniteAlgebra::lukasiewicz(3);
        a.plus[1][2] = 1;
        let r = check_laws(&a, LawMode::Exhaustive);
        for o in r.failures() {
            let t: Vec<usize> = o
                .witness
                .as_ref()
                .unwrap()
                .iter()
                .map(|s| s.parse().unwrap())
                .collect();
            assert_eq!(law_holds(&a, o.law, &t), Some(false));
        }
        assert!(!r.passes(Law::M2));
    }
}
