//! Exact rational linear arithmetic: affine forms, strict and non-strict
//! constraints, and Fourier–Motzkin feasibility with witness extraction.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numeric::fmt_rational;

/// `Σ coeffs[i]·x_i + c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lin {
    pub coeffs: Vec<BigRational>,
    pub c: BigRational,
}

impl Lin {
    pub fn constant(q: BigRational, n: usize) -> Lin {
        Lin {
            coeffs: vec![BigRational::zero(); n],
            c: q,
        }
    }

    pub fn zero(n: usize) -> Lin {
        Lin::constant(BigRational::zero(), n)
    }

    pub fn var(i: usize, n: usize) -> Lin {
        let mut l = Lin::zero(n);
        l.coeffs[i] = BigRational::one();
        l
    }

    pub fn add(&self, o: &Lin) -> Lin {
        Lin {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
            c: &self.c + &o.c,
        }
    }

    pub fn sub(&self, o: &Lin) -> Lin {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Lin {
        Lin {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
            c: &self.c * k,
        }
    }

    pub fn neg(&self) -> Lin {
        self.scale(&-BigRational::one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.c.is_zero()
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().zip(x).fold(self.c.clone(), |acc, (a, v)| acc + a * v)
    }

    pub fn render(&self, vars: &[String]) -> String {
        let mut out = String::new();
        for (a, v) in self.coeffs.iter().zip(vars) {
            if a.is_zero() {
                continue;
            }
            let sign = if a.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if a.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let m = a.abs();
            if m.is_one() {
                out.push_str(v);
            } else {
                out.push_str(&format!("{}{}", fmt_rational(&m), v));
            }
        }
        if out.is_empty() {
            return fmt_rational(&self.c);
        }
        if !self.c.is_zero() {
            let sign = if self.c.is_negative() { "-" } else { "+" };
            out.push_str(&format!(" {sign} {}", fmt_rational(&self.c.abs())));
        }
        out
    }
}

/// `lin > 0` when strict, else `lin ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub lin: Lin,
    pub strict: bool,
}

impl Constraint {
    pub fn ge(lin: Lin) -> Self {
        Constraint { lin, strict: false }
    }

    pub fn gt(lin: Lin) -> Self {
        Constraint { lin, strict: true }
    }

    /// The complement: `¬(l ≥ 0)` is `-l > 0`.
    pub fn negate(&self) -> Self {
        Constraint {
            lin: self.lin.neg(),
            strict: !self.strict,
        }
    }

    /// The interior of the half-space; constant constraints are left alone.
    pub fn strictly(&self) -> Self {
        Constraint {
            lin: self.lin.clone(),
            strict: self.strict || !self.lin.is_constant(),
        }
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        let v = self.lin.eval(x);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }

    /// Scaled so the leading nonzero coefficient has absolute value one.
    fn normalized(&self) -> Self {
        match self.lin.coeffs.iter().find(|a| !a.is_zero()) {
            Some(a) => Constraint {
                lin: self.lin.scale(&a.abs().recip()),
                strict: self.strict,
            },
            None => self.clone(),
        }
    }

    /// For constant constraints, whether they hold.
    fn constant_truth(&self) -> Option<bool> {
        self.lin.is_constant().then(|| {
            if self.strict {
                self.lin.c.is_positive()
            } else {
                !self.lin.c.is_negative()
            }
        })
    }

    pub fn render(&self, vars: &[String]) -> String {
        format!("{} {} 0", self.lin.render(vars), if self.strict { ">" } else { ">=" })
    }
}

/// Normalizes and deduplicates; `None` when a constant constraint fails.
fn tidy(cs: impl IntoIterator<Item = Constraint>) -> Option<Vec<Constraint>> {
    let mut out = BTreeSet::new();
    for c in cs {
        match c.constant_truth() {
            Some(true) => {}
            Some(false) => return None,
            None => {
                out.insert(c.normalized());
            }
        }
    }
    // A strict constraint subsumes the non-strict one with the same form.
    let strict: BTreeSet<Lin> = out.iter().filter(|c| c.strict).map(|c| c.lin.clone()).collect();
    Some(out.into_iter().filter(|c| c.strict || !strict.contains(&c.lin)).collect())
}

fn eliminate(cs: &[Constraint], k: usize) -> Option<Vec<Constraint>> {
    let (mut pos, mut neg, mut rest) = (vec![], vec![], vec![]);
    for c in cs {
        let a = &c.lin.coeffs[k];
        if a.is_positive() {
            pos.push(c);
        } else if a.is_negative() {
            neg.push(c);
        } else {
            rest.push(c.clone());
        }
    }
    for p in &pos {
        for q in &neg {
            let (a, b) = (&p.lin.coeffs[k], -&q.lin.coeffs[k]);
            let mut lin = p.lin.scale(&b).add(&q.lin.scale(a));
            lin.coeffs[k] = BigRational::zero();
            rest.push(Constraint {
                lin,
                strict: p.strict || q.strict,
            });
        }
    }
    tidy(rest)
}

type Bound = Option<(BigRational, bool)>;

fn floor(q: &BigRational) -> BigRational {
    BigRational::from_integer(q.floor().to_integer())
}

/// The rational of least denominator (then least magnitude) in
/// `lo ≤ x ≤ hi` for `lo ≥ 0`, each end strict or not, `hi` possibly
/// infinite.
fn simplest_nonneg(lo: &BigRational, lo_strict: bool, hi: Option<&BigRational>, hi_strict: bool) -> BigRational {
    let fl = floor(lo);
    let c = if lo.is_integer() && !lo_strict {
        lo.clone()
    } else {
        &fl + BigRational::one()
    };
    let fits = |h: &BigRational| c < *h || (c == *h && !hi_strict);
    let Some(hi) = hi.filter(|h| !fits(h)) else {
        return c;
    };
    let (lo_f, hi_f) = (lo - &fl, hi - &fl);
    let lo_inv = (!lo_f.is_zero()).then(|| lo_f.recip());
    let y = simplest_nonneg(&hi_f.recip(), hi_strict, lo_inv.as_ref(), lo_strict);
    fl + y.recip()
}

/// The simplest rational in the interval, preferring `0`.
pub fn simplest_in(lo: &Bound, hi: &Bound) -> BigRational {
    let zero = BigRational::zero();
    let above_lo = |x: &BigRational| lo.as_ref().is_none_or(|(l, s)| if *s { x > l } else { x >= l });
    let below_hi = |x: &BigRational| hi.as_ref().is_none_or(|(h, s)| if *s { x < h } else { x <= h });
    if above_lo(&zero) && below_hi(&zero) {
        return zero;
    }
    match lo {
        Some((l, s)) if !above_lo(&zero) || l.is_positive() => {
            simplest_nonneg(l, *s, hi.as_ref().map(|(h, _)| h), hi.as_ref().is_some_and(|(_, s)| *s))
        }
        _ => {
            let (h, s) = hi.clone().expect("interval excludes zero from above");
            let neg_lo = lo.as_ref().map(|(l, _)| -l);
            -simplest_nonneg(&-h, s, neg_lo.as_ref(), lo.as_ref().is_some_and(|(_, s)| *s))
        }
    }
}

/// A point satisfying every constraint over `n` variables, or `None`.
/// Variables are eliminated in index order and the witness is built back
/// from the last, each coordinate the simplest rational in its interval.
pub fn feasible(cs: &[Constraint], n: usize) -> Option<Vec<BigRational>> {
    let mut levels = Vec::with_capacity(n);
    let mut sys = tidy(cs.iter().cloned())?;
    for k in 0..n {
        levels.push(sys.clone());
        sys = eliminate(&sys, k)?;
    }
    debug_assert!(sys.is_empty());
    let mut x = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        let (mut lo, mut hi): (Bound, Bound) = (None, None);
        for c in &levels[k] {
            let a = &c.lin.coeffs[k];
            if a.is_zero() {
                continue;
            }
            x[k] = BigRational::zero();
            let bound = -c.lin.eval(&x) / a;
            if a.is_positive() {
                let tighter = lo.as_ref().is_none_or(|(l, s)| bound > *l || (bound == *l && c.strict && !s));
                if tighter {
                    lo = Some((bound, c.strict));
                }
            } else {
                let tighter = hi.as_ref().is_none_or(|(h, s)| bound < *h || (bound == *h && c.strict && !s));
                if tighter {
                    hi = Some((bound, c.strict));
                }
            }
        }
        x[k] = simplest_in(&lo, &hi);
    }
    debug_assert!(cs.iter().all(|c| c.holds(&x)));
    Some(x)
}

pub fn is_feasible(cs: &[Constraint], n: usize) -> bool {
    let Some(mut sys) = tidy(cs.iter().cloned()) else {
        return false;
    };
    for k in 0..n {
        match eliminate(&sys, k) {
            Some(s) => sys = s,
            None => return false,
        }
    }
    true
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
