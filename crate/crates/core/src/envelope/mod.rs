//! The enveloping cancellative coop of a bounded coop, in tail
//! representation, and the group of differences of an unbounded one.
//!
//! A hat element `(m, a)` stands for `2^m·α(a)`; raising the exponent by
//! one halves the base, so `(m, a) = (m + 1, a/2)`.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, DenseModel};
use crate::numeric::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopeError {
    #[error("base must be a capped dense model")]
    NotCapped,
    #[error("base must be an unbounded dense model")]
    NotUnbounded,
    #[error("base fails the semi-cancellative spot-check at ({0}, {1}, {2})")]
    NotSemiCancellative(String, String, String),
    #[error("`{0}` is not an element of the base")]
    BaseMismatch(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct HatElement<S> {
    pub m: u32,
    pub a: S,
}

fn halve_n<S: Scalar>(a: &S, n: u32) -> S {
    (0..n).fold(a.clone(), |x, _| x.half())
}

fn align<S: Scalar>(x: &HatElement<S>, y: &HatElement<S>) -> (u32, S, S) {
    let m = x.m.max(y.m);
    (m, halve_n(&x.a, m - x.m), halve_n(&y.a, m - y.m))
}

impl<S: Scalar> HatElement<S> {
    pub fn new(m: u32, a: S) -> Self {
        HatElement { m, a }
    }

    /// `2^m·a` as a plain scalar.
    pub fn value(&self) -> S {
        (0..self.m).fold(self.a.clone(), |x, _| x.add(&x))
    }

    /// The representative with least exponent whose base stays below `cap`.
    pub fn normalize(&self, cap: &S) -> Self {
        let mut r = self.clone();
        while r.m > 0 && r.a.add(&r.a) <= *cap {
            r.a = r.a.add(&r.a);
            r.m -= 1;
        }
        r
    }
}

impl<S: Scalar> PartialEq for HatElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S: Scalar> Eq for HatElement<S> {}

impl<S: Scalar> PartialOrd for HatElement<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> Ord for HatElement<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        let (_, a, b) = align(self, other);
        a.cmp(&b)
    }
}

impl<S: Scalar> fmt::Display for HatElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.a)
    }
}

/// `Ĉ` over a capped dense base.
#[derive(Debug, Clone)]
pub struct HatCoop<S: Scalar> {
    base: DenseModel<S>,
    cap: S,
}

/// Triples probing `x + y = x + z`, `y ≠ z` near and away from the cap.
fn semi_cancellative_probe<S: Scalar>(base: &DenseModel<S>, cap: &S, samples: usize, seed: u64) -> Result<(), EnvelopeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = vec![
        (cap.clone(), S::zero(), cap.clone()),
        (cap.half(), cap.half(), cap.clone()),
    ];
    for _ in 0..samples {
        triples.push((base.sample(&mut rng), base.sample(&mut rng), base.sample(&mut rng)));
    }
    for (x, y, z) in triples {
        let (xy, xz) = (base.add(&x, &y), base.add(&x, &z));
        if xy == xz && y != z && xy != *cap {
            return Err(EnvelopeError::NotSemiCancellative(x.to_string(), y.to_string(), z.to_string()));
        }
    }
    Ok(())
}

impl<S: Scalar> HatCoop<S> {
    pub fn new(base: DenseModel<S>) -> Result<Self, EnvelopeError> {
        let cap = base.cap().cloned().ok_or(EnvelopeError::NotCapped)?;
        semi_cancellative_probe(&base, &cap, 256, 0)?;
        Ok(HatCoop { base, cap })
    }

    pub fn base(&self) -> &DenseModel<S> {
        &self.base
    }

    fn check(&self, x: &HatElement<S>) -> Result<(), EnvelopeError> {
        if self.base.contains(&x.a) {
            Ok(())
        } else {
            Err(EnvelopeError::BaseMismatch(x.a.to_string()))
        }
    }

    /// `α(a) = (0, a)`.
    pub fn embed(&self, a: &S) -> Result<HatElement<S>, EnvelopeError> {
        let x = HatElement::new(0, a.clone());
        self.check(&x)?;
        Ok(x)
    }

    /// `1̂ = α(1)`.
    pub fn one(&self) -> HatElement<S> {
        HatElement::new(0, self.cap.clone())
    }

    pub fn zero(&self) -> HatElement<S> {
        HatElement::new(0, S::zero())
    }

    /// At the common exponent `M`, moves to `M + 2` and adds the quartered
    /// bases, which cannot reach the annihilator.
    pub fn add(&self, x: &HatElement<S>, y: &HatElement<S>) -> Result<HatElement<S>, EnvelopeError> {
        self.check(x)?;
        self.check(y)?;
        let (m, a, b) = align(x, y);
        Ok(HatElement::new(m + 2, self.base.add(&halve_n(&a, 2), &halve_n(&b, 2))))
    }

    pub fn imp(&self, x: &HatElement<S>, y: &HatElement<S>) -> Result<HatElement<S>, EnvelopeError> {
        self.check(x)?;
        self.check(y)?;
        let (m, a, b) = align(x, y);
        Ok(HatElement::new(m, self.base.imp(&a, &b)))
    }

    pub fn half(&self, x: &HatElement<S>) -> Result<HatElement<S>, EnvelopeError> {
        self.check(x)?;
        Ok(HatElement::new(x.m, x.a.half()))
    }

    pub fn compare(&self, x: &HatElement<S>, y: &HatElement<S>) -> Result<Ordering, EnvelopeError> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.cmp(y))
    }

    /// Addition in `Ĉ` restricted to `[0, 1̂]`, capped at `1̂`.
    pub fn add_capped(&self, x: &HatElement<S>, y: &HatElement<S>) -> Result<HatElement<S>, EnvelopeError> {
        let s = self.add(x, y)?;
        Ok(if s > self.one() { self.one() } else { s })
    }

    /// The base element `a` with `α(a) = x`, when `x ≤ 1̂`.
    pub fn unembed(&self, x: &HatElement<S>) -> Option<S> {
        (*x <= self.one()).then(|| x.value())
    }

    pub fn normalize(&self, x: &HatElement<S>) -> HatElement<S> {
        x.normalize(&self.cap)
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> HatElement<S> {
        HatElement::new(rng.gen_range(0..4), self.base.sample(rng))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Pos,
    Neg,
}

/// `β(c)` or `−β(c)` in the group of differences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DiffElement<S> {
    pub sign: Sign,
    pub magnitude: S,
}

impl<S: Scalar> DiffElement<S> {
    pub fn new(sign: Sign, magnitude: S) -> Self {
        let sign = if magnitude.is_zero() { Sign::Pos } else { sign };
        DiffElement { sign, magnitude }
    }

    pub fn value(&self) -> num_rational::BigRational {
        let q = self.magnitude.to_rational();
        match self.sign {
            Sign::Pos => q,
            Sign::Neg => -q,
        }
    }
}

impl<S: Scalar> fmt::Display for DiffElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "+{}", self.magnitude),
            Sign::Neg => write!(f, "-{}", self.magnitude),
        }
    }
}

/// `C̄` over a linearly ordered cancellative base.
#[derive(Debug, Clone)]
pub struct DiffGroup<S: Scalar> {
    base: DenseModel<S>,
}

impl<S: Scalar> DiffGroup<S> {
    pub fn new(base: DenseModel<S>) -> Result<Self, EnvelopeError> {
        if base.cap().is_some() {
            return Err(EnvelopeError::NotUnbounded);
        }
        Ok(DiffGroup { base })
    }

    pub fn base(&self) -> &DenseModel<S> {
        &self.base
    }

    pub fn zero(&self) -> DiffElement<S> {
        DiffElement::new(Sign::Pos, S::zero())
    }

    pub fn embed(&self, c: &S) -> DiffElement<S> {
        DiffElement::new(Sign::Pos, c.clone())
    }

    /// `β(a) − β(b)`: `β(b → a)` when `a ≥ b`, else `−β(a → b)`.
    pub fn from_pair(&self, a: &S, b: &S) -> DiffElement<S> {
        if self.base.geq(a, b) {
            DiffElement::new(Sign::Pos, self.base.imp(b, a))
        } else {
            DiffElement::new(Sign::Neg, self.base.imp(a, b))
        }
    }

    pub fn add(&self, x: &DiffElement<S>, y: &DiffElement<S>) -> DiffElement<S> {
        match (x.sign, y.sign) {
            (s, t) if s == t => DiffElement::new(s, self.base.add(&x.magnitude, &y.magnitude)),
            (Sign::Pos, _) => self.from_pair(&x.magnitude, &y.magnitude),
            _ => self.from_pair(&y.magnitude, &x.magnitude),
        }
    }

    pub fn neg(&self, x: &DiffElement<S>) -> DiffElement<S> {
        let s = match x.sign {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        };
        DiffElement::new(s, x.magnitude.clone())
    }

    pub fn half(&self, x: &DiffElement<S>) -> DiffElement<S> {
        DiffElement::new(x.sign, x.magnitude.half())
    }

    pub fn compare(&self, x: &DiffElement<S>, y: &DiffElement<S>) -> Ordering {
        match (x.sign, y.sign) {
            (Sign::Pos, Sign::Pos) => x.magnitude.cmp(&y.magnitude),
            (Sign::Neg, Sign::Neg) => y.magnitude.cmp(&x.magnitude),
            (Sign::Pos, Sign::Neg) => Ordering::Greater,
            (Sign::Neg, Sign::Pos) => Ordering::Less,
        }
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> DiffElement<S> {
        let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
        DiffElement::new(sign, self.base.sample(rng))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnvelopeCheck {
    pub name: &'static str,
    pub samples: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnvelopeReport {
    pub base: String,
    pub seed: u64,
    pub checks: Vec<EnvelopeCheck>,
}

impl EnvelopeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }
}

struct Tally {
    name: &'static str,
    samples: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            samples: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
            self.first_failure.get_or_insert_with(what);
        }
    }

    fn done(self) -> EnvelopeCheck {
        EnvelopeCheck {
            name: self.name,
            samples: self.samples,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

/// Sampled verification of both constructions over `base` (capped) and its
/// unbounded counterpart.
pub fn verify_envelope<S: Scalar>(base: &DenseModel<S>, samples: usize, seed: u64) -> Result<EnvelopeReport, EnvelopeError> {
    let hat = HatCoop::new(base.clone())?;
    let oracle = DenseModel::<S>::unbounded();
    let diff = DiffGroup::new(oracle.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut ops = Tally::new("hat-oracle");
    let mut iso = Tally::new("hat-capped-isomorphism");
    let mut group = Tally::new("diff-group-laws");
    let mut order = Tally::new("diff-total-order");
    let mut divis = Tally::new("diff-2-divisible");
    for _ in 0..samples {
        let (x, y) = (hat.sample(&mut rng), hat.sample(&mut rng));
        let (vx, vy) = (x.value(), y.value());
        let add = hat.add(&x, &y)?;
        let imp = hat.imp(&x, &y)?;
        let half = hat.half(&x)?;
        let ok = add.value() == oracle.add(&vx, &vy)
            && imp.value() == oracle.imp(&vx, &vy)
            && half.value() == vx.half()
            && x.cmp(&y) == vx.cmp(&vy)
            && hat.normalize(&x) == x
            && hat.normalize(&x).value() == vx;
        ops.record(ok, || format!("x = {x}, y = {y}"));

        let (a, b) = (base.sample(&mut rng), base.sample(&mut rng));
        let (ea, eb) = (hat.embed(&a)?, hat.embed(&b)?);
        let ok = hat.unembed(&hat.add_capped(&ea, &eb)?) == Some(base.add(&a, &b))
            && hat.unembed(&hat.imp(&ea, &eb)?) == Some(base.imp(&a, &b))
            && hat.unembed(&hat.half(&ea)?) == Some(a.half())
            && ea.cmp(&eb) == a.cmp(&b)
            && ea <= hat.one()
            && (a.add(&b) >= *base.cap().unwrap() || hat.add(&ea, &eb)? == hat.embed(&base.add(&a, &b))?);
        iso.record(ok, || format!("a = {a}, b = {b}"));

        let (p, q, r) = (diff.sample(&mut rng), diff.sample(&mut rng), diff.sample(&mut rng));
        let z = diff.zero();
        let ok = diff.add(&diff.add(&p, &q), &r) == diff.add(&p, &diff.add(&q, &r))
            && diff.add(&p, &q) == diff.add(&q, &p)
            && diff.add(&p, &z) == p
            && diff.add(&p, &diff.neg(&p)) == z
            && diff.add(&p, &q).value() == p.value() + q.value();
        group.record(ok, || format!("{p}, {q}, {r}"));

        let (pq, qr, pr) = (diff.compare(&p, &q), diff.compare(&q, &r), diff.compare(&p, &r));
        let transitive = !(pq != Ordering::Greater && qr != Ordering::Greater) || pr != Ordering::Greater;
        let invariant = diff.compare(&diff.add(&p, &r), &diff.add(&q, &r)) == pq;
        let antisym = (pq == Ordering::Equal) == (p == q);
        let matches = pq == p.value().cmp(&q.value());
        order.record(transitive && invariant && antisym && matches, || format!("{p}, {q}, {r}"));

        let h = diff.half(&p);
        divis.record(diff.add(&h, &h) == p, || p.to_string());
    }
    Ok(EnvelopeReport {
        base: base.spec(),
        seed,
        checks: vec![ops.done(), iso.done(), group.done(), order.done(), divis.done()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Dyadic;
    use proptest::prelude::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn hat() -> HatCoop<Dyadic> {
        HatCoop::new(DenseModel::capped(d("1"))).unwrap()
    }

    fn h(m: u32, a: &str) -> HatElement<Dyadic> {
        HatElement::new(m, d(a))
    }

    #[test]
    fn hat_examples() {
        let c = hat();
        let s = c.add(&h(0, "3/4"), &h(0, "3/4")).unwrap();
        assert_eq!((s.m, s.a.clone()), (2, d("3/8")));
        assert_eq!(s.value(), d("3/2"));
        let i = c.imp(&h(0, "1/4"), &h(0, "3/4")).unwrap();
        assert_eq!((i.m, i.a), (0, d("1/2")));
        assert_eq!(c.compare(&h(1, "1/4"), &h(0, "1/2")), Ok(Ordering::Equal));
        assert_eq!(c.embed(&d("0")).unwrap(), c.zero());
        assert_eq!(c.half(&h(3, "1")).unwrap(), h(3, "1/2"));
        assert_eq!(c.normalize(&h(2, "3/8")), h(1, "3/4"));
        assert_eq!(c.normalize(&h(2, "3/8")).m, 1);
    }

    #[test]
    fn base_checks() {
        assert_eq!(HatCoop::<Dyadic>::new(DenseModel::unbounded()).unwrap_err(), EnvelopeError::NotCapped);
        assert!(matches!(hat().embed(&d("2")), Err(EnvelopeError::BaseMismatch(_))));
        assert!(matches!(hat().add(&h(0, "3/2"), &h(0, "0")), Err(EnvelopeError::BaseMismatch(_))));
        assert_eq!(DiffGroup::new(DenseModel::capped(d("1"))).unwrap_err(), EnvelopeError::NotUnbounded);
    }

    #[test]
    fn diff_examples() {
        let g = DiffGroup::new(DenseModel::<Dyadic>::unbounded()).unwrap();
        assert_eq!(g.from_pair(&d("3/4"), &d("1/4")), DiffElement::new(Sign::Pos, d("1/2")));
        assert_eq!(g.from_pair(&d("1/4"), &d("3/4")), DiffElement::new(Sign::Neg, d("1/2")));
        assert_eq!(g.from_pair(&d("5/8"), &d("5/8")), g.zero());
        assert_eq!(DiffElement::new(Sign::Neg, d("0")).sign, Sign::Pos);
    }

    #[test]
    fn sampled_verification() {
        let r = verify_envelope(&DenseModel::capped(d("1")), 300, 7).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.checks.iter().all(|c| c.samples == 300));
    }

    proptest! {
        #[test]
        fn embedding_respects_implication(a in 0u64..=256, b in 0u64..=256) {
            let c = hat();
            let (a, b) = (Dyadic::new(a, 8), Dyadic::new(b, 8));
            let lhs = c.imp(&c.embed(&a).unwrap(), &c.embed(&b).unwrap()).unwrap();
            prop_assert_eq!(lhs, c.embed(&c.base().imp(&a, &b)).unwrap());
        }

        #[test]
        fn differences_are_two_divisible(n in -512i64..512) {
            let g = DiffGroup::new(DenseModel::<Dyadic>::unbounded()).unwrap();
            let sign = if n < 0 { Sign::Neg } else { Sign::Pos };
            let x = DiffElement::new(sign, Dyadic::new(n.unsigned_abs(), 6));
            let h = g.half(&x);
            prop_assert_eq!(g.add(&h, &h), x);
        }
    }
}
