use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Algebra, DenseModel, FiniteAlgebra, Shape};
use crate::numeric::{Dyadic, Scalar};

/// `(i / 2^n)·x`, computed as `i` copies of `x` halved `n` times. `None` for
/// negative `p` or when the model has no halving.
pub fn dyadic_scale<A: Algebra>(p: &Dyadic, x: &A::Elem, model: &A) -> Option<A::Elem> {
    if p.numerator().is_negative() {
        return None;
    }
    let mut y = x.clone();
    for _ in 0..p.exponent() {
        y = model.half(&y)?;
    }
    Some(times(p.numerator(), &y, model))
}

/// `k·y` by doubling.
fn times<A: Algebra>(k: &BigInt, y: &A::Elem, model: &A) -> A::Elem {
    let mut acc = model.zero();
    let mut base = y.clone();
    let mut k = k.clone();
    while !k.is_zero() {
        if k.bit(0) {
            acc = model.add(&acc, &base);
        }
        k >>= 1;
        if !k.is_zero() {
            base = model.add(&base, &base);
        }
    }
    acc
}

/// Carrier element of an ordinal sum. `Upper` never holds the zero of the
/// second summand; the shared zero is `Lower(0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Summand<X, Y> {
    Lower(X),
    Upper(Y),
}

/// The ordinal sum `C⌢D`: every nonzero element of `D` absorbs `C`.
#[derive(Debug, Clone)]
pub struct OrdinalSum<A, B> {
    pub first: A,
    pub second: B,
}

pub fn ordinal_sum<A: Algebra, B: Algebra>(first: A, second: B) -> OrdinalSum<A, B> {
    OrdinalSum { first, second }
}

impl<A: Algebra, B: Algebra> OrdinalSum<A, B> {
    pub fn upper(&self, d: B::Elem) -> Summand<A::Elem, B::Elem> {
        if d == self.second.zero() {
            Summand::Lower(self.first.zero())
        } else {
            Summand::Upper(d)
        }
    }
}

impl<A: Algebra, B: Algebra> Algebra for OrdinalSum<A, B> {
    type Elem = Summand<A::Elem, B::Elem>;

    fn zero(&self) -> Self::Elem {
        Summand::Lower(self.first.zero())
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        match (x, y) {
            (Summand::Lower(c), Summand::Lower(e)) => Summand::Lower(self.first.add(c, e)),
            (Summand::Lower(_), Summand::Upper(d)) | (Summand::Upper(d), Summand::Lower(_)) => {
                Summand::Upper(d.clone())
            }
            (Summand::Upper(d), Summand::Upper(e)) => self.upper(self.second.add(d, e)),
        }
    }

    fn imp(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        match (x, y) {
            (Summand::Lower(c), Summand::Lower(e)) => Summand::Lower(self.first.imp(c, e)),
            (Summand::Lower(_), Summand::Upper(d)) => Summand::Upper(d.clone()),
            (Summand::Upper(_), Summand::Lower(_)) => self.zero(),
            (Summand::Upper(d), Summand::Upper(e)) => self.upper(self.second.imp(d, e)),
        }
    }

    fn half(&self, x: &Self::Elem) -> Option<Self::Elem> {
        match x {
            Summand::Lower(c) => Some(Summand::Lower(self.first.half(c)?)),
            Summand::Upper(d) => Some(self.upper(self.second.half(d)?)),
        }
    }

    fn has_half(&self) -> bool {
        self.first.has_half() && self.second.has_half()
    }

    fn one(&self) -> Option<Self::Elem> {
        let o = self.second.one()?;
        if o == self.second.zero() {
            self.first.one().map(Summand::Lower)
        } else {
            Some(Summand::Upper(o))
        }
    }

    /// Zero, then the nonzero elements of the first summand, then those of
    /// the second.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let mut out = vec![self.zero()];
        let z1 = self.first.zero();
        let z2 = self.second.zero();
        out.extend(
            self.first
                .elements()?
                .into_iter()
                .filter(|c| *c != z1)
                .map(Summand::Lower),
        );
        out.extend(
            self.second
                .elements()?
                .into_iter()
                .filter(|d| *d != z2)
                .map(Summand::Upper),
        );
        Some(out)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
        if rng.gen_bool(0.5) {
            Summand::Lower(self.first.sample(rng))
        } else {
            self.upper(self.second.sample(rng))
        }
    }

    fn show(&self, x: &Self::Elem) -> String {
        match x {
            Summand::Lower(c) => format!("L{}", self.first.show(c)),
            Summand::Upper(d) => format!("U{}", self.second.show(d)),
        }
    }
}

/// `L` capped at `a`. `None` unless `model` is unbounded and `a > 0`.
pub fn cap_at<S: Scalar>(model: &DenseModel<S>, a: S) -> Option<DenseModel<S>> {
    match model.shape {
        Shape::Unbounded if a > S::zero() => Some(DenseModel::capped(a)),
        _ => None,
    }
}

/// A finite partial order on `0..n`, `leq[i][j]` meaning `i ≤ j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    pub leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Checks reflexivity, antisymmetry and transitivity.
    pub fn new(leq: Vec<Vec<bool>>) -> Option<Poset> {
        let n = leq.len();
        if leq.iter().any(|r| r.len() != n) {
            return None;
        }
        for i in 0..n {
            if !leq[i][i] {
                return None;
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return None;
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return None;
                    }
                }
            }
        }
        Some(Poset { leq })
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn chain(n: usize) -> Poset {
        Poset {
            leq: (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect(),
        }
    }

    pub fn antichain(n: usize) -> Poset {
        Poset {
            leq: (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect(),
        }
    }

    /// Random order: a random relation on a shuffled labelling, closed
    /// transitively.
    pub fn random(n: usize, rng: &mut ChaCha8Rng) -> Poset {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[perm[i]][perm[i]] = true;
            for j in i + 1..n {
                if rng.gen_bool(0.4) {
                    leq[perm[i]][perm[j]] = true;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Poset { leq }
    }
}

/// Index of the poset element `i` inside [`embed_poset`]'s output.
pub fn poset_image(i: usize) -> usize {
    2 + i
}

/// The involutive pocrim `P_X` with carrier `0 < r < X < X^⊥ < s < 1`.
///
/// Indices: `0`, `r = 1`, `x_i = 2 + i`, `x_i^⊥ = 2 + n + i`, `s = 2n + 2`,
/// `1 = 2n + 3`.
pub fn embed_poset(poset: &Poset) -> FiniteAlgebra {
    let n = poset.len();
    let size = 2 * n + 4;
    let (r, s, one) = (1, 2 * n + 2, 2 * n + 3);
    let rank = |a: usize| -> usize {
        match a {
            0 => 0,
            1 => 1,
            a if a < 2 + n => 2,
            a if a < 2 + 2 * n => 3,
            a if a == s => 4,
            _ => 5,
        }
    };
    let leq = |a: usize, b: usize| -> bool {
        let (ra, rb) = (rank(a), rank(b));
        if ra != rb {
            return ra < rb;
        }
        match ra {
            2 => poset.leq[a - 2][b - 2],
            3 => poset.leq[b - 2 - n][a - 2 - n],
            _ => a == b,
        }
    };
    let perp = |a: usize| -> usize {
        match a {
            0 => one,
            1 => s,
            a if a == s => r,
            a if a == one => 0,
            a if a < 2 + n => a + n,
            a => a - n,
        }
    };
    let plus = |a: usize, b: usize| -> usize {
        if a == 0 {
            b
        } else if b == 0 {
            a
        } else if leq(perp(b), a) {
            one
        } else {
            s
        }
    };
    let plus_t: Vec<Vec<usize>> = (0..size)
        .map(|a| (0..size).map(|b| plus(a, b)).collect())
        .collect();
    let imp_t: Vec<Vec<usize>> = (0..size)
        .map(|a| (0..size).map(|b| perp(plus(a, perp(b)))).collect())
        .collect();
    FiniteAlgebra {
        size,
        zero: 0,
        plus: plus_t,
        imp: imp_t,
        one: Some(one),
        half: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_laws, AlgebraClass, Law, LawMode};
    use rand::SeedableRng;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn scaling_examples() {
        let m = DenseModel::capped(Dyadic::from_int(1));
        let one = Dyadic::from_int(1);
        assert_eq!(dyadic_scale(&d("3/4"), &one, &m).unwrap(), d("3/4"));
        let two = dyadic_scale(&Dyadic::from_int(2), &one, &m).unwrap();
        assert_eq!(two, one);
        assert_eq!(dyadic_scale(&d("1/2"), &two, &m).unwrap(), d("1/2"));
        assert_eq!(dyadic_scale(&Dyadic::from_int(1), &one, &m).unwrap(), one);
        assert!(dyadic_scale(&d("-1/2"), &one, &m).is_none());
    }

    #[test]
    fn scaling_difference() {
        let m = DenseModel::capped(Dyadic::from_int(1));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let x = m.sample(&mut rng);
            let n = rng.gen_range(0..5u32);
            let i = rng.gen_range(0..=(1i64 << n));
            let j = rng.gen_range(i..=(1i64 << n));
            let lhs = m.imp(
                &dyadic_scale(&Dyadic::new(i, n), &x, &m).unwrap(),
                &dyadic_scale(&Dyadic::new(j, n), &x, &m).unwrap(),
            );
            assert_eq!(lhs, dyadic_scale(&Dyadic::new(j - i, n), &x, &m).unwrap());
        }
    }

    #[test]
    fn ordinal_sum_absorption() {
        let s = FiniteAlgebra::lukasiewicz(3);
        let f = FiniteAlgebra::boolean();
        let c = ordinal_sum(s.clone(), f.clone());
        let si = Summand::Lower(1);
        let fi = Summand::Upper(1);
        assert_eq!(c.imp(&c.imp(&si, &fi), &fi), c.zero());
        assert_eq!(c.imp(&c.imp(&fi, &si), &si), si);
        let r = check_laws(&c, LawMode::Exhaustive);
        assert!(r.passes_all(&AlgebraClass::Hoop.required_laws()));
        let t = FiniteAlgebra::tabulate(&c).unwrap();
        assert_eq!(t.size, 4);
        assert_eq!(t.zero, 0);
    }

    #[test]
    fn ordinal_sum_with_trivial_is_identity() {
        let d = FiniteAlgebra::lukasiewicz(4);
        let c = ordinal_sum(FiniteAlgebra::trivial(), d.clone());
        assert_eq!(FiniteAlgebra::tabulate(&c).unwrap(), d);
    }

    #[test]
    fn capping() {
        let u = DenseModel::<Dyadic>::unbounded();
        let c1 = cap_at(&u, Dyadic::from_int(1)).unwrap();
        let c3 = cap_at(&u, Dyadic::from_int(3)).unwrap();
        // `x` is an exact third of the annihilator when `¬(x + x) = x`.
        let third = |m: &DenseModel<Dyadic>, x: &Dyadic| m.neg(&m.add(x, x)).unwrap() == *x;
        let half = |m: &DenseModel<Dyadic>, x: &Dyadic| m.neg(x).unwrap() == *x;
        assert!(half(&c1, &d("1/2")));
        for k in 0..=1024 {
            assert!(!third(&c1, &Dyadic::new(k, 10)));
        }
        assert!(third(&c3, &Dyadic::from_int(1)));
        assert!(cap_at(&c1, Dyadic::from_int(1)).is_none());
        let r = check_laws(&c3, LawMode::Sampled { count: 500, seed: 4 });
        assert!(r.passes(Law::Ann) && r.passes(Law::Inv));
    }

    #[test]
    fn empty_poset() {
        let p = embed_poset(&Poset::antichain(0));
        assert_eq!(p.size, 4);
        let (r, s, one) = (1, 2, 3);
        assert_eq!(p.add(&r, &r), s);
        assert_eq!(p.add(&r, &s), one);
        let rep = check_laws(&p, LawMode::Exhaustive);
        assert!(rep.passes_all(&AlgebraClass::InvolutivePocrim.required_laws()));
    }

    #[test]
    fn two_chain() {
        let p = embed_poset(&Poset::chain(2));
        assert_eq!(p.size, 8);
        let rep = check_laws(&p, LawMode::Exhaustive);
        assert!(rep.passes_all(&AlgebraClass::InvolutivePocrim.required_laws()));
        let m1 = rep.outcomes.iter().find(|o| o.law == Law::M1).unwrap();
        assert_eq!(m1.checked, 512);
        assert!(p.geq(&poset_image(1), &poset_image(0)));
        assert!(!p.geq(&poset_image(0), &poset_image(1)));
    }

    #[test]
    fn random_posets_are_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 0..6 {
            let p = Poset::random(n, &mut rng);
            assert!(Poset::new(p.leq.clone()).is_some());
        }
        assert!(Poset::new(vec![vec![true, true], vec![true, true]]).is_none());
    }
}
