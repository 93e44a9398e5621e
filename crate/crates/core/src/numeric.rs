//! Exact scalars for the dense models: dyadic rationals and rationals.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// `num / 2^exp`, normalized so that `num` is odd or `exp` is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut d = Dyadic {
            num: num.into(),
            exp,
        };
        d.normalize();
        d
    }

    pub fn from_int(i: i64) -> Self {
        Dyadic::new(i, 0)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num.is_even() {
            self.num >>= 1;
            self.exp -= 1;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exp.max(other.exp);
        (
            &self.num << (e - self.exp),
            &other.num << (e - other.exp),
            e,
        )
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp)
    }

    /// `Some` when `q` has a power-of-two denominator.
    pub fn from_rational(q: &BigRational) -> Option<Dyadic> {
        let d = q.denom();
        let bits = d.bits();
        if bits == 0 || (BigInt::one() << (bits - 1)) != *d {
            return None;
        }
        Some(Dyadic::new(q.numer().clone(), (bits - 1) as u32))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar `{0}`")]
pub struct ScalarParseError(pub String);

fn parse_rational(s: &str) -> Result<BigRational, ScalarParseError> {
    let bad = || ScalarParseError(s.to_string());
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        BigInt::from_str(t)
            .map(BigRational::from_integer)
            .map_err(|_| bad())
    }
}

impl FromStr for Dyadic {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let q = parse_rational(s)?;
        Dyadic::from_rational(&q).ok_or_else(|| ScalarParseError(s.to_string()))
    }
}

/// Ordered-field-like operations shared by the two scalar kinds.
pub trait Scalar: Clone + Ord + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync {
    const KIND: &'static str;
    fn zero() -> Self;
    fn from_int(i: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn half(&self) -> Self;
    fn mul_int(&self, k: u64) -> Self;
    fn to_rational(&self) -> BigRational;
    fn from_rational(q: &BigRational) -> Option<Self>;
    fn parse(s: &str) -> Result<Self, ScalarParseError>;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    /// Truncated subtraction `max(0, self - other)`.
    fn monus(&self, other: &Self) -> Self {
        if self > other {
            self.sub(other)
        } else {
            Self::zero()
        }
    }

    /// A random value in `[0, bound]` with denominator at most `2^max_exp`
    /// (or at most `2^max_exp` for rationals, using an arbitrary denominator).
    fn sample<R: Rng>(rng: &mut R, bound: &Self, max_exp: u32) -> Self;
}

impl Scalar for Dyadic {
    const KIND: &'static str = "dyadic";

    fn zero() -> Self {
        Dyadic::new(0, 0)
    }
    fn from_int(i: i64) -> Self {
        Dyadic::from_int(i)
    }
    fn add(&self, other: &Self) -> Self {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e)
    }
    fn sub(&self, other: &Self) -> Self {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a - b, e)
    }
    fn half(&self) -> Self {
        Dyadic::new(self.num.clone(), self.exp + 1)
    }
    fn mul_int(&self, k: u64) -> Self {
        Dyadic::new(&self.num * k, self.exp)
    }
    fn to_rational(&self) -> BigRational {
        Dyadic::to_rational(self)
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Dyadic::from_rational(q)
    }
    fn parse(s: &str) -> Result<Self, ScalarParseError> {
        s.parse()
    }
    fn sample<R: Rng>(rng: &mut R, bound: &Self, max_exp: u32) -> Self {
        let e = rng.gen_range(0..=max_exp);
        let scaled = Dyadic::new(bound.num.clone(), bound.exp).mul_int(1u64 << e);
        let top: BigInt = num_integer::Integer::div_floor(
            &scaled.num,
            &(BigInt::one() << scaled.exp),
        );
        let top = u64::try_from(top).unwrap_or(u64::MAX / 2);
        Dyadic::new(rng.gen_range(0..=top), e)
    }
}

impl Scalar for BigRational {
    const KIND: &'static str = "rational";

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn from_int(i: i64) -> Self {
        BigRational::from_integer(BigInt::from(i))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn half(&self) -> Self {
        self / BigInt::from(2)
    }
    fn mul_int(&self, k: u64) -> Self {
        self * BigInt::from(k)
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
    fn parse(s: &str) -> Result<Self, ScalarParseError> {
        parse_rational(s)
    }
    fn sample<R: Rng>(rng: &mut R, bound: &Self, max_exp: u32) -> Self {
        let den: u64 = rng.gen_range(1..=(1u64 << max_exp.min(16)));
        let top = (bound * BigInt::from(den)).floor().to_integer();
        let top = u64::try_from(top).unwrap_or(u64::MAX / 2);
        BigRational::new(BigInt::from(rng.gen_range(0..=top)), BigInt::from(den))
    }
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational_str(s: &str) -> Result<BigRational, ScalarParseError> {
    parse_rational(s)
}
