use rand_chacha::ChaCha8Rng;

use super::Algebra;
use crate::numeric::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape<S> {
    /// Carrier `G≥0`.
    Unbounded,
    /// Carrier `[0, a]` with addition capped at `a`.
    Capped(S),
}

/// The standard dense coops over an exact scalar type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseModel<S: Scalar> {
    pub shape: Shape<S>,
}

impl<S: Scalar> DenseModel<S> {
    pub fn unbounded() -> Self {
        DenseModel {
            shape: Shape::Unbounded,
        }
    }

    /// Panics unless `cap > 0`.
    pub fn capped(cap: S) -> Self {
        assert!(cap > S::zero(), "cap must be positive");
        DenseModel {
            shape: Shape::Capped(cap),
        }
    }

    pub fn cap(&self) -> Option<&S> {
        match &self.shape {
            Shape::Unbounded => None,
            Shape::Capped(a) => Some(a),
        }
    }

    pub fn contains(&self, x: &S) -> bool {
        *x >= S::zero() && self.cap().is_none_or(|a| x <= a)
    }

    /// Upper end of the sampling range.
    pub fn sample_bound(&self) -> S {
        self.cap().cloned().unwrap_or_else(|| S::from_int(4))
    }

    pub fn spec(&self) -> String {
        match &self.shape {
            Shape::Unbounded => format!("{}-unbounded", S::KIND),
            Shape::Capped(a) => format!("{}-capped:{}", S::KIND, a),
        }
    }
}

impl<S: Scalar> Algebra for DenseModel<S> {
    type Elem = S;

    fn zero(&self) -> S {
        S::zero()
    }

    fn add(&self, x: &S, y: &S) -> S {
        let s = x.add(y);
        match &self.shape {
            Shape::Capped(a) if &s > a => a.clone(),
            _ => s,
        }
    }

    fn imp(&self, x: &S, y: &S) -> S {
        y.monus(x)
    }

    fn half(&self, x: &S) -> Option<S> {
        Some(x.half())
    }

    fn has_half(&self) -> bool {
        true
    }

    fn one(&self) -> Option<S> {
        self.cap().cloned()
    }

    fn geq(&self, x: &S, y: &S) -> bool {
        x >= y
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> S {
        S::sample(rng, &self.sample_bound(), 8)
    }

    fn show(&self, x: &S) -> String {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Dyadic;
    use num_rational::BigRational;
    use rand::SeedableRng;

    #[test]
    fn capped_addition() {
        let m = DenseModel::capped(Dyadic::from_int(1));
        let h: Dyadic = "3/4".parse().unwrap();
        assert_eq!(m.add(&h, &h), Dyadic::from_int(1));
        assert_eq!(m.neg(&h).unwrap(), "1/4".parse().unwrap());
        assert_eq!(m.spec(), "dyadic-capped:1");
    }

    #[test]
    fn natural_order_witness() {
        let m = DenseModel::<BigRational>::unbounded();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let x = m.sample(&mut rng);
            let y = m.sample(&mut rng);
            if m.geq(&x, &y) {
                let z = m.imp(&y, &x);
                assert_eq!(m.add(&y, &z), x);
            }
        }
    }

    #[test]
    fn samples_lie_in_carrier() {
        let m = DenseModel::capped(Dyadic::from_int(3));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            assert!(m.contains(&m.sample(&mut rng)));
        }
    }
}
