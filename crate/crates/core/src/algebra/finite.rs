use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Algebra;

/// An algebra given by operation tables over the carrier `0..size`.
///
/// Class membership is never assumed from the tables; it is established by
/// [`check_laws`](super::check_laws).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAlgebra {
    pub size: usize,
    pub zero: usize,
    pub plus: Vec<Vec<usize>>,
    pub imp: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("empty carrier")]
    Empty,
    #[error("table `{0}` has the wrong shape")]
    Shape(&'static str),
    #[error("entry out of range in `{0}`")]
    Range(&'static str),
    #[error("invalid JSON: {0}")]
    Json(String),
}

impl FiniteAlgebra {
    pub fn validate(&self) -> Result<(), TableError> {
        let n = self.size;
        if n == 0 {
            return Err(TableError::Empty);
        }
        if self.zero >= n {
            return Err(TableError::Range("zero"));
        }
        for (name, t) in [("plus", &self.plus), ("imp", &self.imp)] {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(TableError::Shape(name));
            }
            if t.iter().flatten().any(|&v| v >= n) {
                return Err(TableError::Range(name));
            }
        }
        if self.one.is_some_and(|o| o >= n) {
            return Err(TableError::Range("one"));
        }
        if let Some(h) = &self.half {
            if h.len() != n {
                return Err(TableError::Shape("half"));
            }
            if h.iter().any(|&v| v >= n) {
                return Err(TableError::Range("half"));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, TableError> {
        let a: FiniteAlgebra =
            serde_json::from_str(text).map_err(|e| TableError::Json(e.to_string()))?;
        a.validate()?;
        Ok(a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tables serialize")
    }

    /// Tabulates a finite algebra, numbering elements in the order given by
    /// `elements()`. The zero must come first.
    pub fn tabulate<A: Algebra>(a: &A) -> Option<FiniteAlgebra> {
        let elems = a.elements()?;
        let index = |x: &A::Elem| elems.iter().position(|e| e == x).expect("closed carrier");
        let n = elems.len();
        let table = |f: &dyn Fn(&A::Elem, &A::Elem) -> A::Elem| -> Vec<Vec<usize>> {
            (0..n)
                .map(|i| (0..n).map(|j| index(&f(&elems[i], &elems[j]))).collect())
                .collect()
        };
        let plus = table(&|x, y| a.add(x, y));
        let imp = table(&|x, y| a.imp(x, y));
        let half = if a.has_half() {
            Some(elems.iter().map(|x| index(&a.half(x).unwrap())).collect())
        } else {
            None
        };
        Some(FiniteAlgebra {
            size: n,
            zero: index(&a.zero()),
            plus,
            imp,
            one: a.one().map(|o| index(&o)),
            half,
        })
    }

    /// The trivial one-element algebra.
    pub fn trivial() -> Self {
        FiniteAlgebra {
            size: 1,
            zero: 0,
            plus: vec![vec![0]],
            imp: vec![vec![0]],
            one: Some(0),
            half: None,
        }
    }

    /// The two-element Boolean hoop `{0, 1}`.
    pub fn boolean() -> Self {
        FiniteAlgebra {
            size: 2,
            zero: 0,
            plus: vec![vec![0, 1], vec![1, 1]],
            imp: vec![vec![0, 1], vec![0, 0]],
            one: Some(1),
            half: None,
        }
    }

    /// The Łukasiewicz chain `{0, 1/(n-1), …, 1}` with capped addition.
    pub fn lukasiewicz(n: usize) -> Self {
        assert!(n >= 1);
        let top = n - 1;
        FiniteAlgebra {
            size: n,
            zero: 0,
            plus: (0..n).map(|i| (0..n).map(|j| (i + j).min(top)).collect()).collect(),
            imp: (0..n).map(|i| (0..n).map(|j| j.saturating_sub(i)).collect()).collect(),
            one: Some(top),
            half: None,
        }
    }

    /// The Gödel chain `0 < 1 < … < n-1` with `+ = max`.
    pub fn godel(n: usize) -> Self {
        assert!(n >= 1);
        FiniteAlgebra {
            size: n,
            zero: 0,
            plus: (0..n).map(|i| (0..n).map(|j| i.max(j)).collect()).collect(),
            imp: (0..n)
                .map(|i| (0..n).map(|j| if i >= j { 0 } else { j }).collect())
                .collect(),
            one: Some(n - 1),
            half: None,
        }
    }

    /// Direct product, with pairs `(i, j)` numbered `i * other.size + j`.
    pub fn product(&self, other: &FiniteAlgebra) -> FiniteAlgebra {
        let m = other.size;
        let n = self.size * m;
        let split = |k: usize| (k / m, k % m);
        let op = |t1: &Vec<Vec<usize>>, t2: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            let (a, b) = split(x);
                            let (c, d) = split(y);
                            t1[a][c] * m + t2[b][d]
                        })
                        .collect()
                })
                .collect()
        };
        FiniteAlgebra {
            size: n,
            zero: self.zero * m + other.zero,
            plus: op(&self.plus, &other.plus),
            imp: op(&self.imp, &other.imp),
            one: match (self.one, other.one) {
                (Some(a), Some(b)) => Some(a * m + b),
                _ => None,
            },
            half: match (&self.half, &other.half) {
                (Some(h1), Some(h2)) => Some(
                    (0..n)
                        .map(|x| {
                            let (a, b) = split(x);
                            h1[a] * m + h2[b]
                        })
                        .collect(),
                ),
                _ => None,
            },
        }
    }

    /// The greatest element, if it exists.
    pub fn top(&self) -> Option<usize> {
        (0..self.size).find(|&t| (0..self.size).all(|x| self.imp[t][x] == self.zero))
    }

    /// Copy with `one` set to the top element when the top is an annihilator.
    pub fn with_annihilator(mut self) -> Self {
        if let Some(t) = self.top() {
            if (0..self.size).all(|x| self.plus[x][t] == t) {
                self.one = Some(t);
            }
        }
        self
    }
}

impl Algebra for FiniteAlgebra {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn add(&self, x: &usize, y: &usize) -> usize {
        self.plus[*x][*y]
    }

    fn imp(&self, x: &usize, y: &usize) -> usize {
        self.imp[*x][*y]
    }

    fn half(&self, x: &usize) -> Option<usize> {
        self.half.as_ref().map(|h| h[*x])
    }

    fn has_half(&self) -> bool {
        self.half.is_some()
    }

    fn one(&self) -> Option<usize> {
        self.one
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.size).collect())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..self.size)
    }

    fn show(&self, x: &usize) -> String {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let a = FiniteAlgebra::lukasiewicz(3);
        let b = FiniteAlgebra::from_json(&a.to_json()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_tables() {
        let mut a = FiniteAlgebra::boolean();
        a.plus[0][1] = 5;
        assert_eq!(a.validate(), Err(TableError::Range("plus")));
        let mut a = FiniteAlgebra::boolean();
        a.imp.pop();
        assert_eq!(a.validate(), Err(TableError::Shape("imp")));
        assert!(FiniteAlgebra::from_json("{\"size\": 1}").is_err());
    }

    #[test]
    fn chains() {
        let l = FiniteAlgebra::lukasiewicz(3);
        assert_eq!(l.add(&1, &1), 2);
        assert_eq!(l.imp(&1, &2), 1);
        let g = FiniteAlgebra::godel(3);
        assert_eq!(g.add(&1, &1), 1);
        assert_eq!(g.imp(&2, &1), 0);
        assert_eq!(g.top(), Some(2));
    }

    #[test]
    fn product_of_booleans() {
        let p = FiniteAlgebra::boolean().product(&FiniteAlgebra::boolean());
        assert_eq!(p.size, 4);
        assert_eq!(p.add(&1, &2), 3);
        assert_eq!(p.one, Some(3));
    }
}
