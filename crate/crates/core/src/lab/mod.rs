//! Structure theory of finite pocrims and hoops: ideals, congruences,
//! quotients, simplicity, depth and the decomposition of subdirectly
//! irreducible hoops as ordinal sums.

mod decompose;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{AlgebraClass, FiniteAlgebra, LawMode};

pub use decompose::{monolith_and_decomposition, LabError, PropertyCheck, SIDecomposition};

/// A downward-closed submonoid, as a sorted element set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ideal(pub BTreeSet<usize>);

impl Ideal {
    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn elements(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }
}

/// `x ≥ y`.
fn ge(h: &FiniteAlgebra, x: usize, y: usize) -> bool {
    h.imp[x][y] == h.zero
}

/// The least ideal containing `xs`: the downset of the submonoid they
/// generate.
pub fn generate_ideal(h: &FiniteAlgebra, xs: &[usize]) -> Ideal {
    let mut mon: BTreeSet<usize> = xs.iter().copied().collect();
    mon.insert(h.zero);
    loop {
        let sums: Vec<usize> = mon
            .iter()
            .flat_map(|&a| mon.iter().map(move |&b| h.plus[a][b]))
            .filter(|s| !mon.contains(s))
            .collect();
        if sums.is_empty() {
            break;
        }
        mon.extend(sums);
    }
    Ideal((0..h.size).filter(|&y| mon.iter().any(|&s| ge(h, s, y))).collect())
}

pub fn is_ideal(h: &FiniteAlgebra, set: &BTreeSet<usize>) -> bool {
    set.contains(&h.zero)
        && set.iter().all(|&a| set.iter().all(|&b| set.contains(&h.plus[a][b])))
        && set.iter().all(|&a| (0..h.size).all(|y| !ge(h, a, y) || set.contains(&y)))
}

/// Every ideal, ordered by size and then elements.
pub fn all_ideals(h: &FiniteAlgebra) -> Vec<Ideal> {
    let n = h.size;
    let mut out: BTreeSet<(usize, Ideal)> = BTreeSet::new();
    for mask in 0u64..(1u64 << n) {
        let xs: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let i = generate_ideal(h, &xs);
        out.insert((i.len(), i));
    }
    out.into_iter().map(|(_, i)| i).collect()
}

/// The congruence `x θ y ⇔ x → y ∈ I ∧ y → x ∈ I` as class labels, classes
/// numbered by least member.
pub fn congruence_of(h: &FiniteAlgebra, ideal: &Ideal) -> Vec<usize> {
    let n = h.size;
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for x in 0..n {
        if label[x] != usize::MAX {
            continue;
        }
        for y in x..n {
            if ideal.contains(h.imp[x][y]) && ideal.contains(h.imp[y][x]) {
                label[y] = next;
            }
        }
        next += 1;
    }
    label
}

/// `H / I` and the projection onto it.
pub fn quotient_by_ideal(h: &FiniteAlgebra, ideal: &Ideal) -> (FiniteAlgebra, Vec<usize>) {
    let proj = congruence_of(h, ideal);
    let m = proj.iter().max().map_or(0, |&k| k + 1);
    let rep: Vec<usize> = (0..m).map(|k| proj.iter().position(|&c| c == k).unwrap()).collect();
    let table = |t: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        (0..m)
            .map(|a| (0..m).map(|b| proj[t[rep[a]][rep[b]]]).collect())
            .collect()
    };
    let q = FiniteAlgebra {
        size: m,
        zero: proj[h.zero],
        plus: table(&h.plus),
        imp: table(&h.imp),
        one: h.one.map(|o| proj[o]),
        half: h.half.as_ref().map(|hv| rep.iter().map(|&r| proj[hv[r]]).collect()),
    };
    (q, proj)
}

/// `{x | p(x) = 0}`.
pub fn kernel_of(h: &FiniteAlgebra, proj: &[usize], target_zero: usize) -> Ideal {
    Ideal((0..h.size).filter(|&x| proj[x] == target_zero).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub simple: bool,
    pub archimedean: bool,
    pub linear: bool,
    pub depths: Vec<usize>,
}

/// `x, 2x, 3x, …` up to the first repetition.
fn multiples(h: &FiniteAlgebra, x: usize) -> Vec<usize> {
    let mut out = vec![h.zero];
    loop {
        let next = h.plus[*out.last().unwrap()][x];
        if out.contains(&next) {
            return out;
        }
        out.push(next);
    }
}

/// Least `d` with `(d+1)x = dx`; `depth(0) = 0`.
pub fn depth(h: &FiniteAlgebra, x: usize) -> usize {
    let mut d = 0;
    let mut dx = h.zero;
    loop {
        let next = h.plus[dx][x];
        if next == dx {
            return d;
        }
        dx = next;
        d += 1;
    }
}

pub fn is_simple(h: &FiniteAlgebra) -> bool {
    h.size > 1 && all_ideals(h).len() == 2
}

/// Every `y` lies below some multiple of every nonzero `x`. The trivial
/// algebra is not counted as archimedean, matching the convention that it
/// is not simple.
pub fn is_archimedean(h: &FiniteAlgebra) -> bool {
    h.size > 1
        && (0..h.size).filter(|&x| x != h.zero).all(|x| {
            let ms = multiples(h, x);
            (0..h.size).all(|y| ms.iter().any(|&m| ge(h, m, y)))
        })
}

pub fn is_linear(h: &FiniteAlgebra) -> bool {
    (0..h.size).all(|x| (0..h.size).all(|y| ge(h, x, y) || ge(h, y, x)))
}

pub fn classify(h: &FiniteAlgebra) -> Classification {
    Classification {
        simple: is_simple(h),
        archimedean: is_archimedean(h),
        linear: is_linear(h),
        depths: (0..h.size).map(|x| depth(h, x)).collect(),
    }
}

/// All partitions of the carrier compatible with `+`, `→` (and halving when
/// present), found by direct search over restricted-growth strings.
pub fn congruences_by_search(h: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = h.size;
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(h: &FiniteAlgebra, i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == labels.len() {
            if compatible(h, labels) {
                out.push(labels.clone());
            }
            return;
        }
        for l in 0..=max + 1 {
            if i == 0 && l > 0 {
                break;
            }
            labels[i] = l;
            rec(h, i + 1, max.max(l), labels, out);
        }
    }
    if n > 0 {
        rec(h, 0, 0, &mut labels, &mut out);
    }
    out
}

fn compatible(h: &FiniteAlgebra, labels: &[usize]) -> bool {
    let n = h.size;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| labels[x] == labels[y])
        .collect();
    pairs.iter().all(|&(x, y)| {
        pairs.iter().all(|&(u, v)| {
            labels[h.plus[x][u]] == labels[h.plus[y][v]] && labels[h.imp[x][u]] == labels[h.imp[y][v]]
        }) && h.half.as_ref().is_none_or(|hv| labels[hv[x]] == labels[hv[y]])
    })
}

/// Subsets containing `0` and closed under `+`, `→` and halving.
pub fn subalgebras(h: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = h.size;
    (0u64..(1u64 << n))
        .filter(|m| m >> h.zero & 1 == 1)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| {
            let inside = |x: usize| s.contains(&x);
            s.iter().all(|&a| {
                s.iter().all(|&b| inside(h.plus[a][b]) && inside(h.imp[a][b]))
                    && h.half.as_ref().is_none_or(|hv| inside(hv[a]))
            })
        })
        .collect()
}

/// The subalgebra on `elems`, renumbered in the given order.
pub fn restrict(h: &FiniteAlgebra, elems: &[usize]) -> FiniteAlgebra {
    let idx = |x: usize| elems.iter().position(|&e| e == x).expect("closed subset");
    let k = elems.len();
    let table = |t: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        (0..k)
            .map(|a| (0..k).map(|b| idx(t[elems[a]][elems[b]])).collect())
            .collect()
    };
    FiniteAlgebra {
        size: k,
        zero: idx(h.zero),
        plus: table(&h.plus),
        imp: table(&h.imp),
        one: h.one.filter(|o| elems.contains(o)).map(idx),
        half: h.half.as_ref().map(|hv| elems.iter().map(|&e| idx(hv[e])).collect()),
    }
}

/// Congruence extension: for every subalgebra `C` and ideal `I` of `C`, the
/// ideal of `H` generated by `I` meets `C` exactly in `I`. Returns the first
/// violation as `(C, I)`.
pub fn check_cep(h: &FiniteAlgebra) -> Option<(Vec<usize>, Vec<usize>)> {
    for c in subalgebras(h) {
        let sub = restrict(h, &c);
        for i in all_ideals(&sub) {
            let lifted: Vec<usize> = i.0.iter().map(|&k| c[k]).collect();
            let j = generate_ideal(h, &lifted);
            let meet: BTreeSet<usize> = c.iter().copied().filter(|&x| j.contains(x)).collect();
            if meet != lifted.iter().copied().collect() {
                return Some((c, lifted));
            }
        }
    }
    None
}

/// In a simple hoop `y = x → y` forces `x = 0` or `y = 0`.
pub fn fixed_points_trivial(h: &FiniteAlgebra) -> bool {
    (0..h.size).all(|x| {
        (0..h.size).all(|y| h.imp[x][y] != y || x == h.zero || y == h.zero)
    })
}

pub fn is_hoop(h: &FiniteAlgebra) -> bool {
    AlgebraClass::Hoop.is_member(h, LawMode::Exhaustive)
}
