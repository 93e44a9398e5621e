//! Finite model enumeration up to isomorphism.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::laws::{check_laws_subset, law_holds, LawMode};
use super::{AlgebraClass, FiniteAlgebra, Law};

/// All commutative monoid tables on `0..n` with identity `0`.
fn monoids(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut t = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        t[0][i] = i;
        t[i][0] = i;
    }
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    fill_monoid(&mut t, &cells, 0, &mut out);
    out
}

fn assoc_ok(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    for x in 0..n {
        for y in 0..n {
            let xy = t[x][y];
            if xy == usize::MAX {
                continue;
            }
            for z in 0..n {
                let yz = t[y][z];
                if yz == usize::MAX {
                    continue;
                }
                let l = t[xy][z];
                let r = t[x][yz];
                if l != usize::MAX && r != usize::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn fill_monoid(t: &mut Vec<Vec<usize>>, cells: &[(usize, usize)], k: usize, out: &mut Vec<Vec<Vec<usize>>>) {
    if k == cells.len() {
        out.push(t.clone());
        return;
    }
    let (i, j) = cells[k];
    let n = t.len();
    for v in 0..n {
        t[i][j] = v;
        t[j][i] = v;
        if assoc_ok(t) {
            fill_monoid(t, cells, k + 1, out);
        }
    }
    t[i][j] = usize::MAX;
    t[j][i] = usize::MAX;
}

/// `x → z` as the least `y` with `x + y ≥ z`, if every such set has a least
/// element.
fn residual(plus: &[Vec<usize>], ge: &[Vec<bool>]) -> Option<Vec<Vec<usize>>> {
    let n = plus.len();
    let mut imp = vec![vec![0; n]; n];
    for x in 0..n {
        for z in 0..n {
            let ys: Vec<usize> = (0..n).filter(|&y| ge[plus[x][y]][z]).collect();
            imp[x][z] = *ys.iter().find(|&&y0| ys.iter().all(|&y| ge[y][y0]))?;
        }
    }
    Some(imp)
}

fn build(plus: Vec<Vec<usize>>, imp: Vec<Vec<usize>>) -> FiniteAlgebra {
    FiniteAlgebra {
        size: plus.len(),
        zero: 0,
        plus,
        imp,
        one: None,
        half: None,
    }
    .with_annihilator()
}

fn relabel(a: &FiniteAlgebra, perm: &[usize]) -> FiniteAlgebra {
    let n = a.size;
    let mut plus = vec![vec![0; n]; n];
    let mut imp = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            plus[perm[i]][perm[j]] = perm[a.plus[i][j]];
            imp[perm[i]][perm[j]] = perm[a.imp[i][j]];
        }
    }
    let half = a.half.as_ref().map(|h| {
        let mut out = vec![0; n];
        for i in 0..n {
            out[perm[i]] = perm[h[i]];
        }
        out
    });
    FiniteAlgebra {
        size: n,
        zero: perm[a.zero],
        plus,
        imp,
        one: a.one.map(|o| perm[o]),
        half,
    }
}

fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.clone();
        let x = rest.remove(i);
        for mut p in permutations(rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn key(a: &FiniteAlgebra) -> (Vec<usize>, Vec<usize>, Option<Vec<usize>>) {
    (
        a.plus.iter().flatten().copied().collect(),
        a.imp.iter().flatten().copied().collect(),
        a.half.clone(),
    )
}

/// Lexicographically least relabelling under permutations fixing the zero
/// (which is moved to index 0 first).
pub fn canonical_form(a: &FiniteAlgebra) -> FiniteAlgebra {
    let n = a.size;
    let others: Vec<usize> = (0..n).filter(|&i| i != a.zero).collect();
    let mut best: Option<FiniteAlgebra> = None;
    for p in permutations((1..n).collect()) {
        let mut perm = vec![0; n];
        for (k, &src) in others.iter().enumerate() {
            perm[src] = p[k];
        }
        let b = relabel(a, &perm);
        if best.as_ref().is_none_or(|c| key(&b) < key(c)) {
            best = Some(b);
        }
    }
    best.expect("nonempty carrier")
}

fn dedupe(found: Vec<FiniteAlgebra>) -> Vec<FiniteAlgebra> {
    let set: BTreeSet<(Vec<usize>, Vec<usize>, Option<Vec<usize>>)> =
        found.iter().map(|a| key(&canonical_form(a))).collect();
    let mut out: Vec<FiniteAlgebra> = set
        .into_iter()
        .map(|(p, i, h)| {
            let n = (p.len() as f64).sqrt() as usize;
            build_from_flat(n, &p, &i, h)
        })
        .collect();
    out.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| key(a).cmp(&key(b))));
    out
}

fn build_from_flat(n: usize, p: &[usize], i: &[usize], half: Option<Vec<usize>>) -> FiniteAlgebra {
    let mut a = build(
        p.chunks(n).map(|r| r.to_vec()).collect(),
        i.chunks(n).map(|r| r.to_vec()).collect(),
    );
    a.half = half;
    a
}

fn hoop_laws() -> Vec<Law> {
    AlgebraClass::Hoop.required_laws()
}

fn hoops_of_size(n: usize) -> Vec<FiniteAlgebra> {
    let laws = hoop_laws();
    monoids(n)
        .into_par_iter()
        .filter_map(|plus| {
            let ge: Vec<Vec<bool>> = (0..n)
                .map(|x| (0..n).map(|y| (0..n).any(|z| plus[y][z] == x)).collect())
                .collect();
            let imp = residual(&plus, &ge)?;
            let a = build(plus, imp);
            check_laws_subset(&a, &laws, LawMode::Exhaustive)
                .passes_all(&laws)
                .then_some(a)
        })
        .collect()
}

/// All hoops with at most `max` elements, up to isomorphism.
pub fn enumerate_hoops(max: usize) -> Vec<FiniteAlgebra> {
    let mut all = Vec::new();
    for n in 1..=max {
        all.extend(hoops_of_size(n));
    }
    dedupe(all)
}

/// All partial orders on `0..n` with `0` least, as `ge[x][y]` tables.
fn orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut ge = vec![vec![false; n]; n];
        for (x, row) in ge.iter_mut().enumerate() {
            row[0] = true;
            row[x] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                ge[i][j] = true;
            }
        }
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                (x == y || !(ge[x][y] && ge[y][x]))
                    && (0..n).all(|z| !(ge[x][y] && ge[y][z]) || ge[x][z])
            })
        });
        if ok {
            out.push(ge);
        }
    }
    out
}

fn pocrims_of_size(n: usize) -> Vec<FiniteAlgebra> {
    let laws = Law::POCRIM.to_vec();
    let ms = monoids(n);
    orders(n)
        .into_par_iter()
        .flat_map_iter(|ge| {
            let laws = &laws;
            ms.iter().filter_map(move |plus| {
                let monotone = (0..n).all(|x| {
                    (0..n).all(|y| !ge[x][y] || (0..n).all(|z| ge[plus[x][z]][plus[y][z]]))
                });
                if !monotone {
                    return None;
                }
                let imp = residual(plus, &ge)?;
                let a = build(plus.clone(), imp);
                check_laws_subset(&a, laws, LawMode::Exhaustive)
                    .passes_all(laws)
                    .then_some(a)
            })
        })
        .collect()
}

/// All pocrims with at most `max` elements, up to isomorphism.
pub fn enumerate_pocrims(max: usize) -> Vec<FiniteAlgebra> {
    let mut all = Vec::new();
    for n in 1..=max {
        all.extend(pocrims_of_size(n));
    }
    dedupe(all)
}

/// Every halving table on `a` satisfying `[h]`.
fn halvings(a: &FiniteAlgebra) -> Vec<FiniteAlgebra> {
    let n = a.size;
    let mut out = Vec::new();
    for code in 0..n.pow(n as u32) {
        let mut c = code;
        let h: Vec<usize> = (0..n)
            .map(|_| {
                let v = c % n;
                c /= n;
                v
            })
            .collect();
        let mut b = a.clone();
        b.half = Some(h);
        if (0..n).all(|x| law_holds(&b, Law::H, &[x]) == Some(true)) {
            out.push(b);
        }
    }
    out
}

/// Members of `class` with at most `max` elements, up to isomorphism.
/// Bounded classes use the top element as annihilator.
pub fn enumerate_class(class: AlgebraClass, max: usize) -> Vec<FiniteAlgebra> {
    let base = if class.is_hoop() {
        enumerate_hoops(max)
    } else {
        enumerate_pocrims(max)
    };
    let base = if class.is_coop() {
        dedupe(base.iter().flat_map(halvings).collect())
    } else {
        base
    };
    base.into_iter()
        .filter(|a| class.is_member(a, LawMode::Exhaustive))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CoopSearchSize {
    pub size: usize,
    pub plus_tables: u64,
    pub monoids: u64,
    pub hoops: u64,
    pub coops: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoopSearchReport {
    pub sizes: Vec<CoopSearchSize>,
    pub coops: Vec<FiniteAlgebra>,
}

fn decode(mut code: u64, n: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let v = (code % n as u64) as usize;
            code /= n as u64;
            v
        })
        .collect()
}

fn table(flat: &[usize], n: usize) -> Vec<Vec<usize>> {
    flat.chunks(n).map(|r| r.to_vec()).collect()
}

/// Exhaustive search over every `(zero, +, →, /2)` table quadruple on
/// carriers of size `1..=max` for algebras satisfying the hoop laws and `[h]`.
///
/// The search is staged by the tables each law mentions, so every
/// candidate is either examined or rejected by a law it already violates.
pub fn exhaustive_coop_search(max: usize) -> CoopSearchReport {
    let mut sizes = Vec::new();
    let mut coops = Vec::new();
    let hoop = hoop_laws();
    let monoid_laws = [Law::M1, Law::M2, Law::M3];
    let imp_laws: Vec<Law> = hoop.iter().copied().filter(|l| !monoid_laws.contains(l)).collect();
    for n in 1..=max {
        let cells = n * n;
        let total = (n as u64).pow(cells as u32);
        let mut found_monoids = Vec::new();
        for zero in 0..n {
            for code in 0..total {
                let plus = table(&decode(code, n, cells), n);
                let a = FiniteAlgebra {
                    size: n,
                    zero,
                    imp: plus.clone(),
                    plus,
                    one: None,
                    half: None,
                };
                if check_laws_subset(&a, &monoid_laws, LawMode::Exhaustive).passes_all(&monoid_laws) {
                    found_monoids.push(a);
                }
            }
        }
        let found_hoops: Vec<FiniteAlgebra> = found_monoids
            .par_iter()
            .flat_map_iter(|m| {
                let imp_laws = &imp_laws;
                (0..total).filter_map(move |code| {
                    let mut a = m.clone();
                    a.imp = table(&decode(code, n, cells), n);
                    check_laws_subset(&a, imp_laws, LawMode::Exhaustive)
                        .passes_all(imp_laws)
                        .then_some(a)
                })
            })
            .collect();
        let found_coops: Vec<FiniteAlgebra> = found_hoops.iter().flat_map(halvings).collect();
        sizes.push(CoopSearchSize {
            size: n,
            plus_tables: total * n as u64,
            monoids: found_monoids.len() as u64,
            hoops: found_hoops.len() as u64,
            coops: found_coops.len() as u64,
        });
        coops.extend(found_coops);
    }
    CoopSearchReport { sizes, coops }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_laws;

    #[test]
    fn two_element_hoops() {
        let hs = enumerate_hoops(2);
        assert_eq!(hs.len(), 2);
        assert_eq!(hs[0], FiniteAlgebra::trivial());
        assert_eq!(hs[1], FiniteAlgebra::boolean());
    }

    #[test]
    fn three_element_hoops_include_both_chains() {
        let hs = enumerate_hoops(3);
        let l3 = canonical_form(&FiniteAlgebra::lukasiewicz(3));
        let g3 = canonical_form(&FiniteAlgebra::godel(3));
        assert!(hs.contains(&l3));
        assert!(hs.contains(&g3));
        for h in &hs {
            assert!(check_laws(h, LawMode::Exhaustive).passes(Law::Cwc));
        }
    }

    #[test]
    fn canonical_form_is_invariant() {
        let g = FiniteAlgebra::godel(4);
        let swapped = relabel(&g, &[0, 3, 1, 2]);
        assert_eq!(canonical_form(&g), canonical_form(&swapped));
    }

    #[test]
    fn pocrims_contain_hoops() {
        let ps = enumerate_pocrims(3);
        for h in enumerate_hoops(3) {
            assert!(ps.contains(&h));
        }
        assert!(ps.len() >= enumerate_hoops(3).len());
    }

    #[test]
    fn only_trivial_coop_up_to_two() {
        let r = exhaustive_coop_search(2);
        assert_eq!(r.sizes[0].coops, 1);
        assert_eq!(r.sizes[1].coops, 0);
        assert!(r.sizes[1].hoops > 0);
    }
}
