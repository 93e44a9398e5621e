use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use super::{all_ideals, ge, is_hoop, Ideal};
use crate::algebra::FiniteAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("the algebra does not satisfy the hoop laws")]
    NotAHoop,
}

/// Outcome of one clause of the decomposition theorem; `holds` is `None`
/// when the clause does not apply to the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SIDecomposition {
    pub monolith: Ideal,
    pub fixed: Vec<usize>,
    pub support: Vec<usize>,
    pub properties: Vec<PropertyCheck>,
    pub support_wajsberg: bool,
}

impl SIDecomposition {
    /// Every applicable clause holds.
    pub fn verified(&self) -> bool {
        self.properties.iter().all(|p| p.holds != Some(false))
    }
}

/// `IS(x) = {s | s → x = x}`.
pub fn implicative_stabilizer(h: &FiniteAlgebra, x: usize) -> BTreeSet<usize> {
    (0..h.size).filter(|&s| h.imp[s][x] == x).collect()
}

/// The monolithic ideal and the support/fixed split, with every clause of
/// the decomposition theorem checked over the carrier. `None` when `h` is
/// not subdirectly irreducible (the trivial algebra included).
pub fn monolith_and_decomposition(h: &FiniteAlgebra) -> Result<Option<SIDecomposition>, LabError> {
    if !is_hoop(h) {
        return Err(LabError::NotAHoop);
    }
    let z = h.zero;
    let nonzero: Vec<Ideal> = all_ideals(h).into_iter().filter(|i| i.len() > 1).collect();
    let Some(first) = nonzero.first() else {
        return Ok(None);
    };
    let m: BTreeSet<usize> = nonzero
        .iter()
        .fold(first.0.clone(), |acc, i| acc.intersection(&i.0).copied().collect());
    if m.len() <= 1 {
        return Ok(None);
    }
    let all: Vec<usize> = (0..h.size).collect();
    let fixed: Vec<usize> = all
        .iter()
        .copied()
        .filter(|&f| m.is_subset(&implicative_stabilizer(h, f)))
        .collect();
    let support: Vec<usize> = all
        .iter()
        .copied()
        .filter(|&s| fixed.iter().all(|&f| h.imp[s][f] == f))
        .collect();
    let in_f = |x: usize| fixed.contains(&x);
    let in_s = |x: usize| support.contains(&x);
    let nz = |xs: &[usize]| -> Vec<usize> { xs.iter().copied().filter(|&x| x != z).collect() };
    let m_vec: Vec<usize> = m.iter().copied().collect();
    let f_nz = nz(&fixed);

    let p1 = nz(&all).iter().all(|&x| nz(&m_vec).iter().any(|&a| ge(h, x, a)));
    let p2 = f_nz.iter().all(|&f| m_vec.iter().all(|&a| ge(h, f, a)));
    let p3 = m_vec.iter().all(|&a| f_nz.iter().all(|&f| h.plus[a][f] == f));
    let p4 = f_nz.iter().all(|&f| all.iter().all(|&x| !ge(h, x, f) || in_f(x)));
    let p5 = all.iter().all(|&x| fixed.iter().all(|&f| in_f(h.imp[x][f])));
    let p6 = f_nz.iter().all(|&f| {
        all.iter()
            .filter(|&&x| !in_f(x))
            .all(|&x| ge(h, f, x) && f != x)
    });
    let p7 = fixed
        .iter()
        .all(|&f| fixed.iter().all(|&g| in_f(h.plus[f][g]) && in_f(h.imp[f][g])));
    let p7_half = h
        .half
        .as_ref()
        .map(|hv| fixed.iter().all(|&f| in_f(hv[f])));
    let s_set: BTreeSet<usize> = support.iter().copied().collect();
    let s_linear = support.iter().all(|&s| support.iter().all(|&t| ge(h, s, t) || ge(h, t, s)));
    let p8 = super::is_ideal(h, &s_set) && s_linear && support.iter().all(|&x| !in_f(x) || x == z);
    let s_top = support.iter().copied().find(|&t| support.iter().all(|&s| ge(h, t, s)));
    let p9 = support.iter().all(|&x| {
        support.iter().all(|&y| {
            support.iter().all(|&w| {
                y == w || h.plus[x][y] != h.plus[x][w] || Some(h.plus[x][y]) == s_top
            })
        })
    });
    let p10 = all.iter().all(|&x| in_s(x) || in_f(x))
        && support.iter().all(|&s| f_nz.iter().all(|&f| h.plus[s][f] == f));
    let wajsberg = support.iter().all(|&s| {
        support
            .iter()
            .all(|&t| h.imp[h.imp[t][s]][s] == h.imp[h.imp[s][t]][t])
    });
    let properties = vec![
        PropertyCheck { name: "i", holds: Some(p1) },
        PropertyCheck { name: "ii", holds: Some(p2) },
        PropertyCheck { name: "iii", holds: Some(p3) },
        PropertyCheck { name: "iv", holds: Some(p4) },
        PropertyCheck { name: "v", holds: Some(p5) },
        PropertyCheck { name: "vi", holds: Some(p6) },
        PropertyCheck { name: "vii", holds: Some(p7) },
        PropertyCheck { name: "vii-halving", holds: p7_half },
        PropertyCheck { name: "viii", holds: Some(p8) },
        PropertyCheck { name: "ix", holds: Some(p9) },
        PropertyCheck { name: "x", holds: Some(p10) },
    ];
    Ok(Some(SIDecomposition {
        monolith: Ideal(m),
        fixed,
        support,
        properties,
        support_wajsberg: wajsberg,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn godel_chain() {
        let d = monolith_and_decomposition(&FiniteAlgebra::godel(3)).unwrap().unwrap();
        assert_eq!(d.monolith.elements(), vec![0, 1]);
        assert_eq!(d.support, vec![0, 1]);
        assert_eq!(d.fixed, vec![0, 2]);
        assert!(d.verified());
        assert!(d.support_wajsberg);
    }

    #[test]
    fn simple_chain() {
        let d = monolith_and_decomposition(&FiniteAlgebra::lukasiewicz(3)).unwrap().unwrap();
        assert_eq!(d.monolith.elements(), vec![0, 1, 2]);
        assert_eq!(d.fixed, vec![0]);
        assert_eq!(d.support, vec![0, 1, 2]);
        assert!(d.verified());
    }

    #[test]
    fn not_subdirectly_irreducible() {
        let b = FiniteAlgebra::boolean();
        assert_eq!(monolith_and_decomposition(&b.product(&b)), Ok(None));
        assert_eq!(monolith_and_decomposition(&FiniteAlgebra::trivial()), Ok(None));
    }

    #[test]
    fn rejects_non_hoops() {
        let mut bad = FiniteAlgebra::boolean();
        bad.plus[1][1] = 0;
        assert_eq!(monolith_and_decomposition(&bad), Err(LabError::NotAHoop));
    }
}
