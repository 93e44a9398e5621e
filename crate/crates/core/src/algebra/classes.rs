use std::fmt;

use serde::Serialize;

use super::laws::{check_laws_subset, LawMode};
use super::{Algebra, Law};

/// The model classes of the twelve logics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraClass {
    Pocrim,
    BoundedPocrim,
    InvolutivePocrim,
    Hoop,
    BoundedHoop,
    InvolutiveHoop,
    IdempotentPocrim,
    BoundedIdempotentPocrim,
    InvolutiveIdempotentPocrim,
    Coop,
    BoundedCoop,
    InvolutiveCoop,
}

impl AlgebraClass {
    pub const ALL: [AlgebraClass; 12] = [
        AlgebraClass::Pocrim,
        AlgebraClass::BoundedPocrim,
        AlgebraClass::InvolutivePocrim,
        AlgebraClass::Hoop,
        AlgebraClass::BoundedHoop,
        AlgebraClass::InvolutiveHoop,
        AlgebraClass::IdempotentPocrim,
        AlgebraClass::BoundedIdempotentPocrim,
        AlgebraClass::InvolutiveIdempotentPocrim,
        AlgebraClass::Coop,
        AlgebraClass::BoundedCoop,
        AlgebraClass::InvolutiveCoop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraClass::Pocrim => "pocrim",
            AlgebraClass::BoundedPocrim => "bounded-pocrim",
            AlgebraClass::InvolutivePocrim => "involutive-pocrim",
            AlgebraClass::Hoop => "hoop",
            AlgebraClass::BoundedHoop => "bounded-hoop",
            AlgebraClass::InvolutiveHoop => "involutive-hoop",
            AlgebraClass::IdempotentPocrim => "idempotent-pocrim",
            AlgebraClass::BoundedIdempotentPocrim => "bounded-idempotent-pocrim",
            AlgebraClass::InvolutiveIdempotentPocrim => "involutive-idempotent-pocrim",
            AlgebraClass::Coop => "coop",
            AlgebraClass::BoundedCoop => "bounded-coop",
            AlgebraClass::InvolutiveCoop => "involutive-coop",
        }
    }

    pub fn parse(s: &str) -> Option<AlgebraClass> {
        match s {
            "wajsberg-hoop" | "wajsberg" => Some(AlgebraClass::InvolutiveHoop),
            "idempotent-hoop" => Some(AlgebraClass::IdempotentPocrim),
            "boolean" => Some(AlgebraClass::InvolutiveIdempotentPocrim),
            _ => AlgebraClass::ALL.into_iter().find(|c| c.name() == s),
        }
    }

    pub fn bounded(self) -> bool {
        !matches!(
            self,
            AlgebraClass::Pocrim | AlgebraClass::Hoop | AlgebraClass::IdempotentPocrim | AlgebraClass::Coop
        )
    }

    pub fn involutive(self) -> bool {
        matches!(
            self,
            AlgebraClass::InvolutivePocrim
                | AlgebraClass::InvolutiveHoop
                | AlgebraClass::InvolutiveIdempotentPocrim
                | AlgebraClass::InvolutiveCoop
        )
    }

    pub fn is_coop(self) -> bool {
        matches!(
            self,
            AlgebraClass::Coop | AlgebraClass::BoundedCoop | AlgebraClass::InvolutiveCoop
        )
    }

    pub fn is_hoop(self) -> bool {
        self.is_coop()
            || matches!(
                self,
                AlgebraClass::Hoop | AlgebraClass::BoundedHoop | AlgebraClass::InvolutiveHoop
            )
    }

    pub fn idempotent(self) -> bool {
        matches!(
            self,
            AlgebraClass::IdempotentPocrim
                | AlgebraClass::BoundedIdempotentPocrim
                | AlgebraClass::InvolutiveIdempotentPocrim
        )
    }

    /// Laws an algebra must satisfy to belong to the class.
    pub fn required_laws(self) -> Vec<Law> {
        let mut laws = Law::POCRIM.to_vec();
        if self.is_hoop() {
            laws.push(Law::Cwc);
        }
        if self.idempotent() {
            laws.push(Law::Idem);
        }
        if self.bounded() {
            laws.push(Law::Ann);
        }
        if self.involutive() {
            laws.push(Law::Inv);
        }
        if self.is_coop() {
            laws.push(Law::H);
        }
        laws
    }

    pub fn is_member<A: Algebra>(self, a: &A, mode: LawMode) -> bool {
        check_laws_subset(a, &self.required_laws(), mode).passes_all(&self.required_laws())
    }
}

impl fmt::Display for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{DenseModel, FiniteAlgebra};
    use crate::numeric::Dyadic;

    #[test]
    fn names_round_trip() {
        for c in AlgebraClass::ALL {
            assert_eq!(AlgebraClass::parse(c.name()), Some(c));
        }
        assert_eq!(AlgebraClass::parse("wajsberg"), Some(AlgebraClass::InvolutiveHoop));
    }

    #[test]
    fn membership() {
        let b = FiniteAlgebra::boolean();
        for c in AlgebraClass::ALL {
            assert_eq!(c.is_member(&b, LawMode::Exhaustive), !c.is_coop(), "{c}");
        }
        let l3 = FiniteAlgebra::lukasiewicz(3);
        assert!(AlgebraClass::InvolutiveHoop.is_member(&l3, LawMode::Exhaustive));
        assert!(!AlgebraClass::IdempotentPocrim.is_member(&l3, LawMode::Exhaustive));
        let m = DenseModel::capped(Dyadic::from_int(1));
        let mode = LawMode::Sampled { count: 300, seed: 1 };
        assert!(AlgebraClass::InvolutiveCoop.is_member(&m, mode));
        assert!(!AlgebraClass::Coop.is_member(&FiniteAlgebra::godel(3), LawMode::Exhaustive));
    }
}
