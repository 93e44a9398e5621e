//! Proof checking, model evaluation and decision procedures for the
//! substructural logics between unbounded affine logic and classical
//! continuous logic, and for their algebraic models (pocrims, hoops, coops).

pub mod algebra;
pub mod cli;
pub mod eqchain;
pub mod envelope;
pub mod kernel;
pub mod lab;
pub mod numeric;
pub mod pl;
pub mod syntax;
