//! Graded spaces with operators: the object model, delta spaces, the
//! `G_{δμ}` assembly, axiom verifiers, characters, direct sums and
//! semisimple decomposition.

pub mod axioms;
pub mod linalg;
pub mod object;

pub use axioms::{verify_axioms, AxiomReport};
pub use linalg::{column_space_basis, rank, rref, solve, Elimination, Matrix};
pub use object::{
    Character, CoefficientChoice, DeltaBlock, DeltaSpace, GradedObject, OpKey, OperatorPair,
};
