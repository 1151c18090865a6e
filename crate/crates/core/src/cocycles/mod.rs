//! Twisted cocycles over a character, chart bases, and the determinant
//! cocycle of a mapping class.

mod basis;
mod character;
mod determinant;

pub use basis::{
    chart_admissible, chart_position, coboundary_cocycle, constraint_weights, default_chart, evaluate_cocycle,
    extend_to_based, satisfies_relator, standard_basis, TwistedCocycle, TwistedCocycleBasis,
};
pub use character::{fox, Character, CharacterMode, FoxDerivative};
pub use determinant::{
    action_matrix, arc_loops, determinant_cocycle, determinant_cocycle_at, relative_factor, DeterminantCocycleValue,
};
