//! Truncated Fock module `⊕_{n≤N} X^{⊗n}` with its creation, annihilation
//! and scalar operators, the pair of representations `π₀`, `π₁` and the
//! rotation homotopy between them.

mod covariant;
mod homotopy;
mod operator;
mod poly;
mod space;
mod word;

pub use covariant::{covariant_check, CovariantReport, Representation};
pub use homotopy::{
    coefficient_identity, homotopy_h, Column, ColumnOperator, HomotopySuite, Part, PolyColumn, PolyOperator,
};
pub use operator::{
    annihilation, apply_word, basis_vector, creation, j_ideal_generator, p0_compact_form, p0_element, pi0, pi1,
    quasi_hom_defect, scalar_operator, Block, Defect, Evaluator, Rep, TruncatedFockOperator,
};
pub use poly::UniPoly;
pub use space::{homogeneous_degree, FockKey, FockVector, TruncatedFock};
pub use word::{normal_form, FockWord, Letter, WordSum};
