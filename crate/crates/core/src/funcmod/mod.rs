//! Functional modules, compact operators and correspondences.

mod compact;
mod correspondence;
mod hom;
mod module;

pub use compact::{compact_decomposition, compact_mul, fs_witness, theta_apply, theta_apply_right, CompactOperator};
pub use correspondence::{tensor, Correspondence, LeftAction};
pub use hom::{check_functional_hom, hom_is_injective, induced_compact_map, FunctionalHom, HomMap};
pub use module::{direct_sum, FunctionalModule, ModVector, ModuleKind, Side, Sym, TableData};
