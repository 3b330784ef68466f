//! Quivers, Leavitt path algebras and their K-theory sequences.

mod correspondence;
mod dsl;
mod kgroups;
pub mod lpa;
mod quiver;

pub use correspondence::{edge_sym, ghost_sym, quiver_correspondence, vertex_ring};
pub use dsl::parse_quiver;
pub use kgroups::{
    adjacency, crossed_product_k_groups, k_groups, sequence_report, AdjacencyData, DegreeReport, KGroup,
    KPresets, QuiverKReport, SequenceReport,
};
pub use lpa::LpaWord;
pub use quiver::{Edge, Quiver};
