//! Self-similar groups given by wreath recursions, and their Nekrashevych
//! correspondences.

mod dsl;
mod group;
mod nek;

pub use dsl::parse_group;
pub use group::{EqualityVerdict, Generator, GroupLetter, GroupWord, SelfSimilarGroup, DEFAULT_EQUALITY_DEPTH};
pub use nek::{build_nek_correspondence, letter_sym, nek_k_groups, nek_pairing, NekChecks, NekCorrespondence};
