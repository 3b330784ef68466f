pub mod abgroup;
pub mod error;
pub mod fock;
pub mod funcmod;
pub mod leavitt;
pub mod ringcore;
pub mod selfsim;

pub use error::{Error, Result};
