//! Coefficient rings and rings with local units.

mod coeff;
mod element;
mod lincomb;
pub mod linsolve;

pub use coeff::{is_prime, CoeffRing, Coefficient};
pub use element::{local_unit_for, Monomial, Presentation, RingDescriptor, RingElement, RingKind};
pub use lincomb::LinComb;
