//! The differential polynomial ring: rankings, Janet division and the Janet
//! pseudo-remainder used to test consequences of an involutive system.

mod dprem;
mod janet;
mod ring;

pub use dprem::{dprem, is_consequence, Consequence, Dprem, DpremStep, SimpleSystem};
pub use janet::{in_cone, janet_assign};
pub use ring::{DerivVar, DiffrlPoly, DiffrlRanking, DiffrlRing};
