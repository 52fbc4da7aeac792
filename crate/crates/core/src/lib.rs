//! Exact cut-and-project construction of the canonical icosahedral tilings
//! obtained from the `D6` root lattice, together with exact verification of
//! their inflation data.

pub mod golden;
pub mod lattice6;
pub mod window;
pub mod cutproject;
pub mod check;
pub mod linalg;
pub mod substitution;
pub mod tiles;
pub mod export;
pub mod verify;
pub mod stats;
