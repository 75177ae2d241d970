//! Cyclic quivers with involution for finite-order semilinear automorphisms
//! of classical groups, with a brute-force matrix oracle.

pub mod scalars;
pub mod setup;
pub mod spectrum;
pub mod quiver;
pub mod classifier;
pub mod oracle;
pub mod cli;
