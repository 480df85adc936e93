//! Systems of fans, the glued cone poset of a toric prevariety, and the
//! filtration data of its equivariant reflexive and locally free sheaves.

// Cones cache their face lattice in a `OnceLock`; `Eq`, `Ord` and `Hash`
// ignore the cache, so cones are sound map keys.
#![allow(clippy::mutable_key_type)]
// Fan errors carry their witness cones by value.
#![allow(clippy::result_large_err)]

pub mod cli;
pub mod cone;
pub mod fan;
pub mod golden;
pub mod io;
pub mod linalg;
pub mod report;
pub mod sheaf;
pub mod tits;
