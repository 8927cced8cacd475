//! Exact p-adic arithmetic, additive and multiplicative characters, and
//! exact character sums of second degree characters.

mod character;
mod rational;
mod sdc;

pub use character::{primitive_root, DirichletCharData, PadicCharacter};
pub use rational::PAdicRational;
pub use sdc::{psi_p, unit_average, PadicSdc, QuadraticPhase, SUM_LIMIT};

