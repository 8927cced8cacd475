//! Local and global zeta integrals attached to second degree characters,
//! with independent oracles, zero location and an acceptance suite.

pub mod arch_zeta;
pub mod error;
pub mod global;
pub mod oracle;
pub mod padic;
pub mod padic_zeta;
pub mod quad;
pub mod specfun;
pub mod verify;
pub mod zeros;

pub use arch_zeta::{ArchCharacter, ArchSdc};
pub use error::{Error, Result};
pub use global::{GlobalSpec, Place, XiF, ZeroClass};
pub use padic::{DirichletCharData, PAdicRational, PadicCharacter, PadicSdc};
pub use padic_zeta::PadicFactor;
pub use zeros::{LineScan, Rect, ZeroMethod, ZeroReport};

pub type C64 = num_complex::Complex64;
