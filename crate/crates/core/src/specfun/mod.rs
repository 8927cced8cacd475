//! Special functions: gamma, Kummer's 1F1, Riemann, Hurwitz and Dirichlet series.

mod dirichlet;
mod gamma;
mod hyp1f1;
mod zeta;

pub use dirichlet::{dirichlet_l, DirichletCharacter};
pub use gamma::{gamma, gamma_ratio, log_gamma, rgamma};
pub use hyp1f1::{hyp1f1, hyp1f1_quality, EvalQuality, WARN_RATIO, Z_MAX};
pub use zeta::{completed_xi, hurwitz_zeta, hurwitz_zeta_regular, riemann_zeta};

pub(crate) use hyp1f1::CompensatedSum;
