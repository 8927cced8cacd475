//! Independent reference evaluations used to validate the closed forms.

pub mod arch;
pub mod padic;

pub use padic::{oracle_padic_mellin, oracle_padic_vector, primitive_vector_average, primitive_vector_average_enumerated, PadicOracle, PadicOracleOptions, ShellTable};
pub use arch::{half_line, oracle_complex_hermitian, oracle_complex_square, oracle_radial, oracle_real_mellin, ArchOracle, ArchOracleOptions};
