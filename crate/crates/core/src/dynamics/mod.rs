//! Time evolution of the truncated system.

pub mod init;
pub mod integrate;
pub mod rhs;

pub use init::random_shell_field;
pub use integrate::{
    drift, integrate, max_drift, step, DiagnosticsRecord, Integrator, IntegratorConfig, RhsMethod,
    Scheme, SimState,
};
pub use rhs::{rhs_fast, rhs_lie_poisson, rhs_naive, rhs_nambu, FastRhs};
