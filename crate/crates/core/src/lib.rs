//! Sine-bracket truncation of two-dimensional ideal vorticity dynamics and its
//! Nambu formulation.
//!
//! Vorticity on the torus is truncated to the `n^2 - 1` wave vectors of a
//! symmetric grid, and the Poisson bracket is replaced by the sine bracket.
//! The Killing form of that finite algebra gives the enstrophy as the
//! quadratic Casimir, and with it a Nambu bracket `{F, G, E}` that reproduces
//! the Lie-Poisson bracket. The generalized Jacobi identity for this bracket
//! fails, both after truncation and in the continuum; [`verification`] shows
//! where.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run --release -p nambu-vorticity --example grid_and_observables
//! cargo run --release -p nambu-vorticity --example killing_and_casimir
//! cargo run --release -p nambu-vorticity --example nambu_reduction
//! cargo run --release -p nambu-vorticity --example simulate -- 11 1000 midpoint
//! cargo run --release -p nambu-vorticity --example fast_tendency
//! cargo run --release -p nambu-vorticity --example jacobi_counterexample
//! cargo run --release -p nambu-vorticity --example convergence
//! cargo run --release -p nambu-vorticity --example generic_su2
//! cargo run --release -p nambu-vorticity --example identity_suite -- 7
//! ```

pub mod algebra;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod grid;
pub mod io;
pub mod verification;

pub use error::{Error, Result};
pub use field::{ModeField, PhysicalField};
pub use grid::{build_grid, TruncationGrid, WaveVector};
