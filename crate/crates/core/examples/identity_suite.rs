//! Every algebraic identity at one grid size, as a report table.
//!
//! `cargo run --release --example identity_suite -- [n]`

use nambu_vorticity::build_grid;
use nambu_vorticity::verification::{format_reports, run_identity_suite};

fn main() -> nambu_vorticity::Result<()> {
    let n: i64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let reports = run_identity_suite(build_grid(n)?, 1);
    print!("{}", format_reports(&reports));
    Ok(())
}
