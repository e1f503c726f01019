//! Integrate a random field and watch energy and enstrophy.
//!
//! `cargo run --release --example simulate -- [n] [steps] [midpoint]`

use nambu_vorticity::build_grid;
use nambu_vorticity::dynamics::{
    random_shell_field, Integrator, IntegratorConfig, RhsMethod, Scheme, SimState,
};

fn main() -> nambu_vorticity::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let n: i64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(11);
    let steps: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let scheme = if args.get(3).map(String::as_str) == Some("midpoint") {
        Scheme::ImplicitMidpoint
    } else {
        Scheme::Rk4
    };

    let grid = build_grid(n)?;
    let state = SimState::new(random_shell_field(grid, 1, 2 * n * n, 3.0, 7));
    let config = IntegratorConfig {
        scheme,
        dt: 1e-3,
        steps,
        record_every: steps / 10,
        rhs: RhsMethod::Fast,
    };
    let start = std::time::Instant::now();
    let (end, records) = Integrator::new(grid, config)?.integrate(&state)?;
    println!(
        "{:>8} {:>20} {:>20} {:>10} {:>10}",
        "time", "H", "E", "drift H", "drift E"
    );
    for r in &records {
        println!(
            "{:>8.3} {:>20.12} {:>20.12} {:>10.2e} {:>10.2e}",
            r.time, r.energy, r.enstrophy, r.drift_energy, r.drift_enstrophy
        );
    }
    println!(
        "{steps} steps at n = {n} in {:.2?}, reality residual {:.1e}",
        start.elapsed(),
        end.field.reality_residual()
    );
    Ok(())
}
