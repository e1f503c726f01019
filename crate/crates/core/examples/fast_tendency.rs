//! Direct `O(n^4)` tendency against the transform-based one.

use std::time::Instant;

use nambu_vorticity::build_grid;
use nambu_vorticity::dynamics::{random_shell_field, rhs_naive, FastRhs};

fn main() -> nambu_vorticity::Result<()> {
    println!(
        "{:>4} {:>12} {:>12} {:>10}",
        "n", "direct [ms]", "fast [ms]", "rel diff"
    );
    for n in [9, 17, 33, 65] {
        let grid = build_grid(n)?;
        let field = random_shell_field(grid, 1, 2 * n * n, 1.0, 1);
        let fast = FastRhs::new(grid);

        let t = Instant::now();
        let a = rhs_naive(&field);
        let direct = t.elapsed().as_secs_f64() * 1e3;
        let t = Instant::now();
        let b = fast.tendency(&field);
        let quick = t.elapsed().as_secs_f64() * 1e3;
        println!(
            "{n:>4} {direct:>12.3} {quick:>12.3} {:>10.1e}",
            a.max_abs_diff(&b) / a.max_abs()
        );
    }
    Ok(())
}
