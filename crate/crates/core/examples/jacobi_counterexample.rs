//! The generalized Jacobi identity fails for the truncated and the continuum
//! Nambu bracket.

use nambu_vorticity::algebra::nambu::JacobiForm;
use nambu_vorticity::algebra::COUNTEREXAMPLE;
use nambu_vorticity::verification::{run_counterexample, run_jacobi_scan};

fn main() -> nambu_vorticity::Result<()> {
    let labels: Vec<String> = COUNTEREXAMPLE.iter().map(|v| v.to_string()).collect();
    println!("(i, j, k, l, p, q) = {}", labels.join(" "));
    for n in [5, 7, 21] {
        let c = run_counterexample(n)?;
        println!(
            "n = {n:>2}: summands {:.6e} {:e} {:e}",
            c.zeitlin.terms[0], c.zeitlin.terms[1], c.zeitlin.terms[2]
        );
    }
    let c = run_counterexample(5)?;
    println!(
        "continuum: summands {:.6e} {:e} {:e}",
        c.continuum.terms[0], c.continuum.terms[1], c.continuum.terms[2]
    );

    let (report, scan) = run_jacobi_scan(5, JacobiForm::Symmetrized)?;
    for d in &report.details {
        println!("scan n = 5: {d}");
    }
    for v in scan.deduplicated().iter().take(3) {
        let t: Vec<String> = v.tuple.iter().map(|x| x.to_string()).collect();
        println!("  {} -> {:+.3e}", t.join(" "), v.residual);
    }
    Ok(())
}
