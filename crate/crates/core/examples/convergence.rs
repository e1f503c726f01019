//! Sine-bracket structure constants against their continuum limit.

use nambu_vorticity::verification::convergence::{default_pairs, default_sizes, WIDE_PAIR};
use nambu_vorticity::verification::run_convergence_study;

fn main() -> nambu_vorticity::Result<()> {
    let mut pairs = default_pairs();
    pairs.push(WIDE_PAIR);
    let study = run_convergence_study(&pairs, &default_sizes())?;
    println!("{:>16} {:>6} {:>9}  ratios", "pair", "cross", "exponent");
    for f in &study.fits {
        let exponent = f.exponent.map_or("-".to_string(), |e| format!("{e:.4}"));
        let ratios: Vec<String> = f
            .ratios
            .iter()
            .map(|r| {
                if r.is_finite() {
                    format!("{r:.3}")
                } else {
                    "-".into()
                }
            })
            .collect();
        println!(
            "{:>16} {:>6} {exponent:>9}  {}",
            format!("{} {}", f.i, f.j),
            f.cross,
            ratios.join(" ")
        );
    }
    println!("\nNambu bracket of three fixed polynomials:");
    for r in &study.functional {
        println!(
            "n = {:>3}: truncated {:.12e}, continuum {:.12e}, diff {:.3e}",
            r.n, r.zeitlin, r.continuum, r.difference
        );
    }
    println!(
        "area integral of phi1 J(phi2, phi3): {:.12e}",
        study.pde_integral
    );
    Ok(())
}
