//! The Killing form of the sine algebra and its quadratic Casimir.

use nambu_vorticity::algebra::killing::{killing_closed_value, orthogonality_expected};
use nambu_vorticity::algebra::{
    casimir_scale, killing_bruteforce, quadratic_casimir, StructureConstants,
};
use nambu_vorticity::dynamics::random_shell_field;
use nambu_vorticity::field::enstrophy;
use nambu_vorticity::{build_grid, WaveVector};

fn main() -> nambu_vorticity::Result<()> {
    let grid = build_grid(5)?;
    let constants = StructureConstants::Zeitlin(grid);

    let i = grid.linear_index(WaveVector::new(1, 2))?;
    let minus_i = grid.negated_index(i);
    let j = grid.linear_index(WaveVector::new(0, 1))?;
    println!(
        "K[(1,2), (-1,-2)] brute = {:.15e}",
        killing_bruteforce(&constants, i, minus_i)?
    );
    println!(
        "K[(1,2), (-1,-2)] closed = {:.15e}",
        killing_closed_value(grid)
    );
    println!(
        "K[(1,2), (0,1)] brute = {:e}",
        killing_bruteforce(&constants, i, j)?
    );

    let l = WaveVector::new(2, 1);
    let sum: f64 = grid.modes().map(|k| grid.cos_phase(k.dot(l))).sum();
    println!(
        "sum_k cos(2 pi/n k.l) at l = {l}: {sum:.12} (expected {})",
        orthogonality_expected(grid, l)
    );

    let field = random_shell_field(grid, 1, 8, 1.0, 3);
    println!("r = {:.12}", casimir_scale(grid));
    println!("r C = {:.15}", quadratic_casimir(grid, &field)?);
    println!("E   = {:.15}", enstrophy(&field)?);
    Ok(())
}
