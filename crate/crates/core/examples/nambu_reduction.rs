//! The Nambu bracket with the enstrophy reproduces the Lie-Poisson bracket,
//! and `{zeta_i, H, E}` drives the same dynamics.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nambu_vorticity::algebra::{
    lie_poisson_bracket, nambu_bracket, Energy, Enstrophy, NambuTensor, Polynomial,
};
use nambu_vorticity::build_grid;
use nambu_vorticity::dynamics::{random_shell_field, rhs_naive, rhs_nambu};

fn main() -> nambu_vorticity::Result<()> {
    let grid = build_grid(7)?;
    let field = random_shell_field(grid, 1, 18, 1.0, 5);
    let tensor = NambuTensor::Zeitlin(grid);
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    for _ in 0..3 {
        let f1 = Polynomial::random_real(grid, &mut rng, 3, 2);
        let f2 = Polynomial::random_real(grid, &mut rng, 3, 2);
        let lp = lie_poisson_bracket(grid, &field, &f1, &f2)?;
        let nb = nambu_bracket(&tensor, &f1, &f2, &Enstrophy, &field)?;
        println!("{{F1, F2}} = {lp:+.15e}   {{F1, F2, E}} = {nb:+.15e}");
    }

    let f = Polynomial::random_real(grid, &mut rng, 3, 3);
    println!(
        "{{F, E}} = {:e}",
        lie_poisson_bracket(grid, &field, &f, &Enstrophy)?
    );
    println!(
        "{{H, E}} = {:e}",
        lie_poisson_bracket(grid, &field, &Energy, &Enstrophy)?
    );

    let (a, b) = (rhs_naive(&field), rhs_nambu(&field));
    println!(
        "max |direct - nambu tendency| / max |tendency| = {:e}",
        a.max_abs_diff(&b) / a.max_abs()
    );
    Ok(())
}
