//! Mode lattice, physical transforms and the two quadratic invariants.

use nambu_vorticity::field::{
    energy, enstrophy, from_physical, stream_function, to_physical, PhysicalField,
};
use nambu_vorticity::{build_grid, WaveVector};

fn main() -> nambu_vorticity::Result<()> {
    let grid = build_grid(5)?;
    println!(
        "n = {}: {} modes, first {}, last {}",
        grid.n(),
        grid.len(),
        grid.from_linear(0)?,
        grid.from_linear(grid.len() - 1)?
    );
    println!("(3, 0) wraps to {}", grid.mod_reduce(WaveVector::new(3, 0)));

    // zeta = 2 cos(x1) + sin(x1 + 2 x2)
    let samples = PhysicalField::from_fn(grid.n() as usize, |x1, x2| {
        2.0 * x1.cos() + (x1 + 2.0 * x2).sin()
    });
    let zeta = from_physical(&samples, grid)?;
    for k in [
        WaveVector::new(1, 0),
        WaveVector::new(1, 2),
        WaveVector::new(-1, -2),
    ] {
        println!("zeta_{k} = {:.12}", zeta.get(k)?);
    }

    let psi = stream_function(&zeta);
    println!("psi_(1,2) = {:.12}", psi.get(WaveVector::new(1, 2))?);
    println!("H = {:.12}", energy(&zeta)?);
    println!("E = {:.12}", enstrophy(&zeta)?);

    // Parseval: E = 1/2 int zeta^2 dA
    let back = to_physical(&zeta);
    let squared = PhysicalField::new(
        back.side(),
        back.samples().iter().map(|z| 0.5 * z * z).collect(),
    )?;
    println!("1/2 int zeta^2 = {:.12}", squared.integrate());
    Ok(())
}
