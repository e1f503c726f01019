//! The construction for a small algebra read from a CSV of structure constants.

use nambu_vorticity::algebra::nambu::{scan_gen_jacobi_with, JacobiForm, TensorIndex};
use nambu_vorticity::algebra::{construct_generic, DenseConstants};

const SU2: &str = "i,j,k,value
0,1,2,1
1,2,0,1
2,0,1,1
1,0,2,-1
2,1,0,-1
0,2,1,-1
";

fn main() -> nambu_vorticity::Result<()> {
    let constants = DenseConstants::from_csv(SU2.as_bytes(), Some(3))?;
    let g = construct_generic(&constants, 1.0)?;
    for i in 0..3 {
        let row: Vec<String> = (0..3)
            .map(|j| format!("{:+.1}", g.killing.entry(i, j)))
            .collect();
        println!("K[{i}] = {}", row.join(" "));
    }
    let b = TensorIndex::Basis;
    println!(
        "N_012 = {}, N_102 = {}",
        g.nambu.entry(b(0), b(1), b(2))?,
        g.nambu.entry(b(1), b(0), b(2))?
    );
    println!("C(1, 2, 3) = {}", g.casimir_value(&[1.0, 2.0, 3.0]));

    for form in [JacobiForm::Symmetrized, JacobiForm::Literal] {
        let scan = scan_gen_jacobi_with(&g.nambu, None, form)?;
        println!(
            "{form:?} form: {} violations among {} tuples",
            scan.violations.len(),
            scan.evaluated
        );
    }
    Ok(())
}
