//! Structure constants, Killing form, Casimir, and the Lie-Poisson and
//! Nambu brackets built from them.

pub mod bracket;
pub mod functional;
pub mod generic;
pub mod killing;
pub mod nambu;
pub mod structure;

pub use bracket::{
    lie_poisson_bracket, lie_poisson_bracket_complex, nambu_bracket, nambu_bracket_complex,
    BracketSum,
};
pub use functional::{
    enstrophy_gradient, hamiltonian_gradient, Coordinate, Energy, Enstrophy, Functional, Polynomial,
};
pub use generic::{construct_generic, GenericConstruction};
pub use killing::{
    casimir_scale, killing_bruteforce, killing_closed, orthogonality_check, quadratic_casimir,
    scaled_casimir_sum, KillingForm,
};
pub use nambu::{
    gen_jacobi_residual, gen_jacobi_symmetrized, nambu_continuum, nambu_tensor, nambu_zeitlin,
    scan_gen_jacobi, scan_gen_jacobi_with, DenseTensor, JacobiForm, JacobiResidual,
    JacobiViolation, NambuTensor, ScanResult, TensorIndex, COUNTEREXAMPLE,
};
pub use structure::{alpha_continuum, alpha_zeitlin, DenseConstants, StructureConstants};
