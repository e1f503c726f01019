use num_complex::Complex64;
use proptest::prelude::*;

use nambu_vorticity::algebra::nambu::gen_jacobi_symmetrized;
use nambu_vorticity::algebra::{
    alpha_zeitlin, enstrophy_gradient, hamiltonian_gradient, nambu_zeitlin, NambuTensor,
    TensorIndex,
};
use nambu_vorticity::dynamics::{
    random_shell_field, rhs_fast, rhs_naive, step, IntegratorConfig, Scheme, SimState,
};
use nambu_vorticity::field::{energy, enstrophy, from_physical, to_physical};
use nambu_vorticity::{build_grid, TruncationGrid, WaveVector};

fn odd_n() -> impl Strategy<Value = i64> {
    (1i64..=6).prop_map(|h| 2 * h + 1)
}

fn grid_and_modes(count: usize) -> impl Strategy<Value = (TruncationGrid, Vec<WaveVector>)> {
    odd_n().prop_flat_map(move |n| {
        let g = build_grid(n).unwrap();
        let len = g.len();
        proptest::collection::vec(0..len, count).prop_map(move |idx| {
            (
                g,
                idx.into_iter().map(|i| g.from_linear(i).unwrap()).collect(),
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn alpha_is_antisymmetric((g, m) in grid_and_modes(3)) {
        let a = alpha_zeitlin(g, m[0], m[1], m[2]).unwrap();
        let b = alpha_zeitlin(g, m[1], m[0], m[2]).unwrap();
        prop_assert_eq!(a, -b);
    }

    #[test]
    fn nambu_is_totally_antisymmetric((g, m) in grid_and_modes(2)) {
        let k = g.mod_reduce(-(m[0] + m[1]));
        prop_assume!(!k.is_zero());
        let n = |a, b, c| nambu_zeitlin(g, a, b, c).unwrap();
        let base = n(m[0], m[1], k);
        prop_assert_eq!(n(m[1], k, m[0]), base);
        prop_assert_eq!(n(k, m[0], m[1]), base);
        prop_assert_eq!(n(m[1], m[0], k), -base);
        prop_assert_eq!(n(m[0], k, m[1]), -base);
    }

    #[test]
    fn symmetrized_residual_is_symmetric_in_first_and_fourth((g, m) in grid_and_modes(6)) {
        let t = NambuTensor::Zeitlin(g);
        let idx: Vec<TensorIndex> = m.iter().map(|v| TensorIndex::Mode(*v)).collect();
        let a = gen_jacobi_symmetrized(&t, [idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]]).unwrap();
        let b = gen_jacobi_symmetrized(&t, [idx[3], idx[1], idx[2], idx[0], idx[4], idx[5]]).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn observables_are_nonnegative(n in odd_n(), seed in any::<u64>(), amp in 0.0f64..10.0) {
        let f = random_shell_field(build_grid(n).unwrap(), 1, 2 * n * n, amp, seed);
        prop_assert!(energy(&f).unwrap() >= 0.0);
        prop_assert!(enstrophy(&f).unwrap() >= 0.0);
    }

    #[test]
    fn fast_tendency_matches_naive(n in odd_n(), seed in any::<u64>(), lo in 1i64..4, width in 0i64..40) {
        let f = random_shell_field(build_grid(n).unwrap(), lo, lo + width, 1.0, seed);
        let (a, b) = (rhs_naive(&f), rhs_fast(&f));
        let scale = a.max_abs().max(b.max_abs());
        prop_assert!(a.max_abs_diff(&b) <= 1e-10 * scale.max(1e-300));
    }

    #[test]
    fn tendency_is_orthogonal_to_invariant_gradients(n in odd_n(), seed in any::<u64>()) {
        let f = random_shell_field(build_grid(n).unwrap(), 1, 2 * n * n, 1.0, seed);
        let t = rhs_naive(&f);
        for grad in [hamiltonian_gradient(&f), enstrophy_gradient(&f)] {
            let terms: Vec<Complex64> = grad.iter().zip(t.coefficients()).map(|(a, b)| a * b).collect();
            let scale: f64 = terms.iter().map(|c| c.norm()).sum();
            let total: Complex64 = terms.iter().sum();
            prop_assert!(total.norm() <= 1e-12 * scale.max(1e-300));
        }
    }

    #[test]
    fn steps_preserve_reality(n in odd_n(), seed in any::<u64>(), midpoint in any::<bool>()) {
        let f = random_shell_field(build_grid(n).unwrap(), 1, 2 * n * n, 1.0, seed);
        let cfg = IntegratorConfig {
            scheme: if midpoint { Scheme::ImplicitMidpoint } else { Scheme::Rk4 },
            dt: 1e-2,
            steps: 1,
            record_every: 1,
            ..Default::default()
        };
        let mut s = SimState::new(f);
        for _ in 0..20 {
            s = step(&s, &cfg).unwrap();
        }
        prop_assert!(s.field.reality_residual() <= 1e-12);
    }

    #[test]
    fn physical_round_trip(n in odd_n(), seed in any::<u64>()) {
        let g = build_grid(n).unwrap();
        let f = random_shell_field(g, 1, 2 * n * n, 1.0, seed);
        let back = from_physical(&to_physical(&f), g).unwrap();
        prop_assert!(back.max_abs_diff(&f) <= 1e-12 * f.max_abs());
    }
}
