use std::f64::consts::FRAC_PI_2;

use ghz_cloning::cloners::{
    apply_local_cloning, apply_nonlocal_cloning, closed_form_local_measures,
    closed_form_nonlocal_measures,
};
use ghz_cloning::entanglement::{input_state, measures};
use ghz_cloning::linalg::{
    eig_hermitian, fidelity_pure, kron, kron_states, partial_trace, ComplexMatrix, PureState,
};
use ghz_cloning::random;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn matrix(seed: u64, n: usize) -> ComplexMatrix {
    random::density_matrix(&mut rng(seed), &[n])
        .matrix()
        .clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kron_is_associative(seed in any::<u64>()) {
        let (a, b, c) = (matrix(seed, 2), matrix(seed ^ 1, 3), matrix(seed ^ 2, 2));
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right) < 1e-15);
    }

    #[test]
    fn partial_traces_compose(seed in any::<u64>()) {
        let rho = random::three_qubit_state(&mut rng(seed));
        let direct = partial_trace(&rho, &[0]).unwrap();
        let stepwise = partial_trace(&partial_trace(&rho, &[0, 2]).unwrap(), &[0]).unwrap();
        prop_assert!(direct.max_abs_diff(&stepwise) < 1e-14);
    }

    #[test]
    fn partial_trace_of_product_recovers_factor(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random::density_matrix(&mut r, &[2]);
        let b = random::density_matrix(&mut r, &[4]);
        let ab = kron_states(&[&a, &b]).unwrap();
        prop_assert!(partial_trace(&ab, &[1]).unwrap().max_abs_diff(&b) < 1e-14);
        prop_assert!(partial_trace(&ab, &[0]).unwrap().max_abs_diff(&a) < 1e-14);
    }

    #[test]
    fn spectrum_sums_to_trace(seed in any::<u64>()) {
        let rho = random::three_qubit_state(&mut rng(seed));
        let eig = eig_hermitian(rho.matrix()).unwrap();
        prop_assert!((eig.values.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(eig.reconstruct().max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn fidelity_is_linear_in_rho(seed in any::<u64>(), p in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let a = random::three_qubit_state(&mut r);
        let b = random::three_qubit_state(&mut r);
        let psi = input_state(0.4);
        let mixed = fidelity_pure(&psi, &a.mix(&b, p).unwrap()).unwrap();
        let parts = p * fidelity_pure(&psi, &a).unwrap()
            + (1.0 - p) * fidelity_pure(&psi, &b).unwrap();
        prop_assert!((mixed - parts).abs() < 1e-14);
    }

    #[test]
    fn measures_invariant_under_local_unitaries(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = random::three_qubit_state(&mut r);
        let u = random::local_unitary(&mut r);
        let a = measures(&rho).unwrap();
        let b = measures(&rho.conjugate_by(&u).unwrap()).unwrap();
        prop_assert!((a.e3 - b.e3).abs() < 1e-12);
        for k in 0..3 {
            prop_assert!((a.e2[k] - b.e2[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn channels_are_linear(seed in any::<u64>(), p in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let a = random::three_qubit_state(&mut r);
        let b = random::three_qubit_state(&mut r);
        let ab = a.mix(&b, p).unwrap();
        for apply in [apply_local_cloning, apply_nonlocal_cloning] {
            let direct = apply(&ab).unwrap().into_state();
            let split = apply(&a).unwrap().into_state()
                .mix(&apply(&b).unwrap().into_state(), p).unwrap();
            prop_assert!(direct.max_abs_diff(&split) < 1e-14);
        }
    }

    #[test]
    fn cloned_measures_follow_closed_forms(alpha in 0.0f64..FRAC_PI_2) {
        let rho = input_state(alpha).projector();
        let local = measures(apply_local_cloning(&rho).unwrap().state()).unwrap();
        let nonlocal = measures(apply_nonlocal_cloning(&rho).unwrap().state()).unwrap();
        let (l3, l2) = closed_form_local_measures(alpha);
        let (n3, n2) = closed_form_nonlocal_measures(alpha);
        prop_assert!((local.e3 - l3).abs() < 1e-12);
        prop_assert!((local.e2_mean() - l2).abs() < 1e-12);
        prop_assert!((nonlocal.e3 - n3).abs() < 1e-12);
        prop_assert!((nonlocal.e2_mean() - n2).abs() < 1e-12);
    }
}

#[test]
fn pure_state_rejects_bad_norm() {
    let amps = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
    assert!(PureState::new(vec![2], amps.clone()).is_err());
    assert!(PureState::normalized(vec![2], amps).is_ok());
}
