//! Seeded random states and local unitaries for the property checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{kron, kron_states, ComplexMatrix, DensityMatrix};

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Full-rank random density matrix `G G† / Tr(G G†)` from a complex
/// Gaussian `G`.
pub fn density_matrix(rng: &mut impl Rng, dims: &[usize]) -> DensityMatrix {
    let n: usize = dims.iter().product();
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    let rho = gg.scale(1.0 / tr);
    // Exact Hermitian symmetrization removes rounding asymmetry.
    let rho = (&rho + &rho.adjoint()).scale(0.5);
    DensityMatrix::new(dims.to_vec(), rho).expect("Gaussian ensemble yields a valid state")
}

/// Random three-qubit state.
pub fn three_qubit_state(rng: &mut impl Rng) -> DensityMatrix {
    density_matrix(rng, &[2, 2, 2])
}

/// `ρ₁ ⊗ ρ₂ ⊗ ρ₃` with independent random single-qubit factors.
pub fn product_state(rng: &mut impl Rng) -> DensityMatrix {
    let parts: Vec<DensityMatrix> = (0..3).map(|_| density_matrix(rng, &[2])).collect();
    kron_states(&parts.iter().collect::<Vec<_>>()).expect("three factors")
}

/// Haar-random element of U(2).
pub fn qubit_unitary(rng: &mut impl Rng) -> ComplexMatrix {
    // Unit quaternion gives SU(2); a random global phase extends it to U(2).
    let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let a = Complex64::new(q[0], q[1]) / norm;
    let b = Complex64::new(q[2], q[3]) / norm;
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    let su2 = [a, -b.conj(), b, a.conj()];
    ComplexMatrix::from_fn(2, 2, |r, c| phase * su2[r * 2 + c])
}

/// `U₁ ⊗ U₂ ⊗ U₃` with independent Haar-random factors.
pub fn local_unitary(rng: &mut impl Rng) -> ComplexMatrix {
    let u1 = qubit_unitary(rng);
    let u2 = qubit_unitary(rng);
    let u3 = qubit_unitary(rng);
    kron(&kron(&u1, &u2), &u3)
}
