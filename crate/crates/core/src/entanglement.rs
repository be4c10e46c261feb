//! Coherence vectors, correlation tensors and the entanglement measures
//! `E3` (inter-three-qubit) and `E2` (inter-two-qubit) of three-qubit states.
//!
//! All quantities are Pauli expectation values:
//!
//! ```text
//! λᵢ(m)        = Tr(ρ σᵢ⁽ᵐ⁾)
//! Kᵢⱼ(m,n)     = Tr(ρ σᵢ⁽ᵐ⁾ σⱼ⁽ⁿ⁾)
//! Kᵢⱼₖ(1,2,3)  = Tr(ρ σᵢ ⊗ σⱼ ⊗ σₖ)
//! Mᵢⱼ(m,n)     = Kᵢⱼ(m,n) − λᵢ(m) λⱼ(n)
//! Mᵢⱼₖ(1,2,3)  = Kᵢⱼₖ − λᵢ(1) Mⱼₖ(2,3) − λⱼ(2) Mᵢₖ(1,3) − λₖ(3) Mᵢⱼ(1,2) − λᵢ(1) λⱼ(2) λₖ(3)
//! E3           = ¼ Σ Mᵢⱼₖ²
//! E2(m,n)      = ⅓ Σ Mᵢⱼ(m,n)²
//! ```
//!
//! Qubits and Pauli indices are labelled 1..=3. `σ₃` is `diag(−1, +1)` in
//! the `(|0⟩, |1⟩)` basis, so `|0⟩` has `λ₃ = −1`.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::linalg::{kron, ComplexMatrix, DensityMatrix, PureState};

/// Qubit pairs in reporting order.
pub const PAIRS: [(usize, usize); 3] = [(1, 2), (2, 3), (1, 3)];

pub type Tensor2 = [[f64; 3]; 3];
pub type Tensor3 = [[[f64; 3]; 3]; 3];

const THREE_QUBITS: [usize; 3] = [2, 2, 2];

/// The operator triple used for all expectation values.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliBasis {
    ops: [ComplexMatrix; 3],
}

impl PauliBasis {
    pub fn standard() -> Self {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let sigma1 = ComplexMatrix::from_fn(2, 2, |r, c| if r != c { one } else { z });
        let sigma2 = ComplexMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => -i,
            (1, 0) => i,
            _ => z,
        });
        let sigma3 = ComplexMatrix::from_diagonal(&[-1.0, 1.0]);
        Self {
            ops: [sigma1, sigma2, sigma3],
        }
    }

    /// Same triple with `σ₃` negated; only useful for exercising the checks.
    pub fn with_flipped_sigma3() -> Self {
        let mut basis = Self::standard();
        basis.ops[2] = basis.ops[2].scale(-1.0);
        basis
    }

    /// `σᵢ` for `i` in 1..=3.
    pub fn operator(&self, i: usize) -> Result<&ComplexMatrix> {
        match i {
            1..=3 => Ok(&self.ops[i - 1]),
            _ => domain(format!("Pauli index {i} outside 1..=3")),
        }
    }

    /// Tensor product placing `σ` (or identity for `None`) on each qubit.
    fn embed(&self, factors: [Option<usize>; 3]) -> ComplexMatrix {
        let identity = ComplexMatrix::identity(2);
        let op = |f: Option<usize>| f.map_or(&identity, |i| &self.ops[i]);
        kron(&kron(op(factors[0]), op(factors[1])), op(factors[2]))
    }

    fn expectation(&self, rho: &DensityMatrix, factors: [Option<usize>; 3]) -> f64 {
        let op = self.embed(factors);
        let (r, o) = (rho.matrix().as_inner(), op.as_inner());
        let n = rho.dim();
        // Tr(ρO) = Σ ρ_ab O_ba; real because both factors are Hermitian.
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 0..n {
            for b in 0..n {
                acc += r[(a, b)] * o[(b, a)];
            }
        }
        acc.re
    }

    pub fn coherence_vector(&self, rho: &DensityMatrix, m: usize) -> Result<CoherenceVector> {
        check_three_qubits(rho)?;
        check_qubit(m)?;
        let mut lambda = [0.0; 3];
        for (i, l) in lambda.iter_mut().enumerate() {
            let mut f = [None; 3];
            f[m - 1] = Some(i);
            *l = self.expectation(rho, f);
        }
        Ok(CoherenceVector { qubit: m, lambda })
    }

    pub fn correlation2(&self, rho: &DensityMatrix, m: usize, n: usize) -> Result<PairCorrelation> {
        check_three_qubits(rho)?;
        check_qubit(m)?;
        check_qubit(n)?;
        if m >= n {
            return domain(format!("pair ({m}, {n}) must satisfy m < n"));
        }
        let mut k = [[0.0; 3]; 3];
        for (i, row) in k.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let mut f = [None; 3];
                f[m - 1] = Some(i);
                f[n - 1] = Some(j);
                *v = self.expectation(rho, f);
            }
        }
        Ok(PairCorrelation { pair: (m, n), k })
    }

    pub fn correlation3(&self, rho: &DensityMatrix) -> Result<TripleCorrelation> {
        check_three_qubits(rho)?;
        let mut k = [[[0.0; 3]; 3]; 3];
        for (i, plane) in k.iter_mut().enumerate() {
            for (j, row) in plane.iter_mut().enumerate() {
                for (l, v) in row.iter_mut().enumerate() {
                    *v = self.expectation(rho, [Some(i), Some(j), Some(l)]);
                }
            }
        }
        Ok(TripleCorrelation { k })
    }

    pub fn measures(&self, rho: &DensityMatrix) -> Result<EntanglementReport> {
        check_three_qubits(rho)?;
        let lambdas = [
            self.coherence_vector(rho, 1)?,
            self.coherence_vector(rho, 2)?,
            self.coherence_vector(rho, 3)?,
        ];
        let mut k2 = Vec::with_capacity(3);
        for (m, n) in PAIRS {
            k2.push(self.correlation2(rho, m, n)?);
        }
        let k2: [PairCorrelation; 3] = k2.try_into().expect("three pairs");
        let k3 = self.correlation3(rho)?;
        let tensors = EntanglementTensors::from_correlations(&lambdas, &k2, &k3);
        let e3 = 0.25 * sum_sq3(&tensors.m3);
        let e2 = tensors.m2.map(|m| sum_sq2(&m.k) / 3.0);
        Ok(EntanglementReport {
            e3,
            e2,
            tensors,
            lambdas,
            k2,
            k3,
        })
    }
}

impl Default for PauliBasis {
    fn default() -> Self {
        Self::standard()
    }
}

fn check_three_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != THREE_QUBITS {
        return domain(format!(
            "expected a three-qubit state, got subsystems {:?}",
            rho.dims()
        ));
    }
    Ok(())
}

fn check_qubit(m: usize) -> Result<()> {
    if !(1..=3).contains(&m) {
        return domain(format!("qubit label {m} outside 1..=3"));
    }
    Ok(())
}

fn pair_slot(m: usize, n: usize) -> Option<usize> {
    PAIRS.iter().position(|&p| p == (m, n))
}

fn sum_sq2(t: &Tensor2) -> f64 {
    t.iter().flatten().map(|x| x * x).sum()
}

fn sum_sq3(t: &Tensor3) -> f64 {
    t.iter().flatten().flatten().map(|x| x * x).sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceVector {
    /// 1-based qubit label.
    pub qubit: usize,
    pub lambda: [f64; 3],
}

impl CoherenceVector {
    /// `λ` for Pauli index `i` in 1..=3.
    pub fn component(&self, i: usize) -> f64 {
        self.lambda[i - 1]
    }

    pub fn norm(&self) -> f64 {
        self.lambda.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Two-qubit tensor `Kᵢⱼ(m,n)`; also used for `Mᵢⱼ(m,n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCorrelation {
    pub pair: (usize, usize),
    pub k: Tensor2,
}

impl PairCorrelation {
    pub fn component(&self, i: usize, j: usize) -> f64 {
        self.k[i - 1][j - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleCorrelation {
    pub k: Tensor3,
}

impl TripleCorrelation {
    pub fn component(&self, i: usize, j: usize, l: usize) -> f64 {
        self.k[i - 1][j - 1][l - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementTensors {
    /// `Mᵢⱼ(m,n)` in [`PAIRS`] order.
    pub m2: [PairCorrelation; 3],
    pub m3: Tensor3,
}

impl EntanglementTensors {
    pub fn from_correlations(
        lambdas: &[CoherenceVector; 3],
        k2: &[PairCorrelation; 3],
        k3: &TripleCorrelation,
    ) -> Self {
        let l = |q: usize| lambdas[q - 1].lambda;
        let m2 = k2.map(|p| {
            let (lm, ln) = (l(p.pair.0), l(p.pair.1));
            let mut k = p.k;
            for (i, row) in k.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v -= lm[i] * ln[j];
                }
            }
            PairCorrelation { pair: p.pair, k }
        });
        let slot = |m, n| m2[pair_slot(m, n).expect("known pair")].k;
        let (m12, m23, m13) = (slot(1, 2), slot(2, 3), slot(1, 3));
        let (l1, l2, l3) = (l(1), l(2), l(3));
        let mut m3 = k3.k;
        for (i, plane) in m3.iter_mut().enumerate() {
            for (j, row) in plane.iter_mut().enumerate() {
                for (k, v) in row.iter_mut().enumerate() {
                    *v -= l1[i] * m23[j][k]
                        + l2[j] * m13[i][k]
                        + l3[k] * m12[i][j]
                        + l1[i] * l2[j] * l3[k];
                }
            }
        }
        Self { m2, m3 }
    }

    /// `Mᵢⱼ(m,n)` with 1-based labels.
    pub fn m2(&self, m: usize, n: usize, i: usize, j: usize) -> f64 {
        let slot = pair_slot(m, n).expect("pair must be one of (1,2), (2,3), (1,3)");
        self.m2[slot].component(i, j)
    }

    pub fn m3(&self, i: usize, j: usize, k: usize) -> f64 {
        self.m3[i - 1][j - 1][k - 1]
    }
}

/// Everything computed for one three-qubit state.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub e3: f64,
    /// `E2` in [`PAIRS`] order.
    pub e2: [f64; 3],
    pub tensors: EntanglementTensors,
    pub lambdas: [CoherenceVector; 3],
    pub k2: [PairCorrelation; 3],
    pub k3: TripleCorrelation,
}

impl EntanglementReport {
    pub fn e2_pair(&self, m: usize, n: usize) -> Option<f64> {
        pair_slot(m, n).map(|s| self.e2[s])
    }

    /// Mean of the three pairwise values; equal to each of them for
    /// permutation-symmetric states.
    pub fn e2_mean(&self) -> f64 {
        self.e2.iter().sum::<f64>() / 3.0
    }
}

/// `σᵢ` of the standard triple.
pub fn pauli_operator(i: usize) -> Result<ComplexMatrix> {
    PauliBasis::standard().operator(i).cloned()
}

pub fn coherence_vector(rho: &DensityMatrix, m: usize) -> Result<CoherenceVector> {
    PauliBasis::standard().coherence_vector(rho, m)
}

pub fn correlation2(rho: &DensityMatrix, m: usize, n: usize) -> Result<PairCorrelation> {
    PauliBasis::standard().correlation2(rho, m, n)
}

pub fn correlation3(rho: &DensityMatrix) -> Result<TripleCorrelation> {
    PauliBasis::standard().correlation3(rho)
}

pub fn entanglement_tensors(rho: &DensityMatrix) -> Result<EntanglementTensors> {
    Ok(measures(rho)?.tensors)
}

pub fn measures(rho: &DensityMatrix) -> Result<EntanglementReport> {
    PauliBasis::standard().measures(rho)
}

/// `cos α |000⟩ + sin α |111⟩`
pub fn input_state(alpha: f64) -> PureState {
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0] = Complex64::new(alpha.cos(), 0.0);
    amps[7] = Complex64::new(alpha.sin(), 0.0);
    PureState::new(THREE_QUBITS.to_vec(), amps).expect("unit norm for every alpha")
}

/// `(E3, E2)` of [`input_state`] from the analytic expressions.
pub fn closed_form_input_measures(alpha: f64) -> (f64, f64) {
    let s2 = (2.0 * alpha).sin().powi(2);
    let c2 = (2.0 * alpha).cos().powi(2);
    (s2 * (1.0 + s2 * c2), s2 * s2 / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    const TOL: f64 = 1e-12;

    fn pure(alpha: f64) -> DensityMatrix {
        input_state(alpha).projector()
    }

    #[test]
    fn pauli_orthogonality() {
        for i in 1..=3 {
            for j in 1..=3 {
                let p = &pauli_operator(i).unwrap() * &pauli_operator(j).unwrap();
                let want = if i == j { 2.0 } else { 0.0 };
                assert!((p.trace() - Complex64::new(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn pauli_conventions() {
        let s3 = pauli_operator(3).unwrap();
        assert_eq!(s3.get(0, 0), Complex64::new(-1.0, 0.0));
        let s1 = pauli_operator(1).unwrap();
        let ket0 = ComplexMatrix::column(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let ket1 = ComplexMatrix::column(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert_eq!(&s1 * &ket0, ket1);
        assert!(pauli_operator(0).is_err());
        assert!(pauli_operator(4).is_err());
    }

    #[test]
    fn input_coherence_vector() {
        for alpha in [0.0, 0.3, FRAC_PI_4, 1.2] {
            for m in 1..=3 {
                let l = coherence_vector(&pure(alpha), m).unwrap();
                assert!(l.lambda[0].abs() < TOL && l.lambda[1].abs() < TOL);
                assert!((l.lambda[2] + (2.0 * alpha).cos()).abs() < TOL);
            }
        }
    }

    #[test]
    fn input_correlations() {
        let alpha: f64 = 0.37;
        let (s, c) = ((2.0 * alpha).sin(), (2.0 * alpha).cos());
        let rho = pure(alpha);
        for (m, n) in PAIRS {
            assert!((correlation2(&rho, m, n).unwrap().component(3, 3) - 1.0).abs() < TOL);
        }
        let k = correlation3(&rho).unwrap();
        assert!((k.component(1, 1, 1) - s).abs() < TOL);
        assert!((k.component(3, 3, 3) + c).abs() < TOL);
        for (i, j, l) in [(1, 2, 2), (2, 1, 2), (2, 2, 1)] {
            assert!((k.component(i, j, l) + s).abs() < TOL);
        }
    }

    #[test]
    fn input_entanglement_tensors() {
        let alpha: f64 = 0.61;
        let (s, c) = ((2.0 * alpha).sin(), (2.0 * alpha).cos());
        let t = entanglement_tensors(&pure(alpha)).unwrap();
        assert!((t.m3(1, 1, 1) - s).abs() < TOL);
        assert!((t.m3(3, 3, 3) - 2.0 * s * s * c).abs() < TOL);
        assert!((t.m3(1, 2, 2) + s).abs() < TOL);
        for (m, n) in PAIRS {
            assert!((t.m2(m, n, 3, 3) - s * s).abs() < TOL);
        }
    }

    #[test]
    fn correlation2_rejects_bad_pair() {
        let rho = pure(0.2);
        assert!(correlation2(&rho, 2, 2).is_err());
        assert!(correlation2(&rho, 3, 1).is_err());
        assert!(coherence_vector(&rho, 4).is_err());
    }

    #[test]
    fn rejects_non_three_qubit_states() {
        let two = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
        assert!(measures(&two).is_err());
        let eight = DensityMatrix::maximally_mixed(vec![8]).unwrap();
        assert!(measures(&eight).is_err());
    }

    #[test]
    fn maximally_mixed_has_no_structure() {
        let rho = DensityMatrix::maximally_mixed(vec![2, 2, 2]).unwrap();
        let r = measures(&rho).unwrap();
        assert!(r.lambdas.iter().all(|l| l.norm() < TOL));
        assert!(r.k3.k.iter().flatten().flatten().all(|x| x.abs() < TOL));
        assert!(r.e3.abs() < TOL && r.e2.iter().all(|x| x.abs() < TOL));
    }

    #[test]
    fn ghz_and_product_measures() {
        let r = measures(&pure(FRAC_PI_4)).unwrap();
        assert!((r.e3 - 1.0).abs() < TOL);
        assert!(r.e2.iter().all(|e| (e - 1.0 / 3.0).abs() < TOL));
        let r = measures(&pure(0.0)).unwrap();
        assert!(r.e3.abs() < TOL && r.e2.iter().all(|e| e.abs() < TOL));
    }

    #[test]
    fn closed_form_values() {
        let (e3, e2) = closed_form_input_measures(FRAC_PI_4);
        assert!((e3 - 1.0).abs() < 1e-15 && (e2 - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(closed_form_input_measures(0.0), (0.0, 0.0));
        // sin²2α = cos²2α = ½ at π/8.
        let (e3, e2) = closed_form_input_measures(std::f64::consts::PI / 8.0);
        assert!((e3 - 0.625).abs() < 1e-15 && (e2 - 1.0 / 12.0).abs() < 1e-15);
        let r = measures(&pure(std::f64::consts::PI / 8.0)).unwrap();
        assert!((r.e3 - 0.625).abs() < TOL && (r.e2_mean() - 1.0 / 12.0).abs() < TOL);
    }

    #[test]
    fn flipped_sigma3_negates_lambda3() {
        let alpha = 0.2;
        let l = PauliBasis::with_flipped_sigma3()
            .coherence_vector(&pure(alpha), 1)
            .unwrap();
        assert!((l.lambda[2] - (2.0 * alpha).cos()).abs() < TOL);
    }
}
