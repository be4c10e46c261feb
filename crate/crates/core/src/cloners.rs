//! Universal cloning machines as isometries, and the channels they induce
//! on three-qubit states.
//!
//! A cloner is stored as the isometry `V : H_in → H_original ⊗ H_copy ⊗ H_machine`
//! describing its action on a blank copy and a reset machine. Its output is
//! `V ρ V†` on the joint space with everything except the originals (or the
//! copies) traced out. [`CloningChannel::apply_via_joint`] does exactly that;
//! [`CloningChannel::apply`] uses the equivalent Kraus operators read off the
//! blocks of `V`, which avoids materializing the 512-dimensional joint state.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::entanglement::{closed_form_input_measures, input_state, measures};
use crate::error::{domain, Error, Result};
use crate::linalg::{
    apply_kraus, fidelity_pure, kraus_from_isometry, kron, partial_trace, ComplexMatrix,
    DensityMatrix, STATE_TOL,
};

const THREE_QUBITS: [usize; 3] = [2, 2, 2];

/// Isometry from an input space into `original ⊗ copy ⊗ machine`.
#[derive(Debug, Clone, PartialEq)]
pub struct CloningIsometry {
    in_dim: usize,
    out_dims: [usize; 3],
    matrix: ComplexMatrix,
}

impl CloningIsometry {
    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    /// `(original, copy, machine)` dimensions.
    pub fn out_dims(&self) -> [usize; 3] {
        self.out_dims
    }

    pub fn out_dim(&self) -> usize {
        self.out_dims.iter().product()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Largest entry of `|V†V − I|`.
    pub fn isometry_defect(&self) -> f64 {
        let gram = &self.matrix.adjoint() * &self.matrix;
        gram.max_abs_diff(&ComplexMatrix::identity(self.in_dim))
    }

    /// Amplitude of `|original, copy, machine⟩` in the image of `|input⟩`.
    pub fn amplitude(
        &self,
        input: usize,
        original: usize,
        copy: usize,
        machine: usize,
    ) -> Complex64 {
        let [_, dc, dm] = self.out_dims;
        self.matrix
            .get((original * dc + copy) * dm + machine, input)
    }
}

struct ColumnBuilder {
    dims: [usize; 3],
    column: Vec<Complex64>,
}

impl ColumnBuilder {
    fn new(dims: [usize; 3]) -> Self {
        Self {
            dims,
            column: vec![Complex64::new(0.0, 0.0); dims.iter().product()],
        }
    }

    fn add(&mut self, amp: f64, original: usize, copy: usize, machine: usize) {
        let [_, dc, dm] = self.dims;
        self.column[(original * dc + copy) * dm + machine] += Complex64::new(amp, 0.0);
    }
}

fn from_columns(
    in_dim: usize,
    out_dims: [usize; 3],
    columns: Vec<Vec<Complex64>>,
) -> CloningIsometry {
    let rows = out_dims.iter().product();
    let matrix = ComplexMatrix::from_fn(rows, in_dim, |r, c| columns[c][r]);
    CloningIsometry {
        in_dim,
        out_dims,
        matrix,
    }
}

/// Machine basis labels of the single-qubit cloner.
const UP: usize = 0;
const DOWN: usize = 1;

/// Single-qubit universal cloner:
///
/// ```text
/// |0⟩|0⟩|X⟩ → √(2/3) |00⟩|↑⟩ + √(1/6) (|10⟩ + |01⟩)|↓⟩
/// |1⟩|0⟩|X⟩ → √(2/3) |11⟩|↓⟩ + √(1/6) (|10⟩ + |01⟩)|↑⟩
/// ```
pub fn local_isometry() -> CloningIsometry {
    let dims = [2, 2, 2];
    let major = (2.0f64 / 3.0).sqrt();
    let minor = (1.0f64 / 6.0).sqrt();

    let mut zero = ColumnBuilder::new(dims);
    zero.add(major, 0, 0, UP);
    zero.add(minor, 1, 0, DOWN);
    zero.add(minor, 0, 1, DOWN);

    let mut one = ColumnBuilder::new(dims);
    one.add(major, 1, 1, DOWN);
    one.add(minor, 1, 0, UP);
    one.add(minor, 0, 1, UP);

    from_columns(2, dims, vec![zero.column, one.column])
}

/// Cloning coefficients `(c, d)` with `c² = 2/(n+1)` and `d² = 1/(2(n+1))`.
pub fn nonlocal_coefficients(n: usize) -> (f64, f64) {
    let n1 = (n + 1) as f64;
    ((2.0 / n1).sqrt(), (1.0 / (2.0 * n1)).sqrt())
}

/// Universal cloner for an `n`-level system with an `n`-level machine:
///
/// ```text
/// |φᵢ⟩|0⟩|X⟩ → c |φᵢ⟩|φᵢ⟩|Xᵢ⟩ + d Σ_{j≠i} (|φᵢ⟩|φⱼ⟩ + |φⱼ⟩|φᵢ⟩)|Xⱼ⟩
/// ```
///
/// with the computational basis for both `|φᵢ⟩` and `|Xᵢ⟩`.
pub fn nonlocal_isometry(n: usize) -> Result<CloningIsometry> {
    if n < 2 {
        return domain(format!("cloner dimension must be at least 2, got {n}"));
    }
    let dims = [n, n, n];
    let (c, d) = nonlocal_coefficients(n);
    let columns = (0..n)
        .map(|i| {
            let mut col = ColumnBuilder::new(dims);
            col.add(c, i, i, i);
            for j in (0..n).filter(|&j| j != i) {
                col.add(d, i, j, j);
                col.add(d, j, i, j);
            }
            col.column
        })
        .collect();
    Ok(from_columns(n, dims, columns))
}

/// The two cloning schemes for a three-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Each qubit copied by its own single-qubit cloner.
    Local,
    /// The state cloned as one 8-level system.
    NonLocal,
}

/// Both three-qubit reduced states after cloning.
#[derive(Debug, Clone, PartialEq)]
pub struct CloneOutput {
    pub originals: DensityMatrix,
    pub copies: DensityMatrix,
    /// Dimension of the joint original ⊗ copy ⊗ machine space.
    pub joint_dim: usize,
}

impl CloneOutput {
    /// The canonical output (the copies).
    pub fn state(&self) -> &DensityMatrix {
        &self.copies
    }

    pub fn into_state(self) -> DensityMatrix {
        self.copies
    }
}

/// A cloner lifted to act on three-qubit density matrices.
#[derive(Debug, Clone)]
pub struct CloningChannel {
    scheme: Scheme,
    isometry: ComplexMatrix,
    joint_dims: Vec<usize>,
    original_slots: Vec<usize>,
    copy_slots: Vec<usize>,
    original_kraus: Vec<ComplexMatrix>,
    copy_kraus: Vec<ComplexMatrix>,
}

impl CloningChannel {
    fn build(
        scheme: Scheme,
        isometry: ComplexMatrix,
        joint_dims: Vec<usize>,
        original_slots: Vec<usize>,
        copy_slots: Vec<usize>,
    ) -> Self {
        let original_kraus = kraus_from_isometry(&isometry, &joint_dims, &original_slots)
            .expect("consistent layout");
        let copy_kraus =
            kraus_from_isometry(&isometry, &joint_dims, &copy_slots).expect("consistent layout");
        Self {
            scheme,
            isometry,
            joint_dims,
            original_slots,
            copy_slots,
            original_kraus,
            copy_kraus,
        }
    }

    /// Three single-qubit cloners. Joint subsystems are ordered
    /// `(orig1, copy1, mach1, orig2, copy2, mach2, orig3, copy3, mach3)`.
    pub fn local() -> Self {
        let v = local_isometry();
        let total = kron(&kron(v.matrix(), v.matrix()), v.matrix());
        Self::build(
            Scheme::Local,
            total,
            vec![2; 9],
            vec![0, 3, 6],
            vec![1, 4, 7],
        )
    }

    /// The 8-level cloner; joint subsystems `(original, copy, machine)`.
    pub fn nonlocal() -> Self {
        let v = nonlocal_isometry(8).expect("n = 8 is valid");
        Self::build(Scheme::NonLocal, v.matrix, vec![8, 8, 8], vec![0], vec![1])
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// The full isometry from the 8-dimensional input to the joint space.
    pub fn isometry(&self) -> &ComplexMatrix {
        &self.isometry
    }

    /// Kraus operators of the map onto the copies.
    pub fn copy_kraus(&self) -> &[ComplexMatrix] {
        &self.copy_kraus
    }

    fn check_input(rho: &DensityMatrix) -> Result<()> {
        if rho.dims() != THREE_QUBITS {
            return domain(format!(
                "cloning expects a three-qubit state, got {:?}",
                rho.dims()
            ));
        }
        Ok(())
    }

    fn finish(&self, originals: ComplexMatrix, copies: ComplexMatrix) -> Result<CloneOutput> {
        let originals = DensityMatrix::unchecked(THREE_QUBITS.to_vec(), originals)?;
        let copies = DensityMatrix::unchecked(THREE_QUBITS.to_vec(), copies)?;
        let asym = originals.max_abs_diff(&copies);
        if asym > STATE_TOL {
            return Err(Error::Internal(format!(
                "original and copy outputs differ by {asym:e}"
            )));
        }
        Ok(CloneOutput {
            originals,
            copies,
            joint_dim: self.isometry.rows(),
        })
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<CloneOutput> {
        Self::check_input(rho)?;
        let originals = apply_kraus(&self.original_kraus, rho.matrix());
        let copies = apply_kraus(&self.copy_kraus, rho.matrix());
        self.finish(originals, copies)
    }

    /// Forms the joint state `V ρ V†` and takes partial traces.
    pub fn apply_via_joint(&self, rho: &DensityMatrix) -> Result<CloneOutput> {
        Self::check_input(rho)?;
        let v = &self.isometry;
        let joint = &(v * rho.matrix()) * &v.adjoint();
        let joint = DensityMatrix::unchecked(self.joint_dims.clone(), joint)?;
        let originals = partial_trace(&joint, &self.original_slots)?;
        let copies = partial_trace(&joint, &self.copy_slots)?;
        self.finish(originals.matrix().clone(), copies.matrix().clone())
    }
}

fn shared(scheme: Scheme) -> &'static CloningChannel {
    static LOCAL: OnceLock<CloningChannel> = OnceLock::new();
    static NONLOCAL: OnceLock<CloningChannel> = OnceLock::new();
    match scheme {
        Scheme::Local => LOCAL.get_or_init(CloningChannel::local),
        Scheme::NonLocal => NONLOCAL.get_or_init(CloningChannel::nonlocal),
    }
}

/// Channel for `scheme`, built once per process.
pub fn channel(scheme: Scheme) -> &'static CloningChannel {
    shared(scheme)
}

pub fn apply_local_cloning(rho: &DensityMatrix) -> Result<CloneOutput> {
    shared(Scheme::Local).apply(rho)
}

pub fn apply_nonlocal_cloning(rho: &DensityMatrix) -> Result<CloneOutput> {
    shared(Scheme::NonLocal).apply(rho)
}

/// Builds an `|a⟩⟨b|`-sparse three-qubit matrix from `(row, col, value)` triples.
fn sparse_state(entries: &[(usize, usize, f64)]) -> DensityMatrix {
    let mut m = vec![Complex64::new(0.0, 0.0); 64];
    for &(r, c, v) in entries {
        m[r * 8 + c] += Complex64::new(v, 0.0);
    }
    let matrix = ComplexMatrix::from_row_slice(8, 8, &m).expect("finite entries");
    DensityMatrix::unchecked(THREE_QUBITS.to_vec(), matrix).expect("8x8")
}

const SINGLE_EXCITATIONS: [usize; 3] = [0b100, 0b010, 0b001];
const DOUBLE_EXCITATIONS: [usize; 3] = [0b110, 0b011, 0b101];

/// Local-cloning output for `cos α |000⟩ + sin α |111⟩`, entry by entry.
pub fn closed_form_local_output(alpha: f64) -> DensityMatrix {
    let (s, c) = alpha.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let mut entries = vec![
        (0, 0, (1.0 + 124.0 * c2) / 216.0),
        (7, 7, (1.0 + 124.0 * s2) / 216.0),
        (7, 0, 8.0 * s * c / 27.0),
        (0, 7, 8.0 * s * c / 27.0),
    ];
    entries.extend(DOUBLE_EXCITATIONS.map(|k| (k, k, (5.0 + 20.0 * s2) / 216.0)));
    entries.extend(SINGLE_EXCITATIONS.map(|k| (k, k, (5.0 + 20.0 * c2) / 216.0)));
    sparse_state(&entries)
}

/// Non-local-cloning output for `cos α |000⟩ + sin α |111⟩`, entry by entry.
pub fn closed_form_nonlocal_output(alpha: f64) -> DensityMatrix {
    let (s, c) = alpha.sin_cos();
    let mut entries = vec![
        (0, 0, (1.0 + 10.0 * c * c) / 18.0),
        (7, 7, (1.0 + 10.0 * s * s) / 18.0),
        (7, 0, 5.0 * s * c / 9.0),
        (0, 7, 5.0 * s * c / 9.0),
    ];
    for k in DOUBLE_EXCITATIONS.into_iter().chain(SINGLE_EXCITATIONS) {
        entries.push((k, k, 1.0 / 18.0));
    }
    sparse_state(&entries)
}

/// Analytic `(E3, E2)` after local cloning.
pub fn closed_form_local_measures(alpha: f64) -> (f64, f64) {
    let (e3, e2) = closed_form_input_measures(alpha);
    (64.0 / 729.0 * e3, 16.0 / 81.0 * e2)
}

/// Analytic `(E3, E2)` after non-local cloning.
pub fn closed_form_nonlocal_measures(alpha: f64) -> (f64, f64) {
    let s2 = (2.0 * alpha).sin().powi(2);
    let c2 = (2.0 * alpha).cos().powi(2);
    let shrink = 1.0 - 25.0 / 27.0 * c2;
    let e3 = 25.0 / 81.0 * s2 + 25.0 / 729.0 * shrink * shrink * c2;
    let e2 = 25.0 / 243.0 * (1.0 - 5.0 / 9.0 * c2).powi(2);
    (e3, e2)
}

/// Analytic fidelity of the local-cloning output with the input.
pub fn fidelity_local(alpha: f64) -> f64 {
    let (s, c) = alpha.sin_cos();
    125.0 / 216.0 - 15.0 / 27.0 * s * s * c * c
}

/// Analytic fidelity of the non-local-cloning output; independent of the input.
pub fn fidelity_nonlocal() -> f64 {
    11.0 / 18.0
}

/// Fidelity of the simulated channel output with the input state.
pub fn simulated_fidelity(scheme: Scheme, alpha: f64) -> Result<f64> {
    let psi = input_state(alpha);
    let out = shared(scheme).apply(&psi.projector())?;
    fidelity_pure(&psi, out.state())
}

/// `E2` after non-local cloning minus `E2` of the input, as a function of
/// `cos α`, both from the simulated pipeline.
pub fn e2_gain_nonlocal(cos_alpha: f64) -> Result<f64> {
    let alpha = cos_alpha.clamp(-1.0, 1.0).acos();
    let rho = input_state(alpha).projector();
    let before = measures(&rho)?.e2_mean();
    let after = measures(apply_nonlocal_cloning(&rho)?.state())?.e2_mean();
    Ok(after - before)
}

/// Width of the bracket returned by [`bisect`].
pub const ROOT_BRACKET: f64 = 1e-6;

/// Bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect(mut f: impl FnMut(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Internal(format!(
            "no sign change on [{lo}, {hi}]: f = {f_lo:e}, {f_hi:e}"
        )));
    }
    while hi - lo > ROOT_BRACKET {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Values of `cos α` where non-local cloning stops amplifying `E2`,
/// in ascending order. `E2` is amplified below the first and above the second.
pub fn find_e2_crossings() -> Result<(f64, f64)> {
    // The gain is negative at the GHZ point and positive at both ends.
    let ghz = std::f64::consts::FRAC_1_SQRT_2;
    let lower = bisect(e2_gain_nonlocal, 0.0, ghz)?;
    let upper = bisect(e2_gain_nonlocal, ghz, 1.0)?;
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_hermitian, PureState};
    use std::f64::consts::FRAC_PI_4;

    const TOL: f64 = 1e-12;

    #[test]
    fn local_isometry_shape_and_norm() {
        let v = local_isometry();
        assert_eq!(v.in_dim(), 2);
        assert_eq!(v.out_dims(), [2, 2, 2]);
        assert!(v.isometry_defect() < 1e-15);
        assert!(
            (v.amplitude(0, 0, 0, UP) - Complex64::new((2.0f64 / 3.0).sqrt(), 0.0)).norm() < 1e-15
        );
        assert!(
            (v.amplitude(1, 1, 1, DOWN) - Complex64::new((2.0f64 / 3.0).sqrt(), 0.0)).norm()
                < 1e-15
        );
    }

    #[test]
    fn local_single_qubit_copy_fidelity() {
        let v = local_isometry();
        let joint = &(v.matrix() * PureState::basis(vec![2], 0).unwrap().projector().matrix())
            * &v.matrix().adjoint();
        let joint = DensityMatrix::unchecked(vec![2, 2, 2], joint).unwrap();
        let copy = partial_trace(&joint, &[1]).unwrap();
        assert!((copy.get(0, 0).re - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn nonlocal_isometry_coefficients() {
        let (c, d) = nonlocal_coefficients(8);
        assert!((c * c - 2.0 / 9.0).abs() < 1e-15);
        assert!((d * d - 1.0 / 18.0).abs() < 1e-15);
        for n in 2..=9 {
            let (c, d) = nonlocal_coefficients(n);
            assert!((c * c + 2.0 * (n - 1) as f64 * d * d - 1.0).abs() < 1e-15);
            let v = nonlocal_isometry(n).unwrap();
            assert!(v.isometry_defect() < 1e-14, "n = {n}");
        }
        assert!(matches!(nonlocal_isometry(1), Err(Error::Domain(_))));
    }

    #[test]
    fn nonlocal_qubit_cloner_matches_local_fidelity() {
        let v = nonlocal_isometry(2).unwrap();
        let joint = &(v.matrix() * PureState::basis(vec![2], 0).unwrap().projector().matrix())
            * &v.matrix().adjoint();
        let joint = DensityMatrix::unchecked(vec![2, 2, 2], joint).unwrap();
        let copy = partial_trace(&joint, &[1]).unwrap();
        assert!((copy.get(0, 0).re - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn local_output_reference_entries() {
        for alpha in [0.0, 0.4, FRAC_PI_4, 1.3] {
            let out = apply_local_cloning(&input_state(alpha).projector()).unwrap();
            assert_eq!(out.joint_dim, 512);
            let rho = out.state();
            let (s, c) = alpha.sin_cos();
            assert!((rho.get(0, 0).re - (1.0 + 124.0 * c * c) / 216.0).abs() < TOL);
            assert!((rho.get(7, 0).re - 8.0 * s * c / 27.0).abs() < TOL);
            assert!(rho.max_abs_diff(&closed_form_local_output(alpha)) < TOL);
        }
    }

    #[test]
    fn nonlocal_output_reference_entries() {
        for alpha in [0.0, 0.4, FRAC_PI_4, 1.3] {
            let rho = apply_nonlocal_cloning(&input_state(alpha).projector())
                .unwrap()
                .into_state();
            let (s, c) = alpha.sin_cos();
            assert!((rho.get(0, 0).re - (1.0 + 10.0 * c * c) / 18.0).abs() < TOL);
            assert!((rho.get(7, 0).re - 5.0 * s * c / 9.0).abs() < TOL);
            for k in [1, 2, 3, 4, 5, 6] {
                assert!((rho.get(k, k).re - 1.0 / 18.0).abs() < TOL);
            }
            assert!(rho.max_abs_diff(&closed_form_nonlocal_output(alpha)) < TOL);
        }
    }

    #[test]
    fn closed_forms_are_states() {
        for alpha in [0.0, 0.3, FRAC_PI_4, 1.0, std::f64::consts::FRAC_PI_2] {
            for rho in [
                closed_form_local_output(alpha),
                closed_form_nonlocal_output(alpha),
            ] {
                assert!((rho.trace() - 1.0).abs() < 1e-15);
                rho.validate().unwrap();
            }
        }
        let m = measures(&closed_form_local_output(0.0)).unwrap();
        assert!(m.e3.abs() < TOL && m.e2_mean().abs() < TOL);
    }

    #[test]
    fn ghz_clone_spectrum() {
        let eig = eig_hermitian(closed_form_nonlocal_output(FRAC_PI_4).matrix()).unwrap();
        assert!((eig.values[0] - 11.0 / 18.0).abs() < TOL);
        assert!(eig.values[1..].iter().all(|v| (v - 1.0 / 18.0).abs() < TOL));
    }

    #[test]
    fn ghz_clone_measures() {
        let ghz = input_state(FRAC_PI_4).projector();
        let local = measures(apply_local_cloning(&ghz).unwrap().state()).unwrap();
        assert!((local.e3 - 64.0 / 729.0).abs() < TOL);
        assert!((local.e2_mean() - 16.0 / 243.0).abs() < TOL);
        let nonlocal = measures(apply_nonlocal_cloning(&ghz).unwrap().state()).unwrap();
        assert!((nonlocal.e3 - 25.0 / 81.0).abs() < TOL);
        assert!((nonlocal.e2_mean() - 25.0 / 243.0).abs() < TOL);
    }

    #[test]
    fn fidelity_closed_forms() {
        assert!((fidelity_local(0.0) - 125.0 / 216.0).abs() < 1e-15);
        assert!((fidelity_local(FRAC_PI_4) - (125.0 / 216.0 - 5.0 / 36.0)).abs() < 1e-15);
        for alpha in [0.0, 0.2, FRAC_PI_4, 1.1] {
            assert!(
                (simulated_fidelity(Scheme::Local, alpha).unwrap() - fidelity_local(alpha)).abs()
                    < TOL
            );
            assert!(
                (simulated_fidelity(Scheme::NonLocal, alpha).unwrap() - 11.0 / 18.0).abs() < TOL
            );
            assert!(fidelity_local(alpha) < fidelity_nonlocal());
        }
    }

    #[test]
    fn e2_crossings() {
        // Roots of the closed-form gain, solved to 30 digits with an
        // independent arbitrary-precision root finder.
        let (lo, hi) = find_e2_crossings().unwrap();
        assert!((lo - 0.314_814_448_733_478).abs() < ROOT_BRACKET, "{lo}");
        assert!((hi - 0.949_153_234_661_631).abs() < ROOT_BRACKET, "{hi}");
        // Symmetric under cos 2a -> -cos 2a.
        assert!((lo * lo + hi * hi - 1.0).abs() < 4.0 * ROOT_BRACKET);
        assert!(e2_gain_nonlocal(lo - 0.01).unwrap() > 0.0);
        assert!(e2_gain_nonlocal(lo + 0.01).unwrap() < 0.0);
        assert!(e2_gain_nonlocal(hi - 0.01).unwrap() < 0.0);
        assert!(e2_gain_nonlocal(hi + 0.01).unwrap() > 0.0);
    }

    #[test]
    fn nonlocal_product_input_keeps_residual_correlations() {
        // |000> is unentangled, but its non-local clone has E3 > 0 and E2 > 0.
        let out = apply_nonlocal_cloning(&input_state(0.0).projector()).unwrap();
        let r = measures(out.state()).unwrap();
        let e3 = 25.0 / 729.0 * (2.0f64 / 27.0).powi(2);
        let e2 = 25.0 / 243.0 * (4.0f64 / 9.0).powi(2);
        assert!((r.e3 - e3).abs() < TOL, "{}", r.e3);
        assert!((r.e2_mean() - e2).abs() < TOL);
        assert_eq!(closed_form_nonlocal_measures(0.0), (e3, e2));
    }

    #[test]
    fn bisect_requires_sign_change() {
        let r = bisect(|x| Ok(x * x + 1.0), -1.0, 1.0);
        assert!(matches!(r, Err(Error::Internal(_))));
        let root = bisect(|x| Ok(x - 0.3), 0.0, 1.0).unwrap();
        assert!((root - 0.3).abs() < ROOT_BRACKET);
    }

    #[test]
    fn kraus_route_matches_joint_route() {
        let alpha = 0.7;
        let rho = input_state(alpha).projector();
        for ch in [CloningChannel::local(), CloningChannel::nonlocal()] {
            assert_eq!(ch.copy_kraus().len(), 64);
            let fast = ch.apply(&rho).unwrap();
            let slow = ch.apply_via_joint(&rho).unwrap();
            assert!(fast.copies.max_abs_diff(&slow.copies) < 1e-14);
            assert!(fast.originals.max_abs_diff(&slow.originals) < 1e-14);
            assert_eq!(slow.joint_dim, 512);
        }
    }

    #[test]
    fn rejects_wrong_dimensions() {
        let rho = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
        assert!(matches!(apply_local_cloning(&rho), Err(Error::Domain(_))));
        let rho = DensityMatrix::maximally_mixed(vec![8]).unwrap();
        assert!(matches!(
            apply_nonlocal_cloning(&rho),
            Err(Error::Domain(_))
        ));
    }
}
