//! Dense complex linear algebra over small tensor-product spaces.
//!
//! Subsystems are ordered big-endian: the first subsystem is the most
//! significant factor of a basis index, so for three qubits `|011⟩` is
//! index 3. Everything here is dense; the largest space the simulator
//! touches is 512-dimensional.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Largest matrix side accepted by [`eig_hermitian`].
pub const MAX_DIM: usize = 512;

/// Tolerance for the Hermitian and unit-trace checks on density matrices.
pub const STATE_TOL: f64 = 1e-12;

/// Most negative eigenvalue a density matrix may carry.
pub const PSD_TOL: f64 = 1e-10;

/// Dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    /// Wraps a nalgebra matrix, rejecting NaN or infinite entries.
    pub fn new(inner: DMatrix<Complex64>) -> Result<Self> {
        if inner.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return domain("matrix has non-finite entries");
        }
        Ok(Self(inner))
    }

    /// Builds a matrix from entries listed row by row.
    pub fn from_row_slice(rows: usize, cols: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return domain(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            ));
        }
        Self::new(DMatrix::from_row_slice(rows, cols, entries))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(rows, cols, f))
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// Column vector holding `amplitudes`.
    pub fn column(amplitudes: &[Complex64]) -> Self {
        Self(DMatrix::from_column_slice(amplitudes.len(), 1, amplitudes))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn as_inner(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(&self.0 * Complex64::new(factor, 0.0))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows(), self.cols()),
            (other.rows(), other.cols()),
            "shape mismatch"
        );
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// Kronecker product with `a` as the most significant factor.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix(a.0.kronecker(&b.0))
}

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.contains(&0) {
        return domain(format!("invalid subsystem dimensions {dims:?}"));
    }
    Ok(dims.iter().product())
}

/// Normalized state vector over a tensor-product space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amplitudes: DVector<Complex64>,
}

impl PureState {
    pub fn new(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let total = check_dims(&dims)?;
        if amplitudes.len() != total {
            return domain(format!(
                "{} amplitudes for a space of dimension {total}",
                amplitudes.len()
            ));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return domain("state has non-finite amplitudes");
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > STATE_TOL {
            return domain(format!("state is not normalized: |psi|^2 = {norm_sqr}"));
        }
        Ok(Self {
            dims,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    /// Rescales `amplitudes` to unit norm before validating.
    pub fn normalized(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return domain("cannot normalize a zero or non-finite vector");
        }
        Self::new(dims, amplitudes.into_iter().map(|z| z / norm).collect())
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let total = check_dims(&dims)?;
        if index >= total {
            return domain(format!(
                "basis index {index} out of range for dimension {total}"
            ));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); total];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(dims, amps)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    pub fn as_column(&self) -> ComplexMatrix {
        ComplexMatrix::column(self.amplitudes.as_slice())
    }

    /// `|ψ⟩⟨ψ|`
    pub fn projector(&self) -> DensityMatrix {
        let col = &self.amplitudes;
        DensityMatrix {
            dims: self.dims.clone(),
            matrix: ComplexMatrix(col * col.adjoint()),
        }
    }
}

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        let rho = Self::unchecked(dims, matrix)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Checks only the shape. For operators that are density matrices by
    /// construction (channel outputs, reductions of valid states).
    pub(crate) fn unchecked(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        let total = check_dims(&dims)?;
        if matrix.rows() != total || matrix.cols() != total {
            return domain(format!(
                "matrix is {}x{} but subsystems {dims:?} need side {total}",
                matrix.rows(),
                matrix.cols()
            ));
        }
        Ok(Self { dims, matrix })
    }

    /// `I / d`
    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let total = check_dims(&dims)?;
        Self::unchecked(
            dims,
            ComplexMatrix::identity(total).scale(1.0 / total as f64),
        )
    }

    /// Re-runs the density-matrix checks.
    pub fn validate(&self) -> Result<()> {
        let herm = self.matrix.hermiticity_defect();
        if herm > STATE_TOL {
            return domain(format!("not Hermitian: max |rho - rho^dag| = {herm:e}"));
        }
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return domain(format!("trace is {tr}, expected 1"));
        }
        let min = self.min_eigenvalue()?;
        if min < -PSD_TOL {
            return domain(format!("not positive semidefinite: eigenvalue {min:e}"));
        }
        Ok(())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix.get(row, col)
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let eig = eig_hermitian(&self.matrix)?;
        Ok(*eig.values.last().expect("nonempty spectrum"))
    }

    /// `p·self + (1 − p)·other`, for `p` in `[0, 1]`.
    pub fn mix(&self, other: &Self, p: f64) -> Result<Self> {
        if self.dims != other.dims {
            return domain("cannot mix density matrices over different spaces");
        }
        if !(0.0..=1.0).contains(&p) {
            return domain(format!("mixing weight {p} outside [0, 1]"));
        }
        let m = &self.matrix.scale(p) + &other.matrix.scale(1.0 - p);
        Self::unchecked(self.dims.clone(), m)
    }

    /// `U ρ U†` for a unitary `U` on the full space.
    pub fn conjugate_by(&self, unitary: &ComplexMatrix) -> Result<Self> {
        if unitary.rows() != self.dim() || unitary.cols() != self.dim() {
            return domain("unitary does not match the state dimension");
        }
        let m = &(unitary * &self.matrix) * &unitary.adjoint();
        Self::unchecked(self.dims.clone(), m)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

/// Tensor product of density matrices, first factor most significant.
pub fn kron_states(parts: &[&DensityMatrix]) -> Result<DensityMatrix> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::Domain("empty tensor product".into()))?;
    let mut dims = first.dims.clone();
    let mut m = first.matrix.clone();
    for p in rest {
        dims.extend_from_slice(&p.dims);
        m = kron(&m, &p.matrix);
    }
    DensityMatrix::unchecked(dims, m)
}

/// Reduced state on the subsystems in `keep` (0-based positions into
/// `rho.dims()`); kept subsystems stay in their original relative order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.dims.len();
    if keep.is_empty() {
        return domain("partial trace must keep at least one subsystem");
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() {
        return domain(format!("repeated subsystem in {keep:?}"));
    }
    if let Some(&bad) = kept.iter().find(|&&k| k >= n) {
        return domain(format!("subsystem {bad} out of range for {n} subsystems"));
    }
    let traced: Vec<usize> = (0..n).filter(|i| !kept.contains(i)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&i| rho.dims[i]).collect();
    let kept_off = subsystem_offsets(&rho.dims, &kept);
    let traced_off = subsystem_offsets(&rho.dims, &traced);

    let src = rho.matrix.as_inner();
    let out = DMatrix::from_fn(kept_off.len(), kept_off.len(), |a, b| {
        traced_off
            .iter()
            .map(|&t| src[(kept_off[a] + t, kept_off[b] + t)])
            .sum::<Complex64>()
    });
    DensityMatrix::unchecked(kept_dims, ComplexMatrix(out))
}

/// For each joint basis state of `subsystems` (in order, big-endian), its
/// offset into the full index over `dims`.
fn subsystem_offsets(dims: &[usize], subsystems: &[usize]) -> Vec<usize> {
    let n = dims.len();
    let mut strides = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let count: usize = subsystems.iter().map(|&s| dims[s]).product();
    (0..count)
        .map(|mut idx| {
            let mut full = 0;
            for &s in subsystems.iter().rev() {
                full += (idx % dims[s]) * strides[s];
                idx /= dims[s];
            }
            full
        })
        .collect()
}

/// Kraus operators of `ρ ↦ Tr_rest(V ρ V†)` for an isometry `V` whose output
/// space has subsystems `out_dims`, keeping the subsystems in `keep`.
///
/// Operator `t` is the block of rows of `V` where the discarded subsystems
/// are in basis state `t`.
pub fn kraus_from_isometry(
    v: &ComplexMatrix,
    out_dims: &[usize],
    keep: &[usize],
) -> Result<Vec<ComplexMatrix>> {
    let total = check_dims(out_dims)?;
    if v.rows() != total {
        return domain(format!(
            "isometry has {} rows, subsystems need {total}",
            v.rows()
        ));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() || kept.len() != keep.len() || kept.iter().any(|&k| k >= out_dims.len()) {
        return domain(format!("invalid subsystem selection {keep:?}"));
    }
    let traced: Vec<usize> = (0..out_dims.len()).filter(|i| !kept.contains(i)).collect();
    let kept_off = subsystem_offsets(out_dims, &kept);
    let traced_off = subsystem_offsets(out_dims, &traced);
    Ok(traced_off
        .iter()
        .map(|&t| {
            ComplexMatrix::from_fn(kept_off.len(), v.cols(), |a, i| v.get(kept_off[a] + t, i))
        })
        .collect())
}

/// `Σₜ Kₜ ρ Kₜ†`
pub fn apply_kraus(kraus: &[ComplexMatrix], rho: &ComplexMatrix) -> ComplexMatrix {
    let n = kraus.first().map_or(0, |k| k.rows());
    let mut acc = DMatrix::zeros(n, n);
    for k in kraus {
        let kr = &k.0 * &rho.0;
        acc.gemm(
            Complex64::new(1.0, 0.0),
            &kr,
            &k.0.adjoint(),
            Complex64::new(1.0, 0.0),
        );
    }
    ComplexMatrix(acc)
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, aligned with `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `Σⱼ λⱼ vⱼ vⱼ†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = self.vectors.as_inner();
        let lambda = DMatrix::from_diagonal(&DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&x| Complex64::new(x, 0.0)),
        ));
        ComplexMatrix(v * lambda * v.adjoint())
    }

    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        self.vectors.as_inner().column(j).iter().copied().collect()
    }
}

/// Eigendecomposition of a Hermitian matrix of side at most [`MAX_DIM`].
///
/// Within a degenerate eigenspace the returned basis is arbitrary.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return domain(format!(
            "eigenproblem needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        ));
    }
    if h.rows() == 0 || h.rows() > MAX_DIM {
        return domain(format!("matrix side {} outside 1..={MAX_DIM}", h.rows()));
    }
    let defect = h.hermiticity_defect();
    if defect > STATE_TOL {
        return domain(format!("matrix is not Hermitian (defect {defect:e})"));
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    let sym = (h.as_inner() + h.as_inner().adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);

    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Internal(
            "eigensolver produced non-finite values".into(),
        ));
    }
    let n = h.rows();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermitianEigen {
        values,
        vectors: ComplexMatrix(vectors),
    })
}

/// `⟨ψ|ρ|ψ⟩`
pub fn fidelity_pure(psi: &PureState, rho: &DensityMatrix) -> Result<f64> {
    if psi.dim() != rho.dim() || psi.dims() != rho.dims() {
        return domain(format!(
            "state over {:?} and density matrix over {:?} are incompatible",
            psi.dims(),
            rho.dims()
        ));
    }
    let v = &psi.amplitudes;
    let f = (v.adjoint() * rho.matrix.as_inner() * v)[(0, 0)].re;
    Ok(if (-STATE_TOL..0.0).contains(&f) {
        0.0
    } else if f > 1.0 && f <= 1.0 + STATE_TOL {
        1.0
    } else {
        f
    })
}
