//! Repeated cloning: each step clones the previous output.
//!
//! The cloners are defined on pure inputs, so a mixed state is first
//! diagonalized, `ρ = Σⱼ pⱼ |φⱼ⟩⟨φⱼ|`, each eigenvector is cloned, and the
//! outputs are mixed with the weights `pⱼ`. Linearity of the channel makes
//! this equal to applying the channel to `ρ` directly; both routes are
//! computed and compared on every step.

use crate::cloners::{channel, Scheme};
use crate::entanglement::{input_state, measures};
use crate::error::{domain, Error, Result};
use crate::linalg::{eig_hermitian, ComplexMatrix, DensityMatrix, PureState, STATE_TOL};

/// Eigenvalues at or below this weight are not cloned.
pub const EIGENVALUE_CUTOFF: f64 = 1e-12;

/// Upper bound on the number of iterated cloning steps.
pub const MAX_STEPS: usize = 12;

/// One spectral component that was cloned.
#[derive(Debug, Clone)]
pub struct Component {
    pub weight: f64,
    pub state: PureState,
}

/// Spectral components of `rho` above [`EIGENVALUE_CUTOFF`], heaviest first.
pub fn spectral_components(rho: &DensityMatrix) -> Result<Vec<Component>> {
    let eig = eig_hermitian(rho.matrix())?;
    eig.values
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > EIGENVALUE_CUTOFF)
        .map(|(j, &weight)| {
            let state = PureState::normalized(rho.dims().to_vec(), eig.vector(j))?;
            Ok(Component { weight, state })
        })
        .collect()
}

/// Clones `rho` eigenvector by eigenvector and mixes the results.
///
/// Fails with an internal error if the mixture disagrees with the channel
/// applied to `rho` directly by more than `1e-12`.
pub fn clone_mixed(scheme: Scheme, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let cloner = channel(scheme);
    let mut acc = ComplexMatrix::zeros(rho.dim(), rho.dim());
    for c in spectral_components(rho)? {
        let out = cloner.apply(&c.state.projector())?;
        acc = &acc + &out.state().matrix().scale(c.weight);
    }
    let mixed = DensityMatrix::new(rho.dims().to_vec(), acc)?;

    let direct = cloner.apply(rho)?.into_state();
    let gap = mixed.max_abs_diff(&direct);
    if gap > STATE_TOL {
        return Err(Error::Internal(format!(
            "spectral and direct cloning disagree by {gap:e}"
        )));
    }
    Ok(mixed)
}

/// Non-local cloning of a mixed state through its spectral decomposition.
pub fn clone_mixed_nonlocal(rho: &DensityMatrix) -> Result<DensityMatrix> {
    clone_mixed(Scheme::NonLocal, rho)
}

#[derive(Debug, Clone)]
pub struct IterationStep {
    pub step: usize,
    pub e3: f64,
    /// Mean of the three pairwise values.
    pub e2: f64,
    pub rho: DensityMatrix,
}

#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub alpha: f64,
    pub scheme: Scheme,
    pub steps: Vec<IterationStep>,
}

impl IterationTrace {
    pub fn e3(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.e3).collect()
    }

    pub fn e2(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.e2).collect()
    }
}

/// Iterated non-local cloning of `cos α |000⟩ + sin α |111⟩`; the trace
/// holds steps `0..=n_steps`, step 0 being the input.
pub fn iterate(alpha: f64, n_steps: usize) -> Result<IterationTrace> {
    iterate_with(Scheme::NonLocal, alpha, n_steps)
}

/// Like [`iterate`] for either scheme. The local variant is not checked
/// against reference values.
pub fn iterate_with(scheme: Scheme, alpha: f64, n_steps: usize) -> Result<IterationTrace> {
    if n_steps > MAX_STEPS {
        return domain(format!("at most {MAX_STEPS} cloning steps, got {n_steps}"));
    }
    if !alpha.is_finite() {
        return domain("alpha must be finite");
    }
    let mut rho = input_state(alpha).projector();
    let mut steps = Vec::with_capacity(n_steps + 1);
    for step in 0..=n_steps {
        if step > 0 {
            rho = clone_mixed(scheme, &rho)?;
        }
        let report = measures(&rho)?;
        steps.push(IterationStep {
            step,
            e3: report.e3,
            e2: report.e2_mean(),
            rho: rho.clone(),
        });
    }
    Ok(IterationTrace {
        alpha,
        scheme,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloners::apply_nonlocal_cloning;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn first_step_spectrum_and_top_vector() {
        let ghz = input_state(FRAC_PI_4);
        let rho = apply_nonlocal_cloning(&ghz.projector())
            .unwrap()
            .into_state();
        let comps = spectral_components(&rho).unwrap();
        assert_eq!(comps.len(), 8);
        assert!((comps[0].weight - 11.0 / 18.0).abs() < 1e-12);
        assert!(comps[1..]
            .iter()
            .all(|c| (c.weight - 1.0 / 18.0).abs() < 1e-12));
        // Top eigenvector is the GHZ state up to a global phase.
        let overlap: Complex64 = comps[0]
            .state
            .amplitudes()
            .iter()
            .zip(ghz.amplitudes())
            .map(|(a, b)| a.conj() * b)
            .sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn second_step_entries() {
        let trace = iterate(FRAC_PI_4, 2).unwrap();
        let rho = &trace.steps[2].rho;
        assert!((rho.get(0, 0).re - 13.0 / 54.0).abs() < 1e-12);
        assert!((rho.get(7, 7).re - 13.0 / 54.0).abs() < 1e-12);
        assert!((rho.get(7, 0).re - 25.0 / 162.0).abs() < 1e-12);
        for k in 1..7 {
            assert!((rho.get(k, k).re - 7.0 / 81.0).abs() < 1e-12);
        }
        assert!((trace.steps[2].e3 - (25.0f64 / 81.0).powi(2)).abs() < 1e-12);
        assert!((trace.steps[2].e2 - (25.0f64 / 81.0).powi(2) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn step_cap() {
        assert!(matches!(
            iterate(FRAC_PI_4, MAX_STEPS + 1),
            Err(Error::Domain(_))
        ));
        assert_eq!(iterate(0.3, 0).unwrap().steps.len(), 1);
    }

    #[test]
    fn local_mode_runs() {
        let trace = iterate_with(Scheme::Local, FRAC_PI_4, 2).unwrap();
        assert!((trace.steps[1].e3 - 64.0 / 729.0).abs() < 1e-12);
        assert!(trace.steps[2].e3 < trace.steps[1].e3);
    }
}
