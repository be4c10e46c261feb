//! Reproduction checks: every reference value and structural property the
//! simulator must satisfy, each reported with its measured residual.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cloners::{
    apply_local_cloning, apply_nonlocal_cloning, channel, closed_form_local_measures,
    closed_form_local_output, closed_form_nonlocal_measures, closed_form_nonlocal_output,
    e2_gain_nonlocal, fidelity_local, fidelity_nonlocal, find_e2_crossings, Scheme,
};
use crate::entanglement::{
    closed_form_input_measures, input_state, EntanglementReport, PauliBasis,
};
use crate::error::Result;
use crate::iteration::{clone_mixed, iterate};
use crate::linalg::{eig_hermitian, fidelity_pure, DensityMatrix};
use crate::random;
use crate::report::{sweep_csv, DEFAULT_POINTS, DEFAULT_SEED};

/// Algebraic identities on small matrices.
pub const TOL_STATE: f64 = 1e-12;
/// Eigenvalue positivity and local-unitary invariance.
pub const TOL_SPECTRAL: f64 = 1e-10;
/// Reference four-decimal table values.
pub const TOL_TABLE: f64 = 5e-5;
/// Reference five-decimal crossing points.
pub const TOL_CROSSING: f64 = 1e-4;
/// Reference retention percentages (percentage points).
pub const TOL_PERCENT: f64 = 0.05;

/// Number of `α` values on `[0, π/2]` used by the grid checks.
pub const GRID_POINTS: usize = 201;

/// Reference entanglement of iterated GHZ clones, steps 0 through 6.
pub const TABLE_E3: [f64; 7] = [1.0000, 0.3086, 0.0953, 0.0294, 0.0091, 0.0028, 0.0000];
pub const TABLE_E2: [f64; 7] = [0.3333, 0.1029, 0.0318, 0.0098, 0.0030, 0.0009, 0.0000];

/// Reference bounds of the window where non-local cloning lowers `E2`.
pub const REFERENCE_CROSSINGS: (f64, f64) = (0.33065, 0.95287);

/// One measured quantity against its bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub label: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Measurement {
    fn new(label: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            residual,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub measurements: Vec<Measurement>,
    /// Informational lines that never affect the verdict.
    pub notes: Vec<String>,
}

impl Check {
    fn new(id: u8, name: &'static str) -> Self {
        Self {
            id,
            name,
            measurements: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn measure(&mut self, label: impl Into<String>, residual: f64, tolerance: f64) {
        self.measurements
            .push(Measurement::new(label, residual, tolerance));
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.measurements.iter().all(Measurement::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Measurement> {
        self.measurements.iter().filter(|m| !m.passed())
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "[{status}] criterion {:>2}: {}", self.id, self.name)?;
        for m in &self.measurements {
            let mark = if m.passed() { "ok  " } else { "FAIL" };
            writeln!(
                f,
                "       {mark} {:<52} residual {:.3e} (tol {:.0e})",
                m.label, m.residual, m.tolerance
            )?;
        }
        for n in &self.notes {
            writeln!(f, "       info {n}")?;
        }
        Ok(())
    }
}

/// Runs the checks with a fixed operator convention and random seed.
#[derive(Debug, Clone)]
pub struct Verifier {
    basis: PauliBasis,
    seed: u64,
    sweep_points: usize,
}

impl Default for Verifier {
    fn default() -> Self {
        Self::new(DEFAULT_SEED)
    }
}

fn alpha_grid() -> Vec<f64> {
    let step = std::f64::consts::FRAC_PI_2 / (GRID_POINTS - 1) as f64;
    (0..GRID_POINTS).map(|i| i as f64 * step).collect()
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn pairwise_spread(r: &EntanglementReport) -> f64 {
    let (lo, hi) =
        r.e2.iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
    hi - lo
}

fn max_pair_error(r: &EntanglementReport, want: f64) -> f64 {
    max_of(r.e2.iter().map(|e| (e - want).abs()))
}

/// Per-`α` simulation results shared by several criteria.
struct GridSample {
    alpha: f64,
    input: DensityMatrix,
    local: DensityMatrix,
    nonlocal: DensityMatrix,
}

impl Verifier {
    pub fn new(seed: u64) -> Self {
        Self {
            basis: PauliBasis::standard(),
            seed,
            sweep_points: DEFAULT_POINTS,
        }
    }

    /// Uses `basis` for every expectation value.
    pub fn with_basis(mut self, basis: PauliBasis) -> Self {
        self.basis = basis;
        self
    }

    /// Grid size of the sweep determinism check.
    pub fn with_sweep_points(mut self, points: usize) -> Self {
        self.sweep_points = points;
        self
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn grid(&self) -> Result<Vec<GridSample>> {
        alpha_grid()
            .into_iter()
            .map(|alpha| {
                let input = input_state(alpha).projector();
                let local = apply_local_cloning(&input)?.into_state();
                let nonlocal = apply_nonlocal_cloning(&input)?.into_state();
                Ok(GridSample {
                    alpha,
                    input,
                    local,
                    nonlocal,
                })
            })
            .collect()
    }

    /// Runs every criterion in order.
    pub fn run(&self) -> Result<Vec<Check>> {
        let grid = self.grid()?;
        Ok(vec![
            self.input_state_measures(&grid)?,
            self.local_cloning(&grid)?,
            self.nonlocal_cloning(&grid)?,
            self.measure_curves(&grid)?,
            self.fidelities(&grid)?,
            self.amplification_window()?,
            self.iterated_decay()?,
            self.channel_properties()?,
            self.measure_properties()?,
            self.determinism()?,
        ])
    }

    fn input_state_measures(&self, grid: &[GridSample]) -> Result<Check> {
        let mut c = Check::new(1, "input state: trace-based measures match closed forms");
        let (mut e3_err, mut e2_err, mut lambda_err, mut sym) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for g in grid {
            let r = self.basis.measures(&g.input)?;
            let (e3, e2) = closed_form_input_measures(g.alpha);
            e3_err = e3_err.max((r.e3 - e3).abs());
            e2_err = e2_err.max(max_pair_error(&r, e2));
            sym = sym.max(pairwise_spread(&r));
            let want = [0.0, 0.0, -(2.0 * g.alpha).cos()];
            for l in &r.lambdas {
                for (got, want) in l.lambda.iter().zip(want) {
                    lambda_err = lambda_err.max((got - want).abs());
                }
            }
        }
        c.measure(
            "coherence vectors = (0, 0, -cos 2a) on grid",
            lambda_err,
            TOL_STATE,
        );
        c.measure(
            "E3 vs sin^2 2a (1 + sin^2 2a cos^2 2a) on grid",
            e3_err,
            TOL_STATE,
        );
        c.measure("E2 vs sin^4 2a / 3 on grid", e2_err, TOL_STATE);
        c.measure("E2 pair symmetry on grid", sym, TOL_STATE);
        let ghz = self
            .basis
            .measures(&input_state(std::f64::consts::FRAC_PI_4).projector())?;
        c.measure("GHZ E3 = 1", (ghz.e3 - 1.0).abs(), TOL_STATE);
        c.measure("GHZ E2 = 1/3", max_pair_error(&ghz, 1.0 / 3.0), TOL_STATE);
        Ok(c)
    }

    fn local_cloning(&self, grid: &[GridSample]) -> Result<Check> {
        let mut c = Check::new(2, "local cloning output and GHZ measures");
        let entry = max_of(
            grid.iter()
                .map(|g| g.local.max_abs_diff(&closed_form_local_output(g.alpha))),
        );
        c.measure(
            "simulated output vs closed-form matrix on grid",
            entry,
            TOL_STATE,
        );
        let ghz = input_state(std::f64::consts::FRAC_PI_4).projector();
        let r = self.basis.measures(apply_local_cloning(&ghz)?.state())?;
        c.measure("GHZ E3 = 64/729", (r.e3 - 64.0 / 729.0).abs(), TOL_STATE);
        c.measure(
            "GHZ E2 = 16/243",
            max_pair_error(&r, 16.0 / 243.0),
            TOL_STATE,
        );
        let e3_pct = 100.0 * r.e3;
        let e2_pct = 100.0 * r.e2_mean() / (1.0 / 3.0);
        c.measure(
            "E3 retention vs reference 8.76 %",
            (e3_pct - 8.76).abs(),
            TOL_PERCENT,
        );
        c.measure(
            "E2 retention vs reference 19.8 %",
            (e2_pct - 19.8).abs(),
            TOL_PERCENT,
        );
        c.note(format!(
            "E3 retention computed as {e3_pct:.4} % (64/729); reference 8.76 %"
        ));
        let alpha = 0.3;
        let k = self
            .basis
            .correlation3(apply_local_cloning(&input_state(alpha).projector())?.state())?
            .component(3, 3, 3);
        let reference = 8.0 / 27.0 * (2.0 * alpha).cos();
        c.note(format!(
            "K333 of the local output at a = {alpha}: computed {k:+.6}, reference +(8/27)cos2a = {reference:+.6}; \
             the computed sign -(8/27)cos2a is the one consistent with the other tensor components"
        ));
        Ok(c)
    }

    fn nonlocal_cloning(&self, grid: &[GridSample]) -> Result<Check> {
        let mut c = Check::new(3, "non-local cloning output, GHZ measures and spectrum");
        let entry = max_of(grid.iter().map(|g| {
            g.nonlocal
                .max_abs_diff(&closed_form_nonlocal_output(g.alpha))
        }));
        c.measure(
            "simulated output vs closed-form matrix on grid",
            entry,
            TOL_STATE,
        );
        let ghz = input_state(std::f64::consts::FRAC_PI_4).projector();
        let out = apply_nonlocal_cloning(&ghz)?.into_state();
        let r = self.basis.measures(&out)?;
        c.measure("GHZ E3 = 25/81", (r.e3 - 25.0 / 81.0).abs(), TOL_STATE);
        c.measure(
            "GHZ E2 = 25/243",
            max_pair_error(&r, 25.0 / 243.0),
            TOL_STATE,
        );
        let eig = eig_hermitian(out.matrix())?;
        let mut spec_err = (eig.values[0] - 11.0 / 18.0).abs();
        for v in &eig.values[1..] {
            spec_err = spec_err.max((v - 1.0 / 18.0).abs());
        }
        c.measure(
            "GHZ output eigenvalues {11/18, 1/18 x7}",
            spec_err,
            TOL_STATE,
        );
        Ok(c)
    }

    fn measure_curves(&self, grid: &[GridSample]) -> Result<Check> {
        let mut c = Check::new(4, "measure curves of both cloners match closed forms");
        let mut err = [0.0f64; 4];
        let mut order = 0.0f64;
        let (mut local_gain, mut nonlocal_gain, mut nonlocal_gain_at) = (0.0f64, 0.0f64, 0.0f64);
        for g in grid {
            let input = self.basis.measures(&g.input)?;
            let local = self.basis.measures(&g.local)?;
            let nonlocal = self.basis.measures(&g.nonlocal)?;
            let (l3, l2) = closed_form_local_measures(g.alpha);
            let (n3, n2) = closed_form_nonlocal_measures(g.alpha);
            err[0] = err[0].max((local.e3 - l3).abs());
            err[1] = err[1].max(max_pair_error(&local, l2));
            err[2] = err[2].max((nonlocal.e3 - n3).abs());
            err[3] = err[3].max(max_pair_error(&nonlocal, n2));
            order = order
                .max(local.e3 - nonlocal.e3)
                .max(local.e2_mean() - nonlocal.e2_mean());
            local_gain = local_gain.max(local.e3 - input.e3);
            if nonlocal.e3 - input.e3 > nonlocal_gain {
                nonlocal_gain = nonlocal.e3 - input.e3;
                nonlocal_gain_at = g.alpha.cos();
            }
        }
        c.measure("local E3 vs closed form on grid", err[0], TOL_STATE);
        c.measure("local E2 vs closed form on grid", err[1], TOL_STATE);
        c.measure("non-local E3 vs closed form on grid", err[2], TOL_STATE);
        c.measure("non-local E2 vs closed form on grid", err[3], TOL_STATE);
        c.measure(
            "non-local >= local for E3 and E2 (max violation)",
            order.max(0.0),
            TOL_STATE,
        );
        c.note(format!(
            "largest E3 gain over the input: local {local_gain:.3e}, non-local {nonlocal_gain:.3e} \
             at cos a = {nonlocal_gain_at:.4} (the non-local clone of a product input keeps E3 = (25/729)(2/27)^2)"
        ));
        Ok(c)
    }

    fn fidelities(&self, grid: &[GridSample]) -> Result<Check> {
        let mut c = Check::new(5, "fidelities of both cloners");
        let (mut f1_err, mut f2_err, mut gap) = (0.0f64, 0.0f64, f64::INFINITY);
        for g in grid {
            let psi = input_state(g.alpha);
            let f1 = fidelity_pure(&psi, &g.local)?;
            let f2 = fidelity_pure(&psi, &g.nonlocal)?;
            f1_err = f1_err.max((f1 - fidelity_local(g.alpha)).abs());
            f2_err = f2_err.max((f2 - fidelity_nonlocal()).abs());
            gap = gap.min(f2 - f1);
        }
        c.measure(
            "F1 vs 125/216 - (15/27) sin^2 a cos^2 a on grid",
            f1_err,
            TOL_STATE,
        );
        c.measure("F2 = 11/18 on grid", f2_err, TOL_STATE);
        c.measure(
            "F2 > F1 on grid (violation count)",
            if gap > 0.0 { 0.0 } else { 1.0 },
            0.0,
        );
        c.note(format!("smallest F2 - F1 on grid: {gap:.6}"));
        Ok(c)
    }

    fn amplification_window(&self) -> Result<Check> {
        let mut c = Check::new(6, "E2 amplification window of non-local cloning");
        let (lo, hi) = find_e2_crossings()?;
        c.measure(
            format!("lower crossing cos a = {lo:.6} vs 0.33065"),
            (lo - REFERENCE_CROSSINGS.0).abs(),
            TOL_CROSSING,
        );
        c.measure(
            format!("upper crossing cos a = {hi:.6} vs 0.95287"),
            (hi - REFERENCE_CROSSINGS.1).abs(),
            TOL_CROSSING,
        );
        // Amplified outside the window, reduced inside it.
        let probes = [
            (0.5 * lo, true),
            (0.5 * (lo + hi), false),
            (0.5 * (hi + 1.0), true),
        ];
        let mut wrong = 0.0;
        for (x, amplified) in probes {
            if (e2_gain_nonlocal(x)? > 0.0) != amplified {
                wrong += 1.0;
            }
        }
        c.measure(
            "sign pattern around crossings (violation count)",
            wrong,
            0.0,
        );
        Ok(c)
    }

    fn iterated_decay(&self) -> Result<Check> {
        let mut c = Check::new(
            7,
            "iterated non-local cloning of GHZ reproduces the decay table",
        );
        let trace = iterate(std::f64::consts::FRAC_PI_4, 6)?;
        let (e3, e2) = (trace.e3(), trace.e2());
        let e3_err = max_of((0..=5).map(|k| (e3[k] - TABLE_E3[k]).abs()));
        let e2_err = max_of((0..=5).map(|k| (e2[k] - TABLE_E2[k]).abs()));
        c.measure("E3 steps 0-5 vs table", e3_err, TOL_TABLE);
        c.measure("E2 steps 0-5 vs table", e2_err, TOL_TABLE);
        let exact = (25.0f64 / 81.0).powi(2);
        c.measure("step-2 E3 = (25/81)^2", (e3[2] - exact).abs(), TOL_STATE);
        c.measure(
            "step-2 E2 = (25/81)^2 / 3",
            (e2[2] - exact / 3.0).abs(),
            TOL_STATE,
        );
        let increase = max_of(e3.windows(2).chain(e2.windows(2)).map(|w| w[1] - w[0]));
        c.measure(
            "monotone decay (largest step increase)",
            increase.max(0.0),
            0.0,
        );
        c.measure("step-6 E3 below 1e-3", (e3[6] - 1e-3).max(0.0), 0.0);
        c.measure("step-6 E2 below 1e-3", (e2[6] - 1e-3).max(0.0), 0.0);
        c.note(format!(
            "step 6 computed E3 = {:.4e}, E2 = {:.4e}; reference table lists 0.0000 for both",
            e3[6], e2[6]
        ));
        let corner = trace.steps[2].rho.get(0, 0).re;
        c.note(format!(
            "step-2 |000><000| coefficient computed {corner:.12} = 13/54 ({:.12}); reference value 54/13",
            13.0 / 54.0
        ));
        Ok(c)
    }

    fn channel_properties(&self) -> Result<Check> {
        let mut c = Check::new(8, "cloning channels on random states");
        let mut rng = self.rng(8);
        let states: Vec<DensityMatrix> = (0..100)
            .map(|_| random::three_qubit_state(&mut rng))
            .collect();
        for scheme in [Scheme::Local, Scheme::NonLocal] {
            let ch = channel(scheme);
            let outs = states
                .iter()
                .map(|s| ch.apply(s).map(|o| o.into_state()))
                .collect::<Result<Vec<_>>>()?;
            let (mut tr, mut herm, mut psd, mut lin) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
            let mut joint_gap = 0.0f64;
            for (s, out) in states.iter().take(5).zip(&outs) {
                let joint = ch.apply_via_joint(s)?.into_state();
                joint_gap = joint_gap.max(joint.max_abs_diff(out));
            }
            for (i, out) in outs.iter().enumerate() {
                tr = tr.max((out.trace() - 1.0).abs());
                herm = herm.max(out.matrix().hermiticity_defect());
                psd = psd.max(-out.min_eigenvalue()?);
                let j = (i + 1) % states.len();
                let p: f64 = rng.random();
                let mixed_in = states[i].mix(&states[j], p)?;
                let direct = ch.apply(&mixed_in)?.into_state();
                let combined = out.mix(&outs[j], p)?;
                lin = lin.max(direct.max_abs_diff(&combined));
            }
            let name = match scheme {
                Scheme::Local => "local",
                Scheme::NonLocal => "non-local",
            };
            c.measure(format!("{name}: trace preserved"), tr, TOL_STATE);
            c.measure(format!("{name}: Hermitian output"), herm, TOL_STATE);
            c.measure(
                format!("{name}: most negative eigenvalue"),
                psd.max(0.0),
                TOL_SPECTRAL,
            );
            c.measure(format!("{name}: linearity"), lin, TOL_STATE);
            c.measure(
                format!("{name}: Kraus vs joint-state route"),
                joint_gap,
                TOL_STATE,
            );
        }
        // clone_mixed fails internally if the two routes differ by more than
        // the tolerance; measure the gap explicitly as well.
        let mut gap = 0.0f64;
        for s in &states {
            let spectral = clone_mixed(Scheme::NonLocal, s)?;
            let direct = apply_nonlocal_cloning(s)?.into_state();
            gap = gap.max(spectral.max_abs_diff(&direct));
        }
        c.measure(
            "eigenvector-route vs direct non-local cloning",
            gap,
            TOL_STATE,
        );
        Ok(c)
    }

    fn measure_properties(&self) -> Result<Check> {
        let mut c = Check::new(9, "entanglement measures on random states");
        let mut rng = self.rng(9);
        let mut invariance = 0.0f64;
        for k in 0..50 {
            let rho = if k % 5 == 0 {
                input_state(rng.random_range(0.0..std::f64::consts::FRAC_PI_2)).projector()
            } else {
                random::three_qubit_state(&mut rng)
            };
            let u = random::local_unitary(&mut rng);
            let before = self.basis.measures(&rho)?;
            let after = self.basis.measures(&rho.conjugate_by(&u)?)?;
            invariance = invariance.max((before.e3 - after.e3).abs());
            for (a, b) in before.e2.iter().zip(after.e2) {
                invariance = invariance.max((a - b).abs());
            }
        }
        c.measure(
            "local-unitary invariance (50 unitaries)",
            invariance,
            TOL_SPECTRAL,
        );
        let mut product = 0.0f64;
        for _ in 0..50 {
            let r = self.basis.measures(&random::product_state(&mut rng))?;
            product = product
                .max(r.e3.abs())
                .max(max_of(r.e2.iter().map(|e| e.abs())));
        }
        c.measure("zero on product states", product, TOL_STATE);
        let mut excess = 0.0f64;
        for _ in 0..1000 {
            let r = self.basis.measures(&random::three_qubit_state(&mut rng))?;
            for v in std::iter::once(r.e3).chain(r.e2) {
                excess = excess.max(-v).max(v - 1.0);
            }
        }
        c.measure(
            "E3, E2 within [0, 1] on 1000 random states (excess)",
            excess.max(0.0),
            TOL_SPECTRAL,
        );
        Ok(c)
    }

    fn determinism(&self) -> Result<Check> {
        let mut c = Check::new(10, "sweep output is deterministic");
        let first = sweep_csv(self.sweep_points)?;
        let second = sweep_csv(self.sweep_points)?;
        c.measure(
            format!(
                "byte-identical sweeps ({} points, {} bytes)",
                self.sweep_points,
                first.len()
            ),
            if first == second { 0.0 } else { 1.0 },
            0.0,
        );
        Ok(c)
    }
}

/// All checks with the default convention and the given seed.
pub fn run_verify(seed: u64) -> Result<Vec<Check>> {
    Verifier::new(seed).run()
}
