//! Treats the three qubits as one 8-level system and clones it with the
//! universal 8-level cloner.

use ghz_cloning::cloners::{apply_nonlocal_cloning, nonlocal_coefficients, nonlocal_isometry};
use ghz_cloning::entanglement::{input_state, measures};
use ghz_cloning::linalg::eig_hermitian;

fn main() -> ghz_cloning::Result<()> {
    let (c, d) = nonlocal_coefficients(8);
    println!("c^2 = {:.6}, d^2 = {:.6}", c * c, d * d);
    println!(
        "isometry defect: {:.2e}",
        nonlocal_isometry(8)?.isometry_defect()
    );

    let out = apply_nonlocal_cloning(&input_state(std::f64::consts::FRAC_PI_4).projector())?;
    let spectrum = eig_hermitian(out.state().matrix())?.values;
    println!("output spectrum: {spectrum:.6?}");

    let r = measures(out.state())?;
    println!("E3 = {:.6} (25/81 = {:.6})", r.e3, 25.0 / 81.0);
    println!("E2 = {:.6} (25/243 = {:.6})", r.e2_mean(), 25.0 / 243.0);

    // A product input still comes out with some correlations.
    let product = measures(apply_nonlocal_cloning(&input_state(0.0).projector())?.state())?;
    println!(
        "product input: E3 = {:.3e}, E2 = {:.4}",
        product.e3,
        product.e2_mean()
    );
    Ok(())
}
