//! Clones each qubit of a GHZ-type state with its own universal cloner and
//! compares original and copy.

use ghz_cloning::cloners::{apply_local_cloning, closed_form_local_output, local_isometry};
use ghz_cloning::entanglement::{input_state, measures};

fn main() -> ghz_cloning::Result<()> {
    let v = local_isometry();
    println!("single-qubit isometry defect: {:.2e}", v.isometry_defect());

    let alpha = std::f64::consts::FRAC_PI_4;
    let out = apply_local_cloning(&input_state(alpha).projector())?;
    println!("joint dimension: {}", out.joint_dim);
    println!(
        "original vs copy: {:.2e}, simulated vs closed form: {:.2e}",
        out.originals.max_abs_diff(&out.copies),
        out.state().max_abs_diff(&closed_form_local_output(alpha))
    );

    let r = measures(out.state())?;
    println!("E3 = {:.6} (64/729 = {:.6})", r.e3, 64.0 / 729.0);
    println!("E2 = {:.6} (16/243 = {:.6})", r.e2_mean(), 16.0 / 243.0);
    println!("E3 kept: {:.3} %", 100.0 * r.e3);
    Ok(())
}
