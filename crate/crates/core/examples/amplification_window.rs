//! Where non-local cloning increases pairwise entanglement E2.

use ghz_cloning::cloners::{e2_gain_nonlocal, find_e2_crossings};

fn main() -> ghz_cloning::Result<()> {
    let (lo, hi) = find_e2_crossings()?;
    println!("E2 gain changes sign at cos a = {lo:.6} and {hi:.6}");
    println!("lo^2 + hi^2 = {:.6}", lo * lo + hi * hi);
    for c in [
        0.0,
        lo / 2.0,
        0.5,
        std::f64::consts::FRAC_1_SQRT_2,
        0.9,
        (hi + 1.0) / 2.0,
        1.0,
    ] {
        let gain = e2_gain_nonlocal(c)?;
        let tag = if gain > 0.0 { "amplified" } else { "reduced" };
        println!("cos a = {c:.4}: gain {gain:+.5} ({tag})");
    }
    Ok(())
}
