//! Fidelity of each cloner's output with its input across α.

use ghz_cloning::cloners::{fidelity_local, fidelity_nonlocal, simulated_fidelity, Scheme};

fn main() -> ghz_cloning::Result<()> {
    println!("{:>6} {:>10} {:>10}", "cos a", "F local", "F nonlocal");
    for k in 0..=10 {
        let cos_alpha = k as f64 / 10.0;
        let alpha = cos_alpha.acos();
        let f1 = simulated_fidelity(Scheme::Local, alpha)?;
        let f2 = simulated_fidelity(Scheme::NonLocal, alpha)?;
        assert!((f1 - fidelity_local(alpha)).abs() < 1e-12);
        assert!((f2 - fidelity_nonlocal()).abs() < 1e-12);
        println!("{cos_alpha:>6.2} {f1:>10.6} {f2:>10.6}");
    }
    Ok(())
}
