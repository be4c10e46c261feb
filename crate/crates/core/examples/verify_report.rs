//! Runs every reproduction check and prints the residuals.

use ghz_cloning::report::DEFAULT_SEED;
use ghz_cloning::verify::Verifier;

fn main() -> ghz_cloning::Result<()> {
    let checks = Verifier::new(DEFAULT_SEED).run()?;
    for c in &checks {
        print!("{c}");
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    println!("{passed} of {} criteria passed", checks.len());
    Ok(())
}
