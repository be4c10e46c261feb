//! Clones the output again and again and prints the decay of E3 and E2.
//! Optional argument: alpha in radians.

use ghz_cloning::iteration::iterate;
use ghz_cloning::report::{iteration_table, DEFAULT_ALPHA, DEFAULT_STEPS};

fn main() -> ghz_cloning::Result<()> {
    let alpha = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("alpha in radians"))
        .unwrap_or(DEFAULT_ALPHA);
    let trace = iterate(alpha, DEFAULT_STEPS)?;
    print!("{}", iteration_table(&trace));
    let ratios: Vec<String> = trace
        .steps
        .windows(2)
        .map(|w| format!("{:.4}", w[1].e3 / w[0].e3))
        .collect();
    println!("E3 step ratios: {}", ratios.join(" "));
    Ok(())
}
