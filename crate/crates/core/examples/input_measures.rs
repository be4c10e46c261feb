//! Coherence vectors, correlation tensors and E3/E2 of
//! `cos α |000⟩ + sin α |111⟩` for a few angles.

use ghz_cloning::entanglement::{closed_form_input_measures, input_state, measures};

fn main() -> ghz_cloning::Result<()> {
    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10}",
        "alpha", "lambda3", "K333", "E3", "E2"
    );
    for alpha in [0.0, 0.2, 0.5, std::f64::consts::FRAC_PI_4, 1.2] {
        let r = measures(&input_state(alpha).projector())?;
        let (e3, e2) = closed_form_input_measures(alpha);
        assert!((r.e3 - e3).abs() < 1e-12 && (r.e2_mean() - e2).abs() < 1e-12);
        println!(
            "{alpha:>8.4} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            r.lambdas[0].component(3),
            r.k3.component(3, 3, 3),
            r.e3,
            r.e2_mean()
        );
    }
    Ok(())
}
