//! Curvature-based instantaneous frequency: exact derivatives, sliding
//! polynomial fits on samples, and the comparison with the constant
//! analytic-signal frequency of a pure tone.

use algspec::instfreq::{phi_fitted, phi_vs_ville_note, SampledSignal, SymbolicPhi};
use algspec::sigexpr::parse;

fn main() -> algspec::Result<()> {
    let e = parse("sin(2*t)")?;
    let exact = SymbolicPhi::new(&e)?;
    for rate in [100.0, 200.0, 400.0] {
        let sig = SampledSignal::from_expr(&e, rate, 0.0, 3.0)?;
        let fitted = phi_fitted(&sig, 11, 3)?;
        let err = fitted.max_abs_diff(&exact.trace(&fitted.times)?);
        println!("{rate:5} Hz, window 11, degree 3: max |fitted - exact| = {err:.3e}");
    }
    println!();
    print!("{}", phi_vs_ville_note(&parse("1.5*sin(2*t)")?)?);
    Ok(())
}
