//! Algebraic spectra next to their classical Fourier descriptions.

use algspec::fourier::contrast_report;
use algspec::sigexpr::parse;

fn main() -> algspec::Result<()> {
    for src in ["dirac()", "sinc(1)", "sin(3*t)"] {
        println!("{}", contrast_report(&parse(src)?)?);
    }
    Ok(())
}
