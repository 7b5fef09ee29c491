//! Defining equations of the catalog signals and the classification of
//! their singular points, including the point at infinity.

use algspec::pipeline::analyze;
use algspec::sigexpr::parse;

fn main() -> algspec::Result<()> {
    for src in ["sinc(3)", "rcos(2)", "delay(0.5)", "delay(-1)", "chirp(1, 0, 0)", "chirp(1, 2, 3)"] {
        print!("{}", analyze(&parse(src)?)?.explain());
        println!();
    }
    Ok(())
}
