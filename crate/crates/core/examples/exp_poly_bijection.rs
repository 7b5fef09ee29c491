//! Exponential polynomials and their images in C(s), both directions,
//! and the correspondence between multiplication by -t and d/ds.

use algspec::opcalc::{from_signal, mult_by_minus_t, to_exppoly, to_rational};
use algspec::sigexpr::parse;

fn main() -> algspec::Result<()> {
    for src in ["sin(3*t)", "t*exp(2*t)", "1", "sin(t)^2", "(t^2 - 1)*cos(2*t + 0.25)"] {
        let x = from_signal(&parse(src)?)?;
        let r = to_rational(&x);
        let back = to_exppoly(&r)?;
        println!("{src}");
        println!("  exp. polynomial  {x}");
        println!("  image            {r}");
        println!("  back             distance {:.1e}", back.distance(&x));
        println!("  spectrum         {}", x.spectrum());
        let lhs = to_rational(&mult_by_minus_t(&x));
        println!("  image of -t*x equals d/ds of image: {}\n", lhs == r.alg_deriv());
    }
    Ok(())
}
