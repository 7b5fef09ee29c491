//! A truncated Taylor polynomial approximates sin(2t) closely near 0 yet
//! has no frequencies at all.

use algspec::opcalc::taylor_truncate;
use algspec::pipeline::spectrum;
use algspec::sigexpr::{eval, parse};

fn main() -> algspec::Result<()> {
    let e = parse("sin(2*t)")?;
    println!("signal spectrum {}", spectrum(&e)?);
    for order in [1, 3, 5, 9] {
        let x = taylor_truncate(&e, 0.0, order)?;
        let sup = (0..=1000)
            .map(|k| 0.1 * k as f64 / 1000.0)
            .map(|t| (x.eval(t) - eval(&e, t).unwrap()).norm())
            .fold(0.0, f64::max);
        println!("order {order}: {x}");
        println!("  sup error on [0, 0.1] {sup:.2e}, spectrum {}", x.spectrum());
    }
    Ok(())
}
