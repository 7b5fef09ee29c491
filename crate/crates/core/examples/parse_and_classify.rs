//! Parse expressions, print their canonical form and routing class.

use algspec::pipeline::class_name;
use algspec::sigexpr::{diff_time, parse};

fn main() {
    let inputs = [
        "3*t^2*exp(-t) + sinc(5)",
        "sin(2*t + 0.5) * (1 + t)",
        "-2.5*dirac()",
        "rcos(3)",
        "chirp(1, 2, 0)",
        "sinc(2)*sin(3*t)",
        "sinc(0)",
        "sin(2*t) + ",
    ];
    for src in inputs {
        match parse(src) {
            Ok(e) => {
                println!("{src:32} -> {e}  [{}]", class_name(e.classify()));
                if let Ok(d) = diff_time(&e) {
                    println!("{:32}    d/dt = {d}", "");
                }
            }
            Err(err) => println!("{src:32} -> error at byte {}: {err}", err.offset),
        }
    }
}
