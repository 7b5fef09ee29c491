//! Poles, partial fractions and spectra of elements of C(s).

use algspec::ratfield::{partial_fractions, poles, spectrum_of_rational, terms_c64, CPoly, RatFunc};

fn main() -> algspec::Result<()> {
    let cases = [
        // damped oscillation 1/((s-1)^2 + 16)
        (CPoly::from_ints(&[1]), CPoly::from_ints(&[17, -2, 1])),
        // Laurent polynomial s^-3 + 2s
        (CPoly::from_ints(&[1, 0, 0, 0, 2]), CPoly::from_ints(&[0, 0, 0, 1])),
        // (s+1)/((s-2)^2 (s^2+9))
        (CPoly::from_ints(&[1, 1]), &CPoly::from_ints(&[-2, 1]).pow(2) * &CPoly::from_ints(&[9, 0, 1])),
        // irrational poles: 1/(s^3 + s + 1)
        (CPoly::from_ints(&[1]), CPoly::from_ints(&[1, 1, 0, 1])),
    ];
    for (num, den) in cases {
        let r = RatFunc::new(num, den)?;
        println!("r = {r}");
        for p in poles(&r)? {
            let z = p.to_c64();
            println!(
                "  pole {:+.6}{:+.6}i  order {}  {}",
                z.re,
                z.im,
                p.multiplicity,
                if p.exact { "exact" } else { "float" }
            );
        }
        let pf = partial_fractions(&r)?;
        if !pf.polynomial_part.is_zero() {
            println!("  polynomial part {}", pf.polynomial_part);
        }
        for (p, k, c) in terms_c64(&pf) {
            println!("  ({:.6}) / (s - ({:.6}))^{k}", c, p);
        }
        println!("  spectrum {}\n", spectrum_of_rational(&r)?);
    }
    Ok(())
}
