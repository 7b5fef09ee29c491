//! Exact arithmetic in ℂ(s), poles, partial fractions and pole spectra.

mod modp;
mod partial;
mod poly;
mod ratfunc;
mod roots;
mod spectrum;

pub use partial::{assemble, partial_fractions, terms_c64, PartialFraction, PartialFractions};
pub use poly::CPoly;
pub use ratfunc::{reduce, RatFunc};
pub use roots::{aberth, multiplicity_at, roots, square_free_decomposition, square_free_part, Pole};
pub use spectrum::{spectrum_of_rational, SourceKind, Spectrum, SpectrumSource, FREQUENCY_TOL};

use crate::error::Result;

/// Poles of a reduced rational function, sorted by real then imaginary part.
pub fn poles(r: &RatFunc) -> Result<Vec<Pole>> {
    roots(r.den())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn pole_examples() {
        let r = RatFunc::new(CPoly::from_ints(&[3]), CPoly::from_ints(&[9, 0, 1])).unwrap();
        let ps = poles(&r).unwrap();
        assert_eq!(ps.iter().map(|p| p.to_c64().im).collect::<Vec<_>>(), vec![-3.0, 3.0]);

        // 1/((s-1)(s-1-5i)): expand the denominator, check residuals of the found roots
        let a = CPoly::linear(&crate::scalar::cint(1));
        let b = CPoly::linear(&Scalar::new(crate::scalar::int(1), crate::scalar::int(5)));
        let den = &a * &b;
        let ps = poles(&RatFunc::new(CPoly::one(), den.clone()).unwrap()).unwrap();
        assert_eq!(ps.len(), 2);
        for p in &ps {
            assert!(den.eval_c64(p.to_c64()).norm() <= 1e-10);
        }
    }
}
