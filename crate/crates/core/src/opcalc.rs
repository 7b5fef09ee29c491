//! Operational calculus for exponential polynomials.
//!
//! For `t >= 0`, exponential polynomials `Σ Pᵢ(t)·e^{aᵢt}` correspond one to
//! one with strictly proper elements of ℂ(s): the term `c·t^k·e^{at}` maps to
//! `c·k!/(s-a)^{k+1}`. The Dirac impulse maps to `1`, and multiplication by
//! `-t` in time corresponds to the algebraic derivative `d/ds`.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratfield::{
    assemble, partial_fractions, CPoly, PartialFraction, RatFunc, SourceKind, Spectrum, SpectrumSource,
};
use crate::scalar::{factorial, fmt_scalar, from_c64, from_f64, imag_unit, re, to_c64, unit_phase, Real, Scalar};
use crate::sigexpr::{diff_time, eval, SignalClass, SignalExpr};

/// One summand `P(t)·e^{rate·t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpTerm {
    pub rate: Scalar,
    /// Polynomial in `t`.
    pub poly: CPoly,
}

/// Exponential polynomial in canonical form: distinct rates, nonzero
/// polynomials, terms ordered by `(Re a, Im a)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpPoly {
    terms: Vec<ExpTerm>,
}

fn cmp_rate(a: &Scalar, b: &Scalar) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

impl ExpPoly {
    pub fn new(terms: Vec<ExpTerm>) -> Self {
        let mut merged: Vec<ExpTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.iter_mut().find(|m| m.rate == t.rate) {
                Some(m) => m.poly = &m.poly + &t.poly,
                None => merged.push(t),
            }
        }
        merged.retain(|t| !t.poly.is_zero());
        merged.sort_by(|a, b| cmp_rate(&a.rate, &b.rate));
        ExpPoly { terms: merged }
    }

    pub fn zero() -> Self {
        ExpPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        ExpPoly::new(vec![ExpTerm { rate: Scalar::zero(), poly: CPoly::constant(c) }])
    }

    pub fn polynomial(p: CPoly) -> Self {
        ExpPoly::new(vec![ExpTerm { rate: Scalar::zero(), poly: p }])
    }

    pub fn exponential(rate: Scalar) -> Self {
        ExpPoly::new(vec![ExpTerm { rate, poly: CPoly::one() }])
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        ExpPoly::new(self.terms.iter().chain(&other.terms).cloned().collect())
    }

    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                out.push(ExpTerm { rate: &a.rate + &b.rate, poly: &a.poly * &b.poly });
            }
        }
        ExpPoly::new(out)
    }

    pub fn scale(&self, c: &Scalar) -> ExpPoly {
        ExpPoly::new(self.terms.iter().map(|t| ExpTerm { rate: t.rate.clone(), poly: t.poly.scale(c) }).collect())
    }

    pub fn pow(&self, k: u32) -> ExpPoly {
        (0..k).fold(ExpPoly::constant(Scalar::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.terms.iter().map(|term| term.poly.eval_c64(Complex64::new(t, 0.0)) * (to_c64(&term.rate) * t).exp()).sum()
    }

    /// Spectrum read directly off the rates.
    pub fn spectrum(&self) -> Spectrum {
        let sources = self
            .terms
            .iter()
            .map(|t| SpectrumSource {
                location: to_c64(&t.rate),
                kind: SourceKind::Pole(t.poly.degree().unwrap_or(0) as u32 + 1),
            })
            .collect();
        Spectrum::from_sources(sources, false)
    }

    /// Largest mismatch in rates or coefficients, relative to the coefficient scale.
    /// Terms are paired by nearest rate; a count mismatch is infinitely far.
    pub fn distance(&self, other: &ExpPoly) -> f64 {
        if self.terms.len() != other.terms.len() {
            return f64::INFINITY;
        }
        let mut used = vec![false; other.terms.len()];
        let mut worst: f64 = 0.0;
        for a in &self.terms {
            let ra = to_c64(&a.rate);
            let Some((j, b)) = other
                .terms
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .min_by(|x, y| (to_c64(&x.1.rate) - ra).norm().total_cmp(&(to_c64(&y.1.rate) - ra).norm()))
            else {
                return f64::INFINITY;
            };
            used[j] = true;
            worst = worst.max((to_c64(&b.rate) - ra).norm() / ra.norm().max(1.0));
            let n = a.poly.coeffs().len().max(b.poly.coeffs().len());
            let scale = a.poly.norm_inf().max(1.0);
            for k in 0..n {
                let d = (to_c64(&a.poly.coeff(k)) - to_c64(&b.poly.coeff(k))).norm();
                worst = worst.max(d / scale);
            }
        }
        worst
    }

    /// Time-domain expression in complex-exponential form.
    pub fn to_signal(&self) -> SignalExpr {
        let mut summands = Vec::new();
        for term in &self.terms {
            for (k, c) in term.poly.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                summands.push(SignalExpr::Mul(vec![
                    SignalExpr::Const(c.clone()),
                    SignalExpr::Pow(Box::new(SignalExpr::TimeVar), k as u32),
                    SignalExpr::Exp(term.rate.clone()),
                ]));
            }
        }
        SignalExpr::add(summands)
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, term) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", term.poly.with_var("t"))?;
            if !term.rate.is_zero() {
                write!(f, "·e^({}·t)", fmt_scalar(&term.rate))?;
            }
        }
        Ok(())
    }
}

fn sinusoid(omega: &Real, phase: &Real, cosine: bool) -> ExpPoly {
    let w = Scalar::new(Real::zero(), omega.clone());
    let up = unit_phase(phase);
    let down = up.conj();
    let (c_up, c_down) = if cosine {
        let half = re(crate::scalar::ratio(1, 2));
        (up * &half, down * half)
    } else {
        // sin x = (e^{ix} - e^{-ix}) / 2i
        let inv_2i = Scalar::one() / (imag_unit() * crate::scalar::cint(2));
        (up * &inv_2i, -(down * inv_2i))
    };
    ExpPoly::new(vec![
        ExpTerm { rate: w.clone(), poly: CPoly::constant(c_up) },
        ExpTerm { rate: -w, poly: CPoly::constant(c_down) },
    ])
}

/// Exponential polynomial of an expression built from constants, `t`,
/// exponentials and sinusoids. Sinusoids expand by Euler's formula.
pub fn from_signal(e: &SignalExpr) -> Result<ExpPoly> {
    if e.classify() != SignalClass::ExpPolynomial {
        return Err(Error::Unsupported(format!("{e} is not an exponential polynomial")));
    }
    Ok(convert(e))
}

fn convert(e: &SignalExpr) -> ExpPoly {
    match e {
        SignalExpr::Const(c) => ExpPoly::constant(c.clone()),
        SignalExpr::TimeVar => ExpPoly::polynomial(CPoly::x()),
        SignalExpr::Add(xs) => xs.iter().fold(ExpPoly::zero(), |acc, x| acc.add(&convert(x))),
        SignalExpr::Mul(xs) => xs.iter().fold(ExpPoly::constant(Scalar::one()), |acc, x| acc.mul(&convert(x))),
        SignalExpr::Pow(b, k) => convert(b).pow(*k),
        SignalExpr::Exp(rate) => ExpPoly::exponential(rate.clone()),
        SignalExpr::Sin { omega, phase } => sinusoid(omega, phase, false),
        SignalExpr::Cos { omega, phase } => sinusoid(omega, phase, true),
        _ => unreachable!("classified as exponential polynomial"),
    }
}

fn to_partial_fractions(x: &ExpPoly) -> Vec<PartialFraction> {
    let mut out = Vec::new();
    for term in &x.terms {
        for (k, c) in term.poly.coeffs().iter().enumerate() {
            let coefficient = c * re(Real::from_integer(factorial(k as u32)));
            out.push(PartialFraction { pole: term.rate.clone(), order: k as u32 + 1, coefficient });
        }
    }
    out
}

/// Operational image: `c·t^k·e^{at}` ↦ `c·k!/(s-a)^{k+1}`. Always strictly proper.
pub fn to_rational(x: &ExpPoly) -> RatFunc {
    assemble(&CPoly::zero(), &to_partial_fractions(x))
}

/// Inverse of [`to_rational`], through partial fractions.
pub fn to_exppoly(r: &RatFunc) -> Result<ExpPoly> {
    if !r.is_strictly_proper() {
        return Err(Error::NotStrictlyProper);
    }
    let pf = partial_fractions(r)?;
    let mut terms = Vec::with_capacity(pf.terms.len());
    for t in pf.terms {
        let k = t.order as usize - 1;
        let c = t.coefficient / re(Real::from_integer(factorial(k as u32)));
        terms.push(ExpTerm { rate: t.pole, poly: CPoly::monomial(c, k) });
    }
    Ok(ExpPoly::new(terms))
}

/// The Dirac impulse at the origin corresponds to `1`.
pub fn dirac_image() -> RatFunc {
    RatFunc::one()
}

/// Every `P(t)` becomes `-t·P(t)`; the image is the algebraic derivative of the original image.
pub fn mult_by_minus_t(x: &ExpPoly) -> ExpPoly {
    let minus_t = CPoly::monomial(-Scalar::one(), 1);
    ExpPoly::new(x.terms.iter().map(|t| ExpTerm { rate: t.rate.clone(), poly: &t.poly * &minus_t }).collect())
}

/// Taylor polynomial of `e` at `t0` truncated after `order`, from iterated
/// symbolic derivatives.
pub fn taylor_truncate(e: &SignalExpr, t0: f64, order: u32) -> Result<ExpPoly> {
    let mut current = e.clone();
    let shift = CPoly::linear(&re(from_f64(t0)));
    let mut poly = CPoly::zero();
    for k in 0..=order {
        if k > 0 {
            current = diff_time(&current)?;
        }
        let value = eval(&current, t0).map_err(|err| match err {
            Error::NotEvaluable(msg) => Error::NotDifferentiable(msg),
            other => other,
        })?;
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::NotDifferentiable(format!("derivative {k} is not finite at t = {t0}")));
        }
        let coeff = from_c64(value) / re(Real::from_integer(factorial(k)));
        poly = &poly + &shift.pow(k).scale(&coeff);
    }
    Ok(ExpPoly::polynomial(poly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cint, int, ratio};
    use crate::sigexpr::parse;

    #[test]
    fn sine_expands_by_euler() {
        let x = from_signal(&parse("sin(3*t)").unwrap()).unwrap();
        let half_over_i = Scalar::new(int(0), ratio(-1, 2));
        assert_eq!(
            x.terms(),
            &[
                ExpTerm { rate: Scalar::new(int(0), int(-3)), poly: CPoly::constant(-half_over_i.clone()) },
                ExpTerm { rate: Scalar::new(int(0), int(3)), poly: CPoly::constant(half_over_i) },
            ]
        );
    }

    #[test]
    fn sine_squared_rates() {
        let x = from_signal(&parse("sin(t)^2").unwrap()).unwrap();
        let rates: Vec<Scalar> = x.terms().iter().map(|t| t.rate.clone()).collect();
        assert_eq!(rates, vec![Scalar::new(int(0), int(-2)), cint(0), Scalar::new(int(0), int(2))]);
        let quarter = re(ratio(-1, 4));
        assert_eq!(x.terms()[0].poly, CPoly::constant(quarter.clone()));
        assert_eq!(x.terms()[1].poly, CPoly::constant(re(ratio(1, 2))));
        assert_eq!(x.terms()[2].poly, CPoly::constant(quarter));
    }

    #[test]
    fn images() {
        let sin3 = to_rational(&from_signal(&parse("sin(3*t)").unwrap()).unwrap());
        assert_eq!(sin3, RatFunc::new(CPoly::from_ints(&[3]), CPoly::from_ints(&[9, 0, 1])).unwrap());
        let one = to_rational(&from_signal(&parse("1").unwrap()).unwrap());
        assert_eq!(one, RatFunc::new(CPoly::one(), CPoly::x()).unwrap());
        let te2t = to_rational(&from_signal(&parse("t*exp(2*t)").unwrap()).unwrap());
        assert_eq!(te2t, RatFunc::new(CPoly::one(), CPoly::from_ints(&[4, -4, 1])).unwrap());
        assert_eq!(to_exppoly(&te2t).unwrap(), from_signal(&parse("t*exp(2*t)").unwrap()).unwrap());
    }

    #[test]
    fn inverse_examples() {
        // 2s/(s^2-1) -> e^t + e^-t
        let r = RatFunc::new(CPoly::from_ints(&[0, 2]), CPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(to_exppoly(&r).unwrap(), from_signal(&parse("exp(t) + exp(-t)").unwrap()).unwrap());
        // w/(s^2+w^2) -> sin(wt)
        let r = RatFunc::new(CPoly::from_ints(&[5]), CPoly::from_ints(&[25, 0, 1])).unwrap();
        assert_eq!(to_exppoly(&r).unwrap(), from_signal(&parse("sin(5*t)").unwrap()).unwrap());
        assert_eq!(to_exppoly(&RatFunc::s()), Err(Error::NotStrictlyProper));
    }

    #[test]
    fn minus_t_matches_algebraic_derivative() {
        for src in ["exp(2*t)", "sin(3*t)", "1", "t^2*cos(t + 1) + exp((1 - i)*t)"] {
            let x = from_signal(&parse(src).unwrap()).unwrap();
            assert_eq!(to_rational(&mult_by_minus_t(&x)), to_rational(&x).alg_deriv(), "{src}");
        }
    }

    #[test]
    fn dirac_is_one_with_empty_spectrum() {
        assert_eq!(dirac_image(), RatFunc::one());
        assert!(crate::ratfield::spectrum_of_rational(&dirac_image()).unwrap().is_empty());
    }

    #[test]
    fn taylor_of_sine() {
        let x = taylor_truncate(&parse("sin(2*t)").unwrap(), 0.0, 5).unwrap();
        let want = CPoly::new(vec![cint(0), cint(2), cint(0), re(ratio(-8, 6)), cint(0), re(ratio(32, 120))]);
        assert_eq!(x, ExpPoly::polynomial(want));
        assert!(x.spectrum().is_empty());
    }

    #[test]
    fn taylor_fixes_polynomials() {
        let e = parse("3*t^3 - t + 2").unwrap();
        let x = taylor_truncate(&e, 1.5, 6).unwrap();
        assert_eq!(x, from_signal(&e).unwrap());
        assert!(taylor_truncate(&parse("dirac()").unwrap(), 0.0, 2).is_err());
    }
}
