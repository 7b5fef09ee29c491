use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::poly::CPoly;
use crate::error::{Error, Result};
use crate::scalar::{to_c64, Scalar};

/// Element of ℂ(s): coprime numerator and monic denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc {
    num: CPoly,
    den: CPoly,
}

impl RatFunc {
    /// Exact reduction of `num/den`.
    pub fn new(num: CPoly, den: CPoly) -> Result<Self> {
        reduce(num, den)
    }

    /// Trusts the caller that `num` and `den` are coprime and `den` is monic.
    pub(crate) fn from_reduced(num: CPoly, den: CPoly) -> Self {
        debug_assert!(den.lead().is_one());
        RatFunc { num, den }
    }

    pub fn from_poly(p: CPoly) -> Self {
        RatFunc { num: p, den: CPoly::one() }
    }

    pub fn constant(c: Scalar) -> Self {
        RatFunc::from_poly(CPoly::constant(c))
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(CPoly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(CPoly::one())
    }

    /// The indeterminate `s`.
    pub fn s() -> Self {
        RatFunc::from_poly(CPoly::x())
    }

    pub fn num(&self) -> &CPoly {
        &self.num
    }

    pub fn den(&self) -> &CPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_strictly_proper(&self) -> bool {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => true,
            (Some(n), Some(d)) => n < d,
            _ => false,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        reduce(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// The algebraic derivative `d/ds`.
    ///
    /// Every pole order grows by exactly one, so with `g = gcd(D, D')`,
    /// `h = D/g` and `k = D'/g` the reduced form is `(N'h - Nk) / (D·h)`.
    pub fn alg_deriv(&self) -> Self {
        if self.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative());
        }
        let d1 = self.den.derivative();
        let g = self.den.gcd(&d1);
        let h = self.den.exact_div(&g);
        let k = d1.exact_div(&g);
        let num = &(&self.num.derivative() * &h) - &(&self.num * &k);
        RatFunc::from_reduced(num, &self.den * &h)
    }

    /// `k`-fold algebraic derivative.
    pub fn alg_deriv_n(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.alg_deriv())
    }

    pub fn eval_c64(&self, s: Complex64) -> Complex64 {
        self.num.eval_c64(s) / self.den.eval_c64(s)
    }

    /// `r(1/z)` as an element of ℂ(z).
    pub fn at_reciprocal(&self) -> Self {
        let (Some(dn), Some(dd)) = (self.num.degree(), self.den.degree()) else {
            return self.clone();
        };
        // num(1/z)/den(1/z) = z^(dd-dn) · rev(num)/rev(den)
        let mut num = self.num.reversed();
        let mut den = self.den.reversed();
        if dd >= dn {
            num = &num * &CPoly::monomial(Scalar::one(), dd - dn);
        } else {
            den = &den * &CPoly::monomial(Scalar::one(), dn - dd);
        }
        reduce(num, den).expect("nonzero denominator")
    }

    /// Pole order at `x = 0` (negative for a zero of that order).
    pub fn order_at_zero(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.den.low_order() as i64 - self.num.low_order() as i64
    }

    /// Relative coefficient distance, with both denominators monic.
    pub fn distance(&self, other: &RatFunc) -> f64 {
        fn diff(a: &CPoly, b: &CPoly) -> f64 {
            let n = a.coeffs().len().max(b.coeffs().len());
            (0..n).map(|k| (to_c64(&a.coeff(k)) - to_c64(&b.coeff(k))).norm()).fold(0.0, f64::max)
        }
        let scale = self.num.norm_inf().max(self.den.norm_inf()).max(1.0);
        diff(&self.num, &other.num).max(diff(&self.den, &other.den)) / scale
    }
}

/// Cancels the exact gcd and makes the denominator monic.
pub fn reduce(num: CPoly, den: CPoly) -> Result<RatFunc> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(RatFunc::zero());
    }
    let g = num.gcd(&den);
    let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
    let lead = den.lead();
    let inv = Scalar::one() / lead;
    Ok(RatFunc { num: num.scale(&inv), den: den.scale(&inv) })
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return reduce(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        // Any common factor of the sum and the lcm divides gcd(den, den').
        let g = self.den.gcd(&rhs.den);
        let (a, b) = (self.den.exact_div(&g), rhs.den.exact_div(&g));
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let c = num.gcd(&g);
        let (num, g) = if c.is_one() { (num, g) } else { (num.exact_div(&c), g.exact_div(&c)) };
        RatFunc::from_reduced(num, &(&g * &a) * &b)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let (g1, g2) = (self.num.gcd(&rhs.den), rhs.num.gcd(&self.den));
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        RatFunc::from_reduced(num, &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1))
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(CPoly::from_ints(num), CPoly::from_ints(den)).unwrap()
    }

    #[test]
    fn sum_of_simple_fractions() {
        // 1/(s-1) + 1/(s+1) = 2s/(s^2-1)
        assert_eq!(&rf(&[1], &[-1, 1]) + &rf(&[1], &[1, 1]), rf(&[0, 2], &[-1, 0, 1]));
    }

    #[test]
    fn cancellation() {
        let a = rf(&[0, 1], &[1, 0, 1]);
        let b = RatFunc::from_poly(CPoly::from_ints(&[1, 0, 1]));
        assert_eq!(&a * &b, RatFunc::s());
    }

    #[test]
    fn division_by_zero_rejected() {
        assert_eq!(RatFunc::one().div(&RatFunc::zero()), Err(Error::DivisionByZero));
        assert!(RatFunc::new(CPoly::one(), CPoly::zero()).is_err());
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), RatFunc::from_poly(CPoly::from_ints(&[1, 1])));
        assert_eq!(rf(&[0, 2], &[2]), RatFunc::s());
        assert_eq!(rf(&[9, 0, 1], &[9, 0, 1]), RatFunc::one());
        assert!(rf(&[1], &[2, 3]).den().lead().is_one());
    }

    #[test]
    fn algebraic_derivative() {
        // 1/(s-a) -> -1/(s-a)^2, a = 2
        assert_eq!(rf(&[1], &[-2, 1]).alg_deriv(), rf(&[-1], &[4, -4, 1]));
        // s/(s^2+w^2) -> (w^2 - s^2)/(s^2+w^2)^2, w = 3
        assert_eq!(rf(&[0, 1], &[9, 0, 1]).alg_deriv(), rf(&[9, 0, -1], &[81, 0, 18, 0, 1]));
        assert!(RatFunc::constant(crate::scalar::cint(5)).alg_deriv().is_zero());
    }

    #[test]
    fn reciprocal_substitution() {
        // 1/(s^2 + 1) at s = 1/z is z^2/(1 + z^2)
        assert_eq!(rf(&[1], &[1, 0, 1]).at_reciprocal(), rf(&[0, 0, 1], &[1, 0, 1]));
        assert_eq!(RatFunc::s().at_reciprocal(), rf(&[1], &[0, 1]));
    }
}
