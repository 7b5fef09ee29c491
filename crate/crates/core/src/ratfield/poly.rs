use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::scalar::{fmt_scalar, re, to_c64, Scalar};

/// Polynomial with exact Gaussian-rational coefficients, ascending degree.
///
/// The coefficient list never ends in a zero; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CPoly {
    coeffs: Vec<Scalar>,
}

impl CPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        CPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        CPoly::new(coeffs.iter().map(|&c| crate::scalar::cint(c)).collect())
    }

    pub fn zero() -> Self {
        CPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        CPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        CPoly::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        CPoly::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// `x - root`.
    pub fn linear(root: &Scalar) -> Self {
        CPoly::new(vec![-root.clone(), Scalar::one()])
    }

    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        CPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.im.is_zero())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        CPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = Scalar::one() / self.lead();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        CPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * re(crate::scalar::int(k as i64))).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = CPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + to_c64(c))
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(to_c64).collect()
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &CPoly) -> (CPoly, CPoly) {
        let dd = d.degree().expect("polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return (CPoly::zero(), CPoly::zero());
        };
        if n < dd {
            return (CPoly::zero(), self.clone());
        }
        let inv_lead = Scalar::one() / d.lead();
        let mut quot = vec![Scalar::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let q = &rem[k + dd] * &inv_lead;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &q * dc;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (CPoly::new(quot), CPoly::new(rem))
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn exact_div(&self, d: &CPoly) -> CPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &CPoly) -> CPoly {
        if super::modp::certainly_coprime(self, other) {
            return CPoly::one();
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// `p(1/x)·x^deg(p)`: the coefficient list reversed.
    pub fn reversed(&self) -> CPoly {
        CPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Multiplicity of `x = 0` as a root.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Coefficients of `p(x0 + h)` in powers of `h`, up to `h^(count-1)`.
    pub fn taylor_at(&self, x0: &Scalar, count: usize) -> Vec<Scalar> {
        taylor_shift(&self.coeffs, x0, count)
    }

    /// Maximum coefficient modulus, as a float.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().map(|c| to_c64(c).norm()).fold(0.0, f64::max)
    }

    pub fn with_var<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var }
    }
}

/// Repeated synthetic division: Taylor coefficients of a polynomial at `x0`.
pub(crate) fn taylor_shift<T>(coeffs: &[T], x0: &T, count: usize) -> Vec<T>
where
    T: Clone + num_traits::Num,
{
    let mut work: Vec<T> = coeffs.to_vec();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        if work.is_empty() {
            out.push(T::zero());
            continue;
        }
        // divide work by (x - x0): quotient coefficients and remainder
        let n = work.len();
        let mut q = vec![T::zero(); n - 1];
        let mut carry = T::zero();
        for k in (0..n).rev() {
            let v = work[k].clone() + carry.clone() * x0.clone();
            if k > 0 {
                q[k - 1] = v.clone();
            }
            carry = v;
        }
        out.push(carry);
        work = q;
    }
    out
}

impl Add for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        CPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        CPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        if self.is_zero() || rhs.is_zero() {
            return CPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CPoly::new(out)
    }
}

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        CPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CPoly {
            type Output = CPoly;
            fn $m(self, rhs: CPoly) -> CPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub struct PolyDisplay<'a> {
    poly: &'a CPoly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut text = fmt_scalar(c);
            let negative = text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if !first {
                f.write_str(if negative { " - " } else { " + " })?;
            } else if negative {
                f.write_str("-")?;
            }
            first = false;
            let unit = text == "1";
            match k {
                0 => f.write_str(&text)?,
                _ => {
                    if !unit {
                        write!(f, "{text}*")?;
                    }
                    f.write_str(self.var)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.with_var("s").fmt(f)
    }
}
