//! Exact Gaussian-rational scalars.
//!
//! Every coefficient in the algebraic layers is a `Complex<BigRational>`.
//! Floating point values enter through [`from_f64`], which is exact because
//! every finite `f64` is a dyadic rational.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Real = BigRational;
pub type Scalar = Complex<BigRational>;

pub fn int(n: i64) -> Real {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Real {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn re(r: Real) -> Scalar {
    Complex::new(r, Real::zero())
}

pub fn cint(n: i64) -> Scalar {
    re(int(n))
}

pub fn imag_unit() -> Scalar {
    Complex::new(Real::zero(), Real::one())
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Real {
    BigRational::from_float(x).unwrap_or_else(Real::zero)
}

pub fn from_c64(z: Complex64) -> Scalar {
    Complex::new(from_f64(z.re), from_f64(z.im))
}

pub fn to_f64(r: &Real) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn to_c64(z: &Scalar) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

pub fn is_real(z: &Scalar) -> bool {
    z.im.is_zero()
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `e^{i·phi}`, exact when `phi = 0`.
pub fn unit_phase(phi: &Real) -> Scalar {
    if phi.is_zero() {
        return Scalar::one();
    }
    let p = to_f64(phi);
    Complex::new(from_f64(p.cos()), from_f64(p.sin()))
}

/// Renders a rational as a plain decimal when the expansion terminates,
/// otherwise as `p/q`.
pub fn fmt_real(r: &Real) -> String {
    let den = r.denom().clone();
    let mut d = den.clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while d.is_multiple_of(&two) {
        d /= &two;
        twos += 1;
    }
    while d.is_multiple_of(&five) {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let k = twos.max(fives);
    let scaled = r.numer() * num_traits::pow(BigInt::from(10), k as usize) / den;
    if k == 0 {
        return scaled.to_string();
    }
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let k = k as usize;
    let padded = if digits.len() <= k { format!("{}{}", "0".repeat(k + 1 - digits.len()), digits) } else { digits };
    let (int_part, frac_part) = padded.split_at(padded.len() - k);
    let frac_part = frac_part.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Renders a Gaussian rational compactly: `3`, `-1/3`, `2i`, `(1+2i)`.
///
/// Values whose exact form runs past 20 characters are shown at 12
/// significant digits.
pub fn fmt_scalar(z: &Scalar) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => fmt_compact(&z.re),
        (true, false) => format!("{}i", fmt_imag_coeff(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!("({}{}{}i)", fmt_compact(&z.re), sign, fmt_imag_coeff(&z.im.abs()))
        }
    }
}

fn fmt_compact(r: &Real) -> String {
    let exact = fmt_real(r);
    if exact.len() > 20 {
        fmt_num(to_f64(r), 12)
    } else {
        exact
    }
}

fn fmt_imag_coeff(r: &Real) -> String {
    if r.is_one() {
        String::new()
    } else if *r == -Real::one() {
        "-".into()
    } else {
        fmt_compact(r)
    }
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    s.parse().unwrap_or(x)
}

/// Text rendering at `digits` significant digits: no negative zero, and
/// scientific notation outside `[1e-6, 1e15)`.
pub fn fmt_num(x: f64, digits: usize) -> String {
    let r = round_sig(x, digits);
    if r == 0.0 {
        "0".into()
    } else if r.abs() < 1e-6 || r.abs() >= 1e15 {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

/// JSON number for `x` at `digits` significant digits; integral values render without a fraction.
pub fn json_number(x: f64, digits: usize) -> serde_json::Value {
    let r = round_sig(x, digits);
    if r == 0.0 {
        return serde_json::Value::from(0);
    }
    if r.fract() == 0.0 && r.abs() < 1e15 {
        return serde_json::Value::from(r as i64);
    }
    serde_json::Number::from_f64(r).map(serde_json::Value::Number).unwrap_or(serde_json::Value::Null)
}
