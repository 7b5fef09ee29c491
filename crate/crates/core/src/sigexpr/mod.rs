//! Signal expression language.
//!
//! A [`SignalExpr`] is the time-domain description of a causal signal on
//! `t >= 0`. Expressions are kept in a canonical form: sums and products are
//! flat, constants are folded into a single leading factor of each product,
//! and sum terms are ordered by their printed form. Canonical expressions
//! print and re-parse to structurally equal trees.

mod diff;
mod eval;
mod parse;
mod print;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

pub use diff::diff_time;
pub use eval::eval;
pub use parse::{parse, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq)]
pub enum SignalExpr {
    Const(Scalar),
    /// The time variable `t`, in seconds.
    TimeVar,
    Add(Vec<SignalExpr>),
    Mul(Vec<SignalExpr>),
    Pow(Box<SignalExpr>, u32),
    /// `1 / u`. Only produced by division by a non-constant and by differentiation.
    Recip(Box<SignalExpr>),
    /// `e^(rate·t)`.
    Exp(Scalar),
    Sin {
        omega: Real,
        phase: Real,
    },
    Cos {
        omega: Real,
        phase: Real,
    },
    /// `sin(ωt)/t`, with value `ω` at `t = 0`.
    Sinc(Real),
    /// `cos(ωt)/(t²+1)`.
    RaisedCos(Real),
    Dirac,
    /// Operational exponential `e^{-Ls}`: delay for `L > 0`, advance for `L < 0`.
    Delay(Real),
    /// `exp[i(at² + bt + c)]`.
    Chirp {
        a: Real,
        b: Real,
        c: Real,
    },
}

/// Routing class of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalClass {
    ExpPolynomial,
    Dirac,
    OdeDefined,
    Unsupported,
}

impl SignalExpr {
    pub fn constant(c: Scalar) -> Self {
        SignalExpr::Const(c)
    }

    pub fn real(r: Real) -> Self {
        SignalExpr::Const(crate::scalar::re(r))
    }

    pub fn int(n: i64) -> Self {
        SignalExpr::Const(crate::scalar::cint(n))
    }

    pub fn zero() -> Self {
        SignalExpr::int(0)
    }

    pub fn one() -> Self {
        SignalExpr::int(1)
    }

    pub fn sin(omega: Real, phase: Real) -> Self {
        SignalExpr::Sin { omega, phase }
    }

    pub fn cos(omega: Real, phase: Real) -> Self {
        SignalExpr::Cos { omega, phase }
    }

    pub fn sinc(omega: Real) -> Result<Self> {
        if !omega.is_positive() {
            return Err(Error::Domain("sinc requires omega > 0".into()));
        }
        Ok(SignalExpr::Sinc(omega))
    }

    pub fn raised_cos(omega: Real) -> Result<Self> {
        if !omega.is_positive() {
            return Err(Error::Domain("rcos requires omega > 0".into()));
        }
        Ok(SignalExpr::RaisedCos(omega))
    }

    pub fn chirp(a: Real, b: Real, c: Real) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Domain("chirp requires a != 0".into()));
        }
        Ok(SignalExpr::Chirp { a, b, c })
    }

    pub fn add(terms: Vec<SignalExpr>) -> Self {
        SignalExpr::Add(terms).canonical()
    }

    pub fn mul(factors: Vec<SignalExpr>) -> Self {
        SignalExpr::Mul(factors).canonical()
    }

    pub fn pow(base: SignalExpr, k: u32) -> Self {
        SignalExpr::Pow(Box::new(base), k).canonical()
    }

    pub fn recip(u: SignalExpr) -> Self {
        SignalExpr::Recip(Box::new(u)).canonical()
    }

    pub fn as_const(&self) -> Option<&Scalar> {
        match self {
            SignalExpr::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Splits `c·x` into `(c, x)`; any other expression has factor 1.
    pub fn split_scale(&self) -> (Scalar, &SignalExpr) {
        match self {
            SignalExpr::Mul(fs) if fs.len() == 2 => match &fs[0] {
                SignalExpr::Const(c) => (c.clone(), &fs[1]),
                _ => (Scalar::one(), self),
            },
            _ => (Scalar::one(), self),
        }
    }

    pub fn contains(&self, pred: &dyn Fn(&SignalExpr) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            SignalExpr::Add(xs) | SignalExpr::Mul(xs) => xs.iter().any(|x| x.contains(pred)),
            SignalExpr::Pow(b, _) | SignalExpr::Recip(b) => b.contains(pred),
            _ => false,
        }
    }

    /// Canonical form; idempotent.
    pub fn canonical(self) -> Self {
        match self {
            SignalExpr::Add(terms) => canonical_add(terms),
            SignalExpr::Mul(factors) => canonical_mul(factors),
            SignalExpr::Pow(base, k) => canonical_pow(base.canonical(), k),
            SignalExpr::Recip(u) => match u.canonical() {
                SignalExpr::Const(c) if !c.is_zero() => SignalExpr::Const(Scalar::one() / c),
                SignalExpr::Recip(inner) => *inner,
                other => SignalExpr::Recip(Box::new(other)),
            },
            SignalExpr::Exp(rate) if rate.is_zero() => SignalExpr::one(),
            other => other,
        }
    }

    pub fn classify(&self) -> SignalClass {
        classify(self)
    }
}

fn canonical_add(terms: Vec<SignalExpr>) -> SignalExpr {
    let mut flat = Vec::new();
    let mut konst = Scalar::zero();
    for term in terms {
        match term.canonical() {
            SignalExpr::Add(inner) => {
                for t in inner {
                    match t {
                        SignalExpr::Const(c) => konst += c,
                        t => flat.push(t),
                    }
                }
            }
            SignalExpr::Const(c) => konst += c,
            t => flat.push(t),
        }
    }
    if !konst.is_zero() || flat.is_empty() {
        flat.push(SignalExpr::Const(konst));
    }
    if flat.len() == 1 {
        return flat.pop().unwrap();
    }
    let mut keyed: Vec<(String, SignalExpr)> = flat.into_iter().map(|t| (t.to_string(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    SignalExpr::Add(keyed.into_iter().map(|(_, t)| t).collect())
}

fn canonical_mul(factors: Vec<SignalExpr>) -> SignalExpr {
    let mut flat = Vec::new();
    let mut konst = Scalar::one();
    for f in factors {
        match f.canonical() {
            SignalExpr::Mul(inner) => {
                for g in inner {
                    match g {
                        SignalExpr::Const(c) => konst *= c,
                        g => flat.push(g),
                    }
                }
            }
            SignalExpr::Const(c) => konst *= c,
            g => flat.push(g),
        }
    }
    if konst.is_zero() {
        return SignalExpr::zero();
    }
    if flat.is_empty() {
        return SignalExpr::Const(konst);
    }
    if !konst.is_one() {
        flat.insert(0, SignalExpr::Const(konst));
    }
    if flat.len() == 1 {
        return flat.pop().unwrap();
    }
    SignalExpr::Mul(flat)
}

fn canonical_pow(base: SignalExpr, k: u32) -> SignalExpr {
    match (base, k) {
        (_, 0) => SignalExpr::one(),
        (b, 1) => b,
        (SignalExpr::Const(c), k) => SignalExpr::Const(num_traits::pow(c, k as usize)),
        (SignalExpr::Pow(b, j), k) => SignalExpr::Pow(b, j * k),
        (b, k) => SignalExpr::Pow(Box::new(b), k),
    }
}

fn is_exp_polynomial(e: &SignalExpr) -> bool {
    match e {
        SignalExpr::Const(_)
        | SignalExpr::TimeVar
        | SignalExpr::Exp(_)
        | SignalExpr::Sin { .. }
        | SignalExpr::Cos { .. } => true,
        SignalExpr::Add(xs) | SignalExpr::Mul(xs) => xs.iter().all(is_exp_polynomial),
        SignalExpr::Pow(b, _) => is_exp_polynomial(b),
        _ => false,
    }
}

fn classify(e: &SignalExpr) -> SignalClass {
    if is_exp_polynomial(e) {
        return SignalClass::ExpPolynomial;
    }
    let (_, atom) = e.split_scale();
    match atom {
        SignalExpr::Dirac => SignalClass::Dirac,
        SignalExpr::Sinc(_) | SignalExpr::RaisedCos(_) | SignalExpr::Delay(_) | SignalExpr::Chirp { .. } => {
            SignalClass::OdeDefined
        }
        _ => SignalClass::Unsupported,
    }
}
