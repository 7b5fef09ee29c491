use std::fmt;

use num_traits::{One, Signed, Zero};

use super::SignalExpr;
use crate::scalar::{fmt_real, Real, Scalar};

fn const_str(c: &Scalar) -> String {
    let imag = |r: &Real| -> String {
        if r.is_one() {
            "i".into()
        } else if *r == -Real::one() {
            "-i".into()
        } else {
            format!("{}*i", fmt_real(r))
        }
    };
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => fmt_real(&c.re),
        (true, false) => format!("({})", imag(&c.im)),
        (false, false) => {
            if c.im.is_negative() {
                format!("({} - {})", fmt_real(&c.re), imag(&-c.im.clone()))
            } else {
                format!("({} + {})", fmt_real(&c.re), imag(&c.im))
            }
        }
    }
}

fn linear(omega: &Real) -> String {
    if omega.is_one() {
        "t".into()
    } else if *omega == -Real::one() {
        "-t".into()
    } else {
        format!("{}*t", fmt_real(omega))
    }
}

fn affine(omega: &Real, phase: &Real) -> String {
    if phase.is_zero() {
        linear(omega)
    } else {
        format!("{} + {}", linear(omega), fmt_real(phase))
    }
}

fn is_atomic(e: &SignalExpr) -> bool {
    !matches!(e, SignalExpr::Const(_) | SignalExpr::Add(_) | SignalExpr::Mul(_) | SignalExpr::Recip(_))
}

fn wrapped(e: &SignalExpr) -> String {
    if is_atomic(e) {
        e.to_string()
    } else {
        format!("({e})")
    }
}

impl fmt::Display for SignalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignalExpr::Const(c) => f.write_str(&const_str(c)),
            SignalExpr::TimeVar => f.write_str("t"),
            SignalExpr::Add(terms) => {
                for (k, t) in terms.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            SignalExpr::Mul(factors) => {
                let mut first = true;
                for g in factors {
                    match g {
                        SignalExpr::Const(c) if first && *c == -Scalar::one() => {
                            f.write_str("-")?;
                            continue;
                        }
                        SignalExpr::Const(c) if first => {
                            f.write_str(&const_str(c))?;
                            first = false;
                            continue;
                        }
                        SignalExpr::Recip(u) => {
                            if first {
                                f.write_str("1")?;
                            }
                            write!(f, "/{}", wrapped(u))?;
                        }
                        SignalExpr::Add(_) => {
                            if !first {
                                f.write_str("*")?;
                            }
                            write!(f, "({g})")?;
                        }
                        other => {
                            if !first {
                                f.write_str("*")?;
                            }
                            write!(f, "{other}")?;
                        }
                    }
                    first = false;
                }
                Ok(())
            }
            SignalExpr::Pow(b, k) => write!(f, "{}^{k}", wrapped(b)),
            SignalExpr::Recip(u) => write!(f, "1/{}", wrapped(u)),
            SignalExpr::Exp(rate) => {
                if *rate == Scalar::one() {
                    f.write_str("exp(t)")
                } else if *rate == -Scalar::one() {
                    f.write_str("exp(-t)")
                } else {
                    write!(f, "exp({}*t)", const_str(rate))
                }
            }
            SignalExpr::Sin { omega, phase } => write!(f, "sin({})", affine(omega, phase)),
            SignalExpr::Cos { omega, phase } => write!(f, "cos({})", affine(omega, phase)),
            SignalExpr::Sinc(w) => write!(f, "sinc({})", fmt_real(w)),
            SignalExpr::RaisedCos(w) => write!(f, "rcos({})", fmt_real(w)),
            SignalExpr::Dirac => f.write_str("dirac()"),
            SignalExpr::Delay(l) => write!(f, "delay({})", fmt_real(l)),
            SignalExpr::Chirp { a, b, c } => {
                write!(f, "chirp({}, {}, {})", fmt_real(a), fmt_real(b), fmt_real(c))
            }
        }
    }
}
