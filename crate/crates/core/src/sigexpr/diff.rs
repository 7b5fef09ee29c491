use num_traits::Zero;

use super::SignalExpr;
use crate::error::{Error, Result};
use crate::scalar::{cint, imag_unit, re, Scalar};

/// Exact symbolic time derivative.
pub fn diff_time(e: &SignalExpr) -> Result<SignalExpr> {
    Ok(d(e)?.canonical())
}

fn c(s: Scalar) -> SignalExpr {
    SignalExpr::Const(s)
}

fn t2_plus_1() -> SignalExpr {
    SignalExpr::Add(vec![SignalExpr::Pow(Box::new(SignalExpr::TimeVar), 2), SignalExpr::one()])
}

fn d(e: &SignalExpr) -> Result<SignalExpr> {
    use SignalExpr as E;
    Ok(match e {
        E::Const(_) => E::zero(),
        E::TimeVar => E::one(),
        E::Add(xs) => E::Add(xs.iter().map(d).collect::<Result<_>>()?),
        E::Mul(xs) => {
            let mut terms = Vec::with_capacity(xs.len());
            for (k, x) in xs.iter().enumerate() {
                if matches!(x, E::Const(_)) {
                    continue;
                }
                let mut factors = xs.clone();
                factors[k] = d(x)?;
                terms.push(E::Mul(factors));
            }
            E::Add(terms)
        }
        E::Pow(b, k) => E::Mul(vec![E::int(*k as i64), E::Pow(b.clone(), k - 1), d(b)?]),
        E::Recip(u) => E::Mul(vec![E::int(-1), d(u)?, E::Recip(Box::new(E::Pow(u.clone(), 2)))]),
        E::Exp(rate) => E::Mul(vec![c(rate.clone()), e.clone()]),
        E::Sin { omega, phase } => {
            E::Mul(vec![c(re(omega.clone())), E::Cos { omega: omega.clone(), phase: phase.clone() }])
        }
        E::Cos { omega, phase } => {
            E::Mul(vec![c(-re(omega.clone())), E::Sin { omega: omega.clone(), phase: phase.clone() }])
        }
        E::Sinc(w) => {
            // (ωt·cos ωt − sin ωt) / t²
            let zero = crate::scalar::int(0);
            E::Mul(vec![
                E::Add(vec![
                    E::Mul(vec![c(re(w.clone())), E::TimeVar, E::cos(w.clone(), zero.clone())]),
                    E::Mul(vec![E::int(-1), E::sin(w.clone(), zero)]),
                ]),
                E::Recip(Box::new(E::Pow(Box::new(E::TimeVar), 2))),
            ])
        }
        E::RaisedCos(w) => {
            // −ω sin ωt/(t²+1) − 2t cos ωt/(t²+1)²
            let zero = crate::scalar::int(0);
            E::Add(vec![
                E::Mul(vec![c(-re(w.clone())), E::sin(w.clone(), zero.clone()), E::Recip(Box::new(t2_plus_1()))]),
                E::Mul(vec![
                    E::int(-2),
                    E::TimeVar,
                    E::cos(w.clone(), zero),
                    E::Recip(Box::new(E::Pow(Box::new(t2_plus_1()), 2))),
                ]),
            ])
        }
        E::Chirp { a, b, .. } => {
            // i(2at + b)·chirp
            let i = imag_unit();
            let slope = i.clone() * re(a.clone()) * cint(2);
            let mut inner = vec![E::Mul(vec![c(slope), E::TimeVar])];
            if !b.is_zero() {
                inner.push(c(i * re(b.clone())));
            }
            E::Mul(vec![E::Add(inner), e.clone()])
        }
        E::Dirac => return Err(Error::NotDifferentiable("dirac".into())),
        E::Delay(_) => return Err(Error::NotDifferentiable("delay".into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::sigexpr::{eval, parse};

    #[test]
    fn sine_derivative() {
        let e = SignalExpr::sin(int(3), int(0));
        let want = SignalExpr::Mul(vec![SignalExpr::int(3), SignalExpr::cos(int(3), int(0))]);
        assert_eq!(diff_time(&e).unwrap(), want);
    }

    #[test]
    fn square_derivative() {
        let e = SignalExpr::pow(SignalExpr::TimeVar, 2);
        assert_eq!(diff_time(&e).unwrap(), SignalExpr::Mul(vec![SignalExpr::int(2), SignalExpr::TimeVar]));
    }

    fn central_difference(e: &SignalExpr, t: f64) -> num_complex::Complex64 {
        let h = 1e-6;
        (eval(e, t + h).unwrap() - eval(e, t - h).unwrap()) / (2.0 * h)
    }

    #[test]
    fn sinc_derivative_at_one() {
        let w = 2.5f64;
        let e = parse("sinc(2.5)").unwrap();
        let de = diff_time(&e).unwrap();
        let v = eval(&de, 1.0).unwrap();
        let fd = central_difference(&e, 1.0);
        assert!((v - fd).norm() <= 1e-5 * (1.0 + v.norm()));
        assert!((v.re - (w * w.cos() - w.sin())).abs() < 1e-14);
    }

    #[test]
    fn raised_cosine_and_chirp_derivatives() {
        for src in ["rcos(3)", "chirp(0.5, -2, 1)", "t/(t^2 + 1)"] {
            let e = parse(src).unwrap();
            let de = diff_time(&e).unwrap();
            for t in [0.3, 1.0, 2.7] {
                let v = eval(&de, t).unwrap();
                assert!((v - central_difference(&e, t)).norm() <= 1e-5 * (1.0 + v.norm()), "{src} at {t}");
            }
        }
    }

    #[test]
    fn non_differentiable_atoms() {
        assert!(diff_time(&SignalExpr::Dirac).is_err());
        assert!(diff_time(&parse("2*delay(1)").unwrap()).is_err());
    }
}
