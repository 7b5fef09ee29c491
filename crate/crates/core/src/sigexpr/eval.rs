use num_complex::Complex64;

use super::SignalExpr;
use crate::error::{Error, Result};
use crate::scalar::{to_c64, to_f64};

/// Numerical value of `e` at time `t >= 0`.
pub fn eval(e: &SignalExpr, t: f64) -> Result<Complex64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::NotEvaluable(format!("signals live on t >= 0, got t = {t}")));
    }
    eval_at(e, t)
}

fn eval_at(e: &SignalExpr, t: f64) -> Result<Complex64> {
    Ok(match e {
        SignalExpr::Const(c) => to_c64(c),
        SignalExpr::TimeVar => Complex64::new(t, 0.0),
        SignalExpr::Add(xs) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for x in xs {
                acc += eval_at(x, t)?;
            }
            acc
        }
        SignalExpr::Mul(xs) => {
            let mut acc = Complex64::new(1.0, 0.0);
            for x in xs {
                acc *= eval_at(x, t)?;
            }
            acc
        }
        SignalExpr::Pow(b, k) => eval_at(b, t)?.powu(*k),
        SignalExpr::Recip(u) => {
            let v = eval_at(u, t)?;
            if v == Complex64::new(0.0, 0.0) {
                return Err(Error::NotEvaluable(format!("division by zero at t = {t}")));
            }
            v.inv()
        }
        SignalExpr::Exp(rate) => (to_c64(rate) * t).exp(),
        SignalExpr::Sin { omega, phase } => Complex64::new((to_f64(omega) * t + to_f64(phase)).sin(), 0.0),
        SignalExpr::Cos { omega, phase } => Complex64::new((to_f64(omega) * t + to_f64(phase)).cos(), 0.0),
        SignalExpr::Sinc(w) => {
            let w = to_f64(w);
            if t == 0.0 {
                Complex64::new(w, 0.0)
            } else {
                Complex64::new((w * t).sin() / t, 0.0)
            }
        }
        SignalExpr::RaisedCos(w) => Complex64::new((to_f64(w) * t).cos() / (t * t + 1.0), 0.0),
        SignalExpr::Chirp { a, b, c } => {
            let phase = to_f64(a) * t * t + to_f64(b) * t + to_f64(c);
            Complex64::new(0.0, phase).exp()
        }
        SignalExpr::Dirac => return Err(Error::NotEvaluable("the Dirac impulse has no pointwise value".into())),
        SignalExpr::Delay(_) => {
            return Err(Error::NotEvaluable("a standalone delay operator has no pointwise value".into()))
        }
    })
}
