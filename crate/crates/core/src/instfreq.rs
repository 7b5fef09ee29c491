//! Curvature-based instantaneous frequency `Φ(t) = ẍ / √(1 + ẋ²)`.
//!
//! Two paths: exact symbolic derivatives of a signal expression, and a
//! sliding least-squares polynomial fit on sampled data.

use std::fmt;
use std::io::Read;

use nalgebra::{DMatrix, DVector};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{fmt_num, json_number, to_f64};
use crate::sigexpr::{diff_time, eval, SignalExpr};

/// Relative size of an imaginary part still treated as round-off.
const REAL_TOL: f64 = 1e-9;
/// Smallest accepted ratio of extreme singular values in a window fit.
const RCOND: f64 = 1e-12;

/// `ẍ / √(1 + ẋ²)`.
pub fn phi_formula(dx: f64, ddx: f64) -> f64 {
    ddx / (1.0 + dx * dx).sqrt()
}

/// Signed curvature `ẍ / (1 + ẋ²)^{3/2}` of the graph of `x`.
pub fn curvature(dx: f64, ddx: f64) -> f64 {
    ddx / (1.0 + dx * dx).powf(1.5)
}

/// Uniformly or non-uniformly sampled real signal.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl SampledSignal {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::Invalid(format!("{} times but {} values", times.len(), values.len())));
        }
        if times.len() < 3 {
            return Err(Error::Invalid("at least 3 samples are required".into()));
        }
        if times.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::Invalid("samples must be finite".into()));
        }
        if let Some(k) = times.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Invalid(format!("times not strictly increasing at row {}", k + 1)));
        }
        Ok(SampledSignal { times, values })
    }

    /// Samples `e` at `t0 + k/rate` for every such point in `[t0, t1]`.
    pub fn from_expr(e: &SignalExpr, rate_hz: f64, t0: f64, t1: f64) -> Result<Self> {
        if !(rate_hz > 0.0) || !(t1 > t0) {
            return Err(Error::Invalid("need rate > 0 and t1 > t0".into()));
        }
        let n = ((t1 - t0) * rate_hz + 1e-9).floor() as usize + 1;
        let times: Vec<f64> = (0..n).map(|k| t0 + k as f64 / rate_hz).collect();
        let values = times.iter().map(|&t| real_value(e, t)).collect::<Result<_>>()?;
        SampledSignal::new(times, values)
    }

    /// Reads a CSV with header `t,x`.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(csv_err)?.clone();
        if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "x" {
            return Err(Error::Invalid("CSV header must be \"t,x\"".into()));
        }
        let (mut times, mut values) = (Vec::new(), Vec::new());
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let field = |i: usize| -> Result<f64> {
                rec[i].parse().map_err(|_| Error::Invalid(format!("row {}: bad number {:?}", row + 1, &rec[i])))
            };
            times.push(field(0)?);
            values.push(field(1)?);
        }
        SampledSignal::new(times, values)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x\n");
        for (t, x) in self.times.iter().zip(&self.values) {
            out.push_str(&format!("{t},{x}\n"));
        }
        out
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Invalid(format!("CSV: {e}"))
}

fn real_value(e: &SignalExpr, t: f64) -> Result<f64> {
    let z = eval(e, t)?;
    if z.im.abs() > REAL_TOL * z.re.abs().max(1.0) {
        return Err(Error::Domain(format!("{e} is complex-valued at t = {t}")));
    }
    Ok(z.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiMethod {
    Symbolic,
    Fitted,
}

impl PhiMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            PhiMethod::Symbolic => "symbolic",
            PhiMethod::Fitted => "fitted",
        }
    }
}

/// `Φ` at a list of times. A missing value marks an ill-conditioned fit.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiTrace {
    pub times: Vec<f64>,
    pub phi: Vec<Option<f64>>,
    pub method: PhiMethod,
}

impl PhiTrace {
    pub fn to_json(&self, digits: usize) -> Value {
        let num = |x: f64| json_number(x, digits);
        json!({
            "times": self.times.iter().map(|&t| num(t)).collect::<Vec<_>>(),
            "phi": self.phi.iter().map(|p| p.map_or(Value::Null, num)).collect::<Vec<_>>(),
            "method": self.method.as_str(),
        })
    }

    /// Largest `|Φ|` difference over points defined in both traces (matched by index).
    pub fn max_abs_diff(&self, other: &PhiTrace) -> f64 {
        self.phi.iter().zip(&other.phi).filter_map(|(a, b)| Some((a.as_ref()? - b.as_ref()?).abs())).fold(0.0, f64::max)
    }
}

impl fmt::Display for PhiTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# method: {}", self.method.as_str())?;
        writeln!(f, "{:>20} {:>20}", "t", "phi")?;
        for (t, p) in self.times.iter().zip(&self.phi) {
            let p = p.map_or("nan".to_string(), |v| fmt_num(v, 12));
            writeln!(f, "{:>20} {:>20}", fmt_num(*t, 12), p)?;
        }
        Ok(())
    }
}

/// `e` with its first two time derivatives, for repeated evaluation.
#[derive(Debug, Clone)]
pub struct SymbolicPhi {
    x: SignalExpr,
    dx: SignalExpr,
    ddx: SignalExpr,
}

impl SymbolicPhi {
    pub fn new(e: &SignalExpr) -> Result<Self> {
        let dx = diff_time(e)?;
        let ddx = diff_time(&dx)?;
        Ok(SymbolicPhi { x: e.clone(), dx, ddx })
    }

    /// `(ẋ(t), ẍ(t))`, rejecting complex-valued signals.
    pub fn derivatives(&self, t: f64) -> Result<(f64, f64)> {
        real_value(&self.x, t)?;
        Ok((real_value(&self.dx, t)?, real_value(&self.ddx, t)?))
    }

    pub fn at(&self, t: f64) -> Result<f64> {
        let (dx, ddx) = self.derivatives(t)?;
        Ok(phi_formula(dx, ddx))
    }

    pub fn trace(&self, times: &[f64]) -> Result<PhiTrace> {
        let phi = times.iter().map(|&t| self.at(t).map(Some)).collect::<Result<_>>()?;
        Ok(PhiTrace { times: times.to_vec(), phi, method: PhiMethod::Symbolic })
    }
}

/// `Φ(t)` from exact symbolic derivatives.
pub fn phi_symbolic(e: &SignalExpr, t: f64) -> Result<f64> {
    SymbolicPhi::new(e)?.at(t)
}

/// Window must be odd and at least 5, degree in `2..=4`.
pub fn check_fit_params(window: usize, degree: usize) -> Result<()> {
    if window < 5 || window.is_multiple_of(2) {
        return Err(Error::Invalid(format!("window must be odd and at least 5, got {window}")));
    }
    if !(2..=4).contains(&degree) {
        return Err(Error::Invalid(format!("degree must be in 2..=4, got {degree}")));
    }
    Ok(())
}

/// `Φ` from centred least-squares polynomial fits of the given degree.
///
/// Only centres with a full window are reported.
pub fn phi_fitted(sig: &SampledSignal, window: usize, degree: usize) -> Result<PhiTrace> {
    check_fit_params(window, degree)?;
    if window > sig.len() {
        return Err(Error::Invalid(format!("window {window} exceeds {} samples", sig.len())));
    }
    let half = window / 2;
    let centres = half..sig.len() - half;
    let mut times = Vec::with_capacity(centres.len());
    let mut phi = Vec::with_capacity(centres.len());
    for c in centres {
        times.push(sig.times[c]);
        phi.push(
            local_derivatives(&sig.times[c - half..=c + half], &sig.values[c - half..=c + half], sig.times[c], degree)
                .map(|(dx, ddx)| phi_formula(dx, ddx)),
        );
    }
    Ok(PhiTrace { times, phi, method: PhiMethod::Fitted })
}

/// `(ẋ, ẍ)` at `t0` from a least-squares polynomial fit, or `None` if the fit is rank deficient.
fn local_derivatives(ts: &[f64], xs: &[f64], t0: f64, degree: usize) -> Option<(f64, f64)> {
    let scale = ts.iter().map(|t| (t - t0).abs()).fold(0.0, f64::max);
    if !(scale > 0.0) {
        return None;
    }
    let a = DMatrix::from_fn(ts.len(), degree + 1, |i, j| ((ts[i] - t0) / scale).powi(j as i32));
    let b = DVector::from_column_slice(xs);
    let svd = a.svd(true, true);
    let (smax, smin) = svd.singular_values.iter().fold((0.0f64, f64::INFINITY), |(hi, lo), &s| (hi.max(s), lo.min(s)));
    if !(smin > RCOND * smax) {
        return None;
    }
    let c = svd.solve(&b, 0.0).ok()?;
    Some((c[1] / scale, 2.0 * c[2] / (scale * scale)))
}

/// One row of the Ville comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VilleRow {
    pub t: f64,
    pub ville: f64,
    pub phi: f64,
}

/// `A sin ωt` tabulated over one period: the analytic-signal frequency (constant `ω`) next to `Φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct VilleComparison {
    pub amplitude: f64,
    pub omega: f64,
    pub rows: Vec<VilleRow>,
}

/// `Φ(t)` for `A sin ωt` from its derivatives.
pub fn phi_tone(amplitude: f64, omega: f64, t: f64) -> f64 {
    let dx = amplitude * omega * (omega * t).cos();
    let ddx = -amplitude * omega * omega * (omega * t).sin();
    phi_formula(dx, ddx)
}

/// Comparison table for `A sin ωt`, sampled at nine points over one period.
pub fn ville_comparison(amplitude: f64, omega: f64) -> Result<VilleComparison> {
    if omega == 0.0 || !omega.is_finite() || !amplitude.is_finite() {
        return Err(Error::Domain("the tone needs a finite, nonzero ω".into()));
    }
    let period = 2.0 * std::f64::consts::PI / omega.abs();
    // a zero tone has no analytic-signal phase; report 0
    let ville = if amplitude == 0.0 { 0.0 } else { omega.abs() };
    let rows = (0..=8)
        .map(|k| {
            let t = period * k as f64 / 8.0;
            VilleRow { t, ville, phi: phi_tone(amplitude, omega, t) }
        })
        .collect();
    Ok(VilleComparison { amplitude, omega, rows })
}

/// Ville comparison for an expression of the form `A*sin(ω*t)`.
pub fn phi_vs_ville_note(e: &SignalExpr) -> Result<VilleComparison> {
    let unsupported = || Error::Unsupported(format!("{e} is not of the form A*sin(w*t)"));
    if let Some(c) = e.as_const() {
        if num_traits::Zero::is_zero(c) {
            return Err(Error::Domain("A = 0 leaves ω undetermined; use ville_comparison".into()));
        }
        return Err(unsupported());
    }
    let (scale, atom) = e.split_scale();
    let SignalExpr::Sin { omega, phase } = atom else {
        return Err(unsupported());
    };
    if !num_traits::Zero::is_zero(phase) || !num_traits::Zero::is_zero(&scale.im) {
        return Err(unsupported());
    }
    ville_comparison(to_f64(&scale.re), to_f64(omega))
}

impl fmt::Display for VilleComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = |x: f64| fmt_num(x, 12);
        writeln!(f, "# x(t) = {}*sin({}*t)", r(self.amplitude), r(self.omega))?;
        writeln!(f, "{:>20} {:>20} {:>20}", "t", "ville", "phi")?;
        for row in &self.rows {
            writeln!(f, "{:>20} {:>20} {:>20}", r(row.t), r(row.ville), r(row.phi))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigexpr::parse;
    use std::f64::consts::PI;

    #[test]
    fn tone_at_quarter_period() {
        // sin(2t) at t = π/4: ẋ = 0, ẍ = -4
        let phi = phi_symbolic(&parse("sin(2*t)").unwrap(), PI / 4.0).unwrap();
        assert!((phi + 4.0).abs() < 1e-12, "{phi}");
    }

    #[test]
    fn ramp_and_constant_have_zero_phi() {
        for src in ["t", "3", "2*t - 1"] {
            let e = parse(src).unwrap();
            for t in [0.0, 0.5, 7.0] {
                assert_eq!(phi_symbolic(&e, t).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn complex_signals_rejected() {
        let e = parse("exp(i*t)").unwrap();
        assert!(matches!(phi_symbolic(&e, 1.0), Err(Error::Domain(_))));
        assert!(phi_symbolic(&parse("dirac()").unwrap(), 1.0).is_err());
    }

    #[test]
    fn parabola_fit_is_exact() {
        let sig = SampledSignal::from_expr(&parse("t^2").unwrap(), 50.0, 0.0, 2.0).unwrap();
        let trace = phi_fitted(&sig, 7, 2).unwrap();
        assert_eq!(trace.times.len(), sig.len() - 6);
        for (t, p) in trace.times.iter().zip(&trace.phi) {
            let expect = 2.0 / (1.0 + 4.0 * t * t).sqrt();
            assert!((p.unwrap() - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn constant_samples_give_zero() {
        let sig = SampledSignal::new((0..20).map(f64::from).collect(), vec![1.5; 20]).unwrap();
        let trace = phi_fitted(&sig, 5, 3).unwrap();
        assert!(trace.phi.iter().all(|p| p.unwrap().abs() < 1e-12));
    }

    #[test]
    fn fit_parameter_validation() {
        let sig = SampledSignal::new((0..20).map(f64::from).collect(), vec![0.0; 20]).unwrap();
        assert!(phi_fitted(&sig, 4, 2).is_err());
        assert!(phi_fitted(&sig, 3, 2).is_err());
        assert!(phi_fitted(&sig, 7, 5).is_err());
        assert!(phi_fitted(&sig, 21, 2).is_err());
        assert!(SampledSignal::new(vec![0.0, 1.0, 1.0], vec![0.0; 3]).is_err());
        assert!(SampledSignal::new(vec![0.0, 1.0], vec![0.0; 2]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let sig = SampledSignal::new(vec![0.0, 0.5, 1.0, 1.5], vec![1.0, -2.0, 0.25, 3.0]).unwrap();
        assert_eq!(SampledSignal::read_csv(sig.to_csv().as_bytes()).unwrap(), sig);
        assert!(SampledSignal::read_csv("a,b\n1,2\n".as_bytes()).is_err());
        assert!(SampledSignal::read_csv("t,x\n0,1\n1,z\n2,3\n".as_bytes()).is_err());
    }

    #[test]
    fn ville_table() {
        let cmp = phi_vs_ville_note(&parse("sin(2*t)").unwrap()).unwrap();
        assert!(cmp.rows.iter().all(|r| r.ville == 2.0));
        let zero = ville_comparison(0.0, 2.0).unwrap();
        assert!(zero.rows.iter().all(|r| r.ville == 0.0 && r.phi == 0.0));
        assert!(ville_comparison(1.0, 0.0).is_err());
        assert!(phi_vs_ville_note(&parse("cos(2*t)").unwrap()).is_err());
        assert_eq!(phi_vs_ville_note(&parse("3*sin(2*t)").unwrap()).unwrap().amplitude, 3.0);
    }

    #[test]
    fn json_shape() {
        let trace = PhiTrace { times: vec![0.0, 0.5], phi: vec![Some(1.25), None], method: PhiMethod::Fitted };
        assert_eq!(trace.to_json(12).to_string(), r#"{"times":[0,0.5],"phi":[1.25,null],"method":"fitted"}"#);
    }
}
