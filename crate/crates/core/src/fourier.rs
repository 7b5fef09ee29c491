//! Classical Fourier computations used as a foil: the discrete transform,
//! the closed-form transform of the sinc, and a side-by-side report against
//! the algebraic spectrum.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::instfreq::SampledSignal;
use crate::pipeline;
use crate::ratfield::Spectrum;
use crate::scalar::{fmt_num, json_number, to_f64};
use crate::sigexpr::{SignalClass, SignalExpr};

/// Discrete transform of a uniformly sampled signal, bins sorted by frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct DftResult {
    /// rad/s.
    pub bin_frequencies: Vec<f64>,
    pub magnitudes: Vec<f64>,
    /// Raw coefficients in the same order as the bins.
    pub coefficients: Vec<Complex64>,
}

impl DftResult {
    /// `(1/N) Σ |X_k|²`, equal to the sample energy by Parseval.
    pub fn energy(&self) -> f64 {
        self.magnitudes.iter().map(|m| m * m).sum::<f64>() / self.magnitudes.len() as f64
    }

    /// Frequencies of the `k` largest magnitudes, ascending.
    pub fn dominant(&self, k: usize) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..self.magnitudes.len()).collect();
        idx.sort_by(|&a, &b| self.magnitudes[b].total_cmp(&self.magnitudes[a]).then(a.cmp(&b)));
        let mut out: Vec<f64> = idx.into_iter().take(k).map(|i| self.bin_frequencies[i]).collect();
        out.sort_by(f64::total_cmp);
        out
    }

    pub fn bin_spacing(&self) -> f64 {
        match self.bin_frequencies.as_slice() {
            [a, b, ..] => b - a,
            _ => 0.0,
        }
    }
}

/// `X_k = Σ x_n e^{-2πi kn/N}`, radix-2 when `N` is a power of two, direct otherwise.
pub fn transform(x: &[Complex64]) -> Vec<Complex64> {
    if x.len().is_power_of_two() {
        fft(x)
    } else {
        transform_direct(x)
    }
}

/// The O(N²) sum.
pub fn transform_direct(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n).map(|k| x.iter().enumerate().map(|(j, v)| v * twiddle((k * j) % n, n)).sum()).collect()
}

fn twiddle(k: usize, n: usize) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * PI * k as f64 / n as f64)
}

/// Iterative radix-2 Cooley–Tukey; `x.len()` must be a power of two.
fn fft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let bits = n.trailing_zeros();
    let mut a: Vec<Complex64> =
        (0..n).map(|i| x[if n > 1 { i.reverse_bits() >> (usize::BITS - bits) } else { 0 }]).collect();
    let roots: Vec<Complex64> = (0..n / 2).map(|k| twiddle(k, n)).collect();
    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let w = roots[k * stride];
                let u = a[start + k];
                let v = a[start + k + len / 2] * w;
                a[start + k] = u + v;
                a[start + k + len / 2] = u - v;
            }
        }
        len <<= 1;
    }
    a
}

/// Transform of a uniformly sampled signal.
pub fn dft(sig: &SampledSignal) -> Result<DftResult> {
    let times = sig.times();
    let n = times.len();
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    if times.windows(2).any(|w| ((w[1] - w[0]) - dt).abs() > 1e-6 * dt) {
        return Err(Error::Invalid("the discrete transform needs uniform sampling".into()));
    }
    let x: Vec<Complex64> = sig.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let coeffs = transform(&x);
    let mut bins: Vec<(f64, Complex64)> = coeffs
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let signed = if k < n.div_ceil(2) { k as f64 } else { k as f64 - n as f64 };
            (2.0 * PI * signed / (n as f64 * dt), c)
        })
        .collect();
    bins.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(DftResult {
        bin_frequencies: bins.iter().map(|b| b.0).collect(),
        magnitudes: bins.iter().map(|b| b.1.norm()).collect(),
        coefficients: bins.into_iter().map(|b| b.1).collect(),
    })
}

/// Unit impulse at the first of `n` samples spaced `dt`.
pub fn impulse(n: usize, dt: f64) -> Result<SampledSignal> {
    let times = (0..n).map(|k| k as f64 * dt).collect();
    let mut values = vec![0.0; n];
    if let Some(v) = values.first_mut() {
        *v = 1.0;
    }
    SampledSignal::new(times, values)
}

/// Fourier transform of `sin(ωt)/t` over the whole line, as a rectangle of
/// height `ω` on `(-ω, ω)`. The jump points take the midpoint value `ω/2`.
pub fn sinc_fourier_closed_form(omega: f64, xi: f64) -> f64 {
    let a = xi.abs();
    if a < omega {
        omega
    } else if a == omega {
        omega / 2.0
    } else {
        0.0
    }
}

/// The Fourier side of one comparison row.
#[derive(Debug, Clone, PartialEq)]
pub enum FourierSide {
    /// Transform of the impulse: constant magnitude at every bin.
    Flat { magnitude: f64, max_deviation: f64 },
    /// Rectangle `(-ω, ω)` of height `ω`.
    Rectangle { omega: f64 },
    /// Line pair located by the discrete transform of generated samples.
    Lines { dominant: Vec<f64>, bin_spacing: f64, dft: DftResult },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContrastRow {
    pub signal: SignalExpr,
    pub algebraic: Spectrum,
    pub fourier: FourierSide,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContrastReport {
    pub rows: Vec<ContrastRow>,
}

const IMPULSE_LEN: usize = 64;
const TONE_LEN: usize = 4096;
const SWEEP: [i64; 4] = [1, 2, 4, 8];

/// Algebraic spectrum next to the classical Fourier description, for a Dirac, sinc or sine.
pub fn contrast_report(e: &SignalExpr) -> Result<ContrastReport> {
    let unsupported = || Error::Unsupported(format!("{e}: contrast needs dirac(), sinc(w) or sin(w*t + p)"));
    let row = |signal: SignalExpr, fourier: FourierSide| -> Result<ContrastRow> {
        Ok(ContrastRow { algebraic: pipeline::spectrum(&signal)?, signal, fourier })
    };
    let (scale, atom) = e.split_scale();
    let rows = match (e.classify(), atom) {
        (SignalClass::Dirac, _) => {
            let d = dft(&impulse(IMPULSE_LEN, 1.0)?)?;
            let magnitude = d.magnitudes[0];
            let max_deviation = d.magnitudes.iter().map(|m| (m - magnitude).abs()).fold(0.0, f64::max);
            vec![row(e.clone(), FourierSide::Flat { magnitude, max_deviation })?]
        }
        (SignalClass::OdeDefined, SignalExpr::Sinc(w)) => {
            let mut rows = vec![row(e.clone(), FourierSide::Rectangle { omega: to_f64(w) })?];
            for w in SWEEP {
                let sig =
                    SignalExpr::mul(vec![SignalExpr::Const(scale.clone()), SignalExpr::sinc(crate::scalar::int(w))?]);
                rows.push(row(sig, FourierSide::Rectangle { omega: w as f64 })?);
            }
            rows
        }
        (SignalClass::ExpPolynomial, SignalExpr::Sin { omega, .. }) => {
            let w = to_f64(omega).abs();
            // at least 8 samples per period, and never below 64 Hz
            let rate = (8.0 * w / (2.0 * PI)).max(64.0);
            let sig = SampledSignal::from_expr(e, rate, 0.0, (TONE_LEN - 1) as f64 / rate)?;
            let d = dft(&sig)?;
            let fourier = FourierSide::Lines { dominant: d.dominant(2), bin_spacing: d.bin_spacing(), dft: d };
            vec![row(e.clone(), fourier)?]
        }
        _ => return Err(unsupported()),
    };
    Ok(ContrastReport { rows })
}

impl FourierSide {
    pub fn describe(&self) -> String {
        let r = |x: f64| fmt_num(x, 12);
        match self {
            FourierSide::Flat { magnitude, .. } => format!("flat |X| = {}: all frequencies", r(*magnitude)),
            FourierSide::Rectangle { omega } => {
                format!("rectangle on ({}, {}), height {}, width {}", r(-omega), r(*omega), r(*omega), r(2.0 * omega))
            }
            FourierSide::Lines { dominant, bin_spacing, .. } => {
                let lines: Vec<String> = dominant.iter().map(|f| r(*f).to_string()).collect();
                format!("lines near {{{}}} (bin spacing {})", lines.join(", "), r(*bin_spacing))
            }
        }
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let num = |x: f64| json_number(x, digits);
        match self {
            FourierSide::Flat { magnitude, max_deviation } => {
                json!({"kind": "flat", "magnitude": num(*magnitude), "max_deviation": num(*max_deviation)})
            }
            FourierSide::Rectangle { omega } => json!({
                "kind": "rectangle",
                "support": [num(-omega), num(*omega)],
                "height": num(*omega),
                "width": num(2.0 * omega),
            }),
            FourierSide::Lines { dominant, bin_spacing, .. } => json!({
                "kind": "lines",
                "dominant": dominant.iter().map(|&f| num(f)).collect::<Vec<_>>(),
                "bin_spacing": num(*bin_spacing),
            }),
        }
    }

    /// Two numeric columns for external plotting.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut line = |x: f64, y: f64| out.push_str(&format!("{} {}\n", fmt_num(x, 12), fmt_num(y, 12)));
        match self {
            FourierSide::Flat { magnitude, .. } => {
                let d = IMPULSE_LEN as f64;
                for k in 0..IMPULSE_LEN {
                    line(2.0 * PI * (k as f64 - d / 2.0) / d, *magnitude);
                }
            }
            FourierSide::Rectangle { omega } => {
                for k in -100..=100 {
                    let xi = 2.0 * omega * k as f64 / 100.0;
                    line(xi, sinc_fourier_closed_form(*omega, xi));
                }
            }
            FourierSide::Lines { dft, .. } => {
                for (f, m) in dft.bin_frequencies.iter().zip(&dft.magnitudes) {
                    line(*f, *m);
                }
            }
        }
        out
    }
}

impl ContrastReport {
    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "rows": self.rows.iter().map(|r| json!({
                "signal": r.signal.to_string(),
                "algebraic": r.algebraic.to_json(digits),
                "fourier": r.fourier.to_json(digits),
            })).collect::<Vec<_>>(),
        })
    }

    /// Two-column dump of the first row's Fourier side.
    pub fn dump(&self) -> String {
        self.rows.first().map(|r| r.fourier.dump()).unwrap_or_default()
    }
}

impl fmt::Display for ContrastReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let algebraic: Vec<String> = self.rows.iter().map(|r| r.algebraic.to_string()).collect();
        let width = self.rows.iter().map(|r| r.signal.to_string().len()).max().unwrap_or(0).max(6);
        let aw = algebraic.iter().map(String::len).max().unwrap_or(0).max(9);
        writeln!(f, "{:<width$}  {:<aw$}  fourier", "signal", "algebraic")?;
        for (r, a) in self.rows.iter().zip(&algebraic) {
            writeln!(f, "{:<width$}  {:<aw$}  {}", r.signal.to_string(), a, r.fourier.describe())?;
        }
        Ok(())
    }
}
