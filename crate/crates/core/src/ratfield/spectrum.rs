use num_complex::Complex64;
use serde_json::{json, Value};

use super::ratfunc::RatFunc;
use super::roots::roots;
use crate::error::Result;
use crate::scalar::json_number;

/// Relative tolerance for treating a location as real and for merging frequencies.
pub const FREQUENCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    Pole(u32),
    Logarithmic,
    /// Singular, with no finer classification.
    None,
}

/// A point that contributes (or would contribute) a frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSource {
    pub location: Complex64,
    pub kind: SourceKind,
}

/// Frequencies of a signal: imaginary parts of its poles or singularities.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted, distinct, nonzero; rad/s.
    pub frequencies: Vec<f64>,
    pub sources: Vec<SpectrumSource>,
    pub infinite_singularity: bool,
}

fn is_real_location(z: Complex64) -> bool {
    z.im.abs() <= FREQUENCY_TOL * z.norm().max(1.0)
}

impl Spectrum {
    pub fn empty() -> Self {
        Spectrum { frequencies: Vec::new(), sources: Vec::new(), infinite_singularity: false }
    }

    pub fn from_sources(sources: Vec<SpectrumSource>, infinite_singularity: bool) -> Self {
        let mut freqs: Vec<f64> =
            sources.iter().filter(|s| !is_real_location(s.location)).map(|s| s.location.im).collect();
        freqs.sort_by(f64::total_cmp);
        let mut frequencies: Vec<f64> = Vec::with_capacity(freqs.len());
        for f in freqs {
            match frequencies.last() {
                Some(&last) if (f - last).abs() <= FREQUENCY_TOL * last.abs().max(1.0) => {}
                _ => frequencies.push(f),
            }
        }
        Spectrum { frequencies, sources, infinite_singularity }
    }

    /// No frequencies. A signal may have an empty spectrum and still carry an infinite singularity.
    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    /// Set equality with `expected` at absolute tolerance `tol`.
    pub fn matches(&self, expected: &[f64], tol: f64) -> bool {
        let mut want = expected.to_vec();
        want.sort_by(f64::total_cmp);
        want.dedup();
        want.len() == self.frequencies.len() && want.iter().zip(&self.frequencies).all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.frequencies.len();
        (0..n).all(|k| (self.frequencies[k] + self.frequencies[n - 1 - k]).abs() <= tol)
    }

    /// `{frequencies, sources: [{re, im, kind, order}], infinite_singularity}`.
    pub fn to_json(&self, digits: usize) -> Value {
        let sources: Vec<Value> = self
            .sources
            .iter()
            .map(|s| {
                let (kind, order) = match s.kind {
                    SourceKind::Pole(m) => ("pole", Value::from(m)),
                    SourceKind::Logarithmic => ("logarithmic", Value::Null),
                    SourceKind::None => ("none", Value::Null),
                };
                json!({
                    "re": json_number(s.location.re, digits),
                    "im": json_number(s.location.im, digits),
                    "kind": kind,
                    "order": order,
                })
            })
            .collect();
        json!({
            "frequencies": self.frequencies.iter().map(|&f| json_number(f, digits)).collect::<Vec<_>>(),
            "sources": sources,
            "infinite_singularity": self.infinite_singularity,
        })
    }
}

impl std::fmt::Display for Spectrum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.frequencies.is_empty() {
            f.write_str("{}")?;
        } else {
            let items: Vec<String> = self.frequencies.iter().map(|x| crate::scalar::fmt_num(*x, 12)).collect();
            write!(f, "{{{}}}", items.join(", "))?;
        }
        if self.infinite_singularity {
            f.write_str(" + singularity at infinity")?;
        }
        Ok(())
    }
}

/// Spectrum of an element of ℂ(s). The polynomial part contributes nothing,
/// so Laurent polynomials and every rational function with only real poles
/// have an empty spectrum.
pub fn spectrum_of_rational(r: &RatFunc) -> Result<Spectrum> {
    let sources = roots(r.den())?
        .into_iter()
        .map(|p| SpectrumSource { location: p.to_c64(), kind: SourceKind::Pole(p.multiplicity) })
        .collect();
    Ok(Spectrum::from_sources(sources, false))
}
