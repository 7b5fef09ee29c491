//! Built-in oracle suite: the reference examples every release must reproduce.

use std::f64::consts::PI;
use std::fmt;

use num_rational::Ratio;

use crate::error::Error;
use crate::fourier::{contrast_report, dft, impulse, sinc_fourier_closed_form, FourierSide};
use crate::instfreq::{phi_fitted, phi_symbolic, phi_tone, ville_comparison, SampledSignal};
use crate::opcalc::{dirac_image, from_signal, taylor_truncate, to_exppoly, to_rational};
use crate::pipeline::spectrum;
use crate::ratfield::{poles, spectrum_of_rational, CPoly, RatFunc, Spectrum};
use crate::scalar::{cint, ratio, re, Scalar};
use crate::sigexpr::{parse, SignalClass};
use crate::weylode::{
    catalog_equation, finite_singularities, singularity_at_infinity, FuchsKind, Location, Refinement, WeylOp,
};

type Outcome = std::result::Result<(), String>;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    /// `None` on success, otherwise the mismatch.
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {}", self.name),
            Some(why) => write!(f, "FAIL {}: {}", self.name, why),
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err(e: Error) -> String {
    e.to_string()
}

fn spec_of(src: &str) -> std::result::Result<Spectrum, String> {
    spectrum(&parse(src).map_err(|e| e.to_string())?).map_err(err)
}

fn expect_freqs(src: &str, want: &[f64]) -> Outcome {
    let s = spec_of(src)?;
    ensure!(s.matches(want, 1e-9), "{src}: got {s}, want {want:?}");
    Ok(())
}

fn rf(num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::new(CPoly::from_ints(num), CPoly::from_ints(den)).expect("nonzero denominator")
}

type CheckFn = fn() -> Outcome;

const CHECKS: &[(&str, CheckFn)] = &[
    ("sinc(0) is a parameter-domain error", || {
        let e = parse("sinc(0)").err().ok_or("accepted")?;
        ensure!(matches!(e.kind, crate::sigexpr::ParseErrorKind::Domain(_)), "wrong error {e}");
        Ok(())
    }),
    ("sin(w t) is an exponential polynomial", || {
        ensure!(parse("sin(2*t)").unwrap().classify() == SignalClass::ExpPolynomial, "misclassified");
        Ok(())
    }),
    ("dirac() is classified as Dirac", || {
        ensure!(parse("dirac()").unwrap().classify() == SignalClass::Dirac, "misclassified");
        Ok(())
    }),
    ("3/(s^2+9) has simple poles at -3i and 3i", || {
        let p = poles(&rf(&[3], &[9, 0, 1])).map_err(err)?;
        let want = [Scalar::new(ratio(0, 1), ratio(-3, 1)), Scalar::new(ratio(0, 1), ratio(3, 1))];
        ensure!(p.len() == 2, "{} poles", p.len());
        ensure!(p.iter().zip(&want).all(|(p, w)| &p.location == w && p.multiplicity == 1), "{p:?}");
        Ok(())
    }),
    ("1/((s-1)^2+16) has frequencies -4 and 4", || {
        let s = spectrum_of_rational(&rf(&[1], &[17, -2, 1])).map_err(err)?;
        ensure!(s.matches(&[-4.0, 4.0], 1e-9), "got {s}");
        Ok(())
    }),
    ("Laurent polynomial s^-3 + 2s has empty spectrum", || {
        let s = spectrum_of_rational(&rf(&[1, 0, 0, 0, 2], &[0, 0, 0, 1])).map_err(err)?;
        ensure!(s.is_empty(), "got {s}");
        Ok(())
    }),
    ("Dirac image is 1 with empty spectrum", || {
        ensure!(dirac_image() == RatFunc::one(), "image {}", dirac_image());
        ensure!(spectrum_of_rational(&dirac_image()).map_err(err)?.is_empty(), "nonempty");
        ensure!(spec_of("dirac()")?.is_empty(), "pipeline spectrum nonempty");
        Ok(())
    }),
    ("image of sin(3t) is 3/(s^2+9)", || {
        let x = from_signal(&parse("sin(3*t)").unwrap()).map_err(err)?;
        ensure!(to_rational(&x) == rf(&[3], &[9, 0, 1]), "got {}", to_rational(&x));
        Ok(())
    }),
    ("3/(s^2+9) maps back to sin(3t)", || {
        let x = to_exppoly(&rf(&[3], &[9, 0, 1])).map_err(err)?;
        let y = from_signal(&parse("sin(3*t)").unwrap()).map_err(err)?;
        ensure!(x.distance(&y) <= 1e-12, "got {x}");
        ensure!(x.spectrum().matches(&[-3.0, 3.0], 1e-9), "spectrum {}", x.spectrum());
        Ok(())
    }),
    ("sin(w t + phi) and P(t) sin(w t + phi) have spectrum {-w, w}", || {
        expect_freqs("sin(2*t)", &[-2.0, 2.0])?;
        expect_freqs("sin(3*t + 0.7)", &[-3.0, 3.0])?;
        expect_freqs("(t^2 - 3*t + 1)*sin(1.5*t - 2)", &[-1.5, 1.5])
    }),
    ("polynomials have empty spectrum", || {
        ensure!(spec_of("4*t^3 - t + 2")?.is_empty(), "nonempty");
        Ok(())
    }),
    ("discrete impulse has a flat transform", || {
        let d = dft(&impulse(64, 1.0).map_err(err)?).map_err(err)?;
        ensure!(d.magnitudes.iter().all(|m| (m - 1.0).abs() <= 1e-12), "not flat");
        Ok(())
    }),
    ("Taylor truncation of sin(2t) at order 5 is 2t - 8/6 t^3 + 32/120 t^5 with empty spectrum", || {
        let x = taylor_truncate(&parse("sin(2*t)").unwrap(), 0.0, 5).map_err(err)?;
        let want = CPoly::new(vec![cint(0), cint(2), cint(0), re(ratio(-8, 6)), cint(0), re(ratio(32, 120))]);
        ensure!(x.terms().len() == 1 && x.terms()[0].poly == want, "got {x}");
        ensure!(x.spectrum().is_empty(), "spectrum {}", x.spectrum());
        Ok(())
    }),
    ("sinc(3) satisfies d/ds x = -3/(s^2+9)", || {
        let sys = catalog_equation(&parse("sinc(3)").unwrap()).map_err(err)?;
        ensure!(sys.op() == &WeylOp::d(), "operator {}", sys.op());
        ensure!(sys.rhs() == &rf(&[-3], &[9, 0, 1]), "rhs {}", sys.rhs());
        Ok(())
    }),
    ("delay(0.5) satisfies (d/ds + 0.5) x = 0", || {
        let sys = catalog_equation(&parse("delay(0.5)").unwrap()).map_err(err)?;
        let want = WeylOp::new(vec![RatFunc::constant(re(ratio(1, 2))), RatFunc::one()]);
        ensure!(sys.op() == &want && sys.rhs().is_zero(), "got {sys}");
        Ok(())
    }),
    ("chirp(1, 2, 0) satisfies (2i d/ds + s - 2i) x = 1", || {
        let sys = catalog_equation(&parse("chirp(1, 2, 0)").unwrap()).map_err(err)?;
        let two_i = Scalar::new(ratio(0, 1), ratio(2, 1));
        let want =
            WeylOp::new(vec![RatFunc::from_poly(CPoly::new(vec![-two_i.clone(), cint(1)])), RatFunc::constant(two_i)]);
        ensure!(sys.op() == &want && sys.rhs() == &RatFunc::one(), "got {sys}");
        Ok(())
    }),
    ("sinc(3) has regular logarithmic singularities at -3i and 3i", || {
        let pts = finite_singularities(&catalog_equation(&parse("sinc(3)").unwrap()).map_err(err)?).map_err(err)?;
        ensure!(pts.len() == 2, "{} points", pts.len());
        for (p, im) in pts.iter().zip([-3.0, 3.0]) {
            ensure!(
                p.location == Location::Finite(num_complex::Complex64::new(0.0, im))
                    && p.kind == FuchsKind::Regular
                    && p.refinement == Refinement::Logarithmic,
                "got {p}"
            );
        }
        Ok(())
    }),
    ("rcos(2) has regular singular points at -2i and 2i", || {
        let pts = finite_singularities(&catalog_equation(&parse("rcos(2)").unwrap()).map_err(err)?).map_err(err)?;
        let locs: Vec<_> = pts.iter().map(|p| p.location).collect();
        let want = [-2.0, 2.0].map(|im| Location::Finite(num_complex::Complex64::new(0.0, im)));
        ensure!(locs == want, "got {locs:?}");
        ensure!(pts.iter().all(|p| p.kind == FuchsKind::Regular), "irregular point");
        Ok(())
    }),
    ("delay has no finite singularities", || {
        for src in ["delay(0.5)", "delay(-2)"] {
            let pts = finite_singularities(&catalog_equation(&parse(src).unwrap()).map_err(err)?).map_err(err)?;
            ensure!(pts.is_empty(), "{src}: {} points", pts.len());
        }
        Ok(())
    }),
    ("chirp(1, 0, 0) is irregular at infinity", || {
        let sys = catalog_equation(&parse("chirp(1, 0, 0)").unwrap()).map_err(err)?;
        let p = singularity_at_infinity(&sys).map_err(err)?.ok_or("ordinary at infinity")?;
        ensure!(p.kind == FuchsKind::Irregular && p.rank == Some(Ratio::from_integer(2)), "got {p}");
        Ok(())
    }),
    ("sinc(5) has spectrum {-5, 5}", || expect_freqs("sinc(5)", &[-5.0, 5.0])),
    ("rcos(2) has spectrum {-2, 2}", || expect_freqs("rcos(2)", &[-2.0, 2.0])),
    ("delay has empty spectrum", || {
        for src in ["delay(1.5)", "delay(-1.5)"] {
            let s = spec_of(src)?;
            ensure!(s.is_empty() && !s.infinite_singularity, "{src}: {s}");
        }
        Ok(())
    }),
    ("chirp(1, 2, 3) has empty spectrum and a singularity at infinity", || {
        let s = spec_of("chirp(1, 2, 3)")?;
        ensure!(s.is_empty() && s.infinite_singularity, "got {s}");
        Ok(())
    }),
    ("phi of A sin(w t) follows the closed form", || {
        // Φ carries the sign of ẍ = -ω²A sin ωt
        let e = parse("sin(2*t)").unwrap();
        let phi = phi_symbolic(&e, PI / 4.0).map_err(err)?;
        ensure!((phi + 4.0).abs() <= 1e-12, "phi(pi/4) = {phi}");
        for (a, w, t) in [(1.5f64, 3.0f64, 0.4f64), (-0.5, 1.25, 2.0)] {
            let e = parse(&format!("{a}*sin({w}*t)")).unwrap();
            let closed = w * w * a * (w * t).sin() / (1.0 + w * w * a * a * (w * t).cos().powi(2)).sqrt();
            let phi = phi_symbolic(&e, t).map_err(err)?;
            ensure!((phi + closed).abs() <= 1e-12 * closed.abs().max(1.0), "A={a} w={w} t={t}: {phi} vs {closed}");
        }
        Ok(())
    }),
    ("piecewise-constant samples have zero phi away from the jump", || {
        let times: Vec<f64> = (0..40).map(|k| k as f64 * 0.1).collect();
        let values = times.iter().map(|&t| if t < 2.0 { 1.0 } else { -0.5 }).collect();
        let trace = phi_fitted(&SampledSignal::new(times, values).map_err(err)?, 5, 2).map_err(err)?;
        for (t, p) in trace.times.iter().zip(&trace.phi) {
            if (t - 1.95).abs() > 0.25 {
                let p = p.ok_or("missing value")?;
                ensure!(p.abs() <= 1e-12, "phi({t}) = {p}");
            }
        }
        ensure!(phi_symbolic(&parse("2.5").unwrap(), 1.0).map_err(err)? == 0.0, "constant expression");
        Ok(())
    }),
    ("Ville column is constant w while phi varies", || {
        let cmp = ville_comparison(1.0, 2.0).map_err(err)?;
        ensure!(cmp.rows.iter().all(|r| r.ville == 2.0), "ville column not constant");
        ensure!(cmp.rows.iter().all(|r| r.phi == phi_tone(1.0, 2.0, r.t)), "phi column");
        ensure!(cmp.rows.iter().any(|r| r.phi.abs() > 1.0), "phi column constant");
        Ok(())
    }),
    ("closed-form sinc transform: 3 inside, 0 outside", || {
        ensure!(sinc_fourier_closed_form(3.0, 0.0) == 3.0, "xi = 0");
        ensure!(sinc_fourier_closed_form(3.0, 5.0) == 0.0, "xi = 5");
        Ok(())
    }),
    ("contrast: Dirac is empty algebraically and flat in Fourier", || {
        let r = contrast_report(&parse("dirac()").unwrap()).map_err(err)?;
        ensure!(r.rows[0].algebraic.is_empty(), "algebraic {}", r.rows[0].algebraic);
        ensure!(
            matches!(r.rows[0].fourier, FourierSide::Flat { max_deviation, .. } if max_deviation <= 1e-12),
            "not flat"
        );
        Ok(())
    }),
    ("contrast: sinc sweep keeps {-w, w} while the rectangle widens", || {
        let r = contrast_report(&parse("sinc(1)").unwrap()).map_err(err)?;
        for (row, w) in r.rows[1..].iter().zip([1.0, 2.0, 4.0, 8.0]) {
            ensure!(row.algebraic.matches(&[-w, w], 1e-9), "w={w}: {}", row.algebraic);
            ensure!(row.fourier == FourierSide::Rectangle { omega: w }, "w={w}: {}", row.fourier.describe());
        }
        Ok(())
    }),
    ("spectrum of sin(3t) as JSON", || {
        let json = spec_of("sin(3*t)")?.to_json(12);
        ensure!(json["frequencies"] == serde_json::json!([-3, 3]), "{json}");
        ensure!(json["infinite_singularity"] == false, "{json}");
        Ok(())
    }),
];

/// Runs every check.
pub fn run() -> Vec<Check> {
    CHECKS.iter().map(|(name, f)| Check { name, failure: f().err() }).collect()
}
