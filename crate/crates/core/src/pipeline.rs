//! Routes an expression to the rational or the differential-equation path.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::opcalc::{dirac_image, from_signal, to_rational};
use crate::ratfield::{spectrum_of_rational, RatFunc, SourceKind, Spectrum};
use crate::sigexpr::{SignalClass, SignalExpr};
use crate::weylode::{
    catalog_equation, finite_singularities, fmt_c64, singularity_at_infinity, spectrum_from_points, OdeSystem,
    SingularPoint,
};

/// Everything computed on the way to a spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub expr: SignalExpr,
    pub class: SignalClass,
    pub route: Route,
    pub spectrum: Spectrum,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Route {
    /// Operational image in ℂ(s).
    Rational(RatFunc),
    /// Defining equation and its singular points.
    Ode { system: OdeSystem, finite: Vec<SingularPoint>, infinity: Option<SingularPoint> },
}

pub fn class_name(c: SignalClass) -> &'static str {
    match c {
        SignalClass::ExpPolynomial => "exponential polynomial",
        SignalClass::Dirac => "dirac",
        SignalClass::OdeDefined => "ode-defined",
        SignalClass::Unsupported => "unsupported",
    }
}

pub fn analyze(e: &SignalExpr) -> Result<Analysis> {
    let class = e.classify();
    let (route, spectrum) = match class {
        SignalClass::ExpPolynomial | SignalClass::Dirac => {
            let image = operational_image(e)?;
            let spectrum = spectrum_of_rational(&image)?;
            (Route::Rational(image), spectrum)
        }
        SignalClass::OdeDefined => {
            let system = catalog_equation(e)?;
            let finite = finite_singularities(&system)?;
            let infinity = singularity_at_infinity(&system)?;
            let spectrum = spectrum_from_points(&finite, infinity.as_ref());
            (Route::Ode { system, finite, infinity }, spectrum)
        }
        SignalClass::Unsupported => {
            return Err(Error::Unsupported(format!("{e} is outside the exponential-polynomial class and the catalog")))
        }
    };
    Ok(Analysis { expr: e.clone(), class, route, spectrum })
}

pub fn spectrum(e: &SignalExpr) -> Result<Spectrum> {
    Ok(analyze(e)?.spectrum)
}

/// Image in ℂ(s) of an exponential polynomial or a scaled Dirac.
pub fn operational_image(e: &SignalExpr) -> Result<RatFunc> {
    match e.classify() {
        SignalClass::ExpPolynomial => Ok(to_rational(&from_signal(e)?)),
        SignalClass::Dirac => Ok(dirac_image().scale(&e.split_scale().0)),
        SignalClass::OdeDefined => {
            Err(Error::Unsupported(format!("{e} has no rational image; it is defined by a differential equation")))
        }
        SignalClass::Unsupported => Err(Error::Unsupported(format!("{e} has no operational image"))),
    }
}

impl Analysis {
    /// Human-readable derivation of the spectrum.
    pub fn explain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "expression: {}", self.expr);
        let _ = writeln!(out, "class: {}", class_name(self.class));
        match &self.route {
            Route::Rational(r) => {
                let _ = writeln!(out, "image: {r}");
                let _ = writeln!(out, "poles:");
                for s in &self.spectrum.sources {
                    let order = match s.kind {
                        SourceKind::Pole(m) => m,
                        _ => 0,
                    };
                    let _ = writeln!(out, "  s = {}, order {order}", fmt_c64(s.location));
                }
            }
            Route::Ode { system, finite, infinity } => {
                let _ = writeln!(out, "equation: {system}");
                let _ = writeln!(out, "singular points:");
                for p in finite.iter().chain(infinity) {
                    let _ = writeln!(out, "  {p}");
                }
            }
        }
        let _ = writeln!(out, "spectrum: {}", self.spectrum);
        let _ = writeln!(out, "infinite singularity: {}", self.spectrum.infinite_singularity);
        out
    }
}
