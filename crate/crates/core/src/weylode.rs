//! Linear differential operators in ℂ(s)[d/ds] and the singularities of
//! operational differential equations `L x = ϖ`.
//!
//! Signals without a rational image (sinc, raised cosine, delays, chirps)
//! are described by the equation their operational image satisfies. Their
//! frequencies are the imaginary parts of the finite singular points.

use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratfield::{
    multiplicity_at, roots, square_free_part, CPoly, Pole, RatFunc, SourceKind, Spectrum, SpectrumSource,
};
use crate::scalar::{binomial, cint, imag_unit, re, unit_phase, Real, Scalar};
use crate::sigexpr::{SignalClass, SignalExpr};

/// `Σ r_k(s)·(d/ds)^k`. The zero operator has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylOp {
    coeffs: Vec<RatFunc>,
}

impl WeylOp {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        WeylOp { coeffs }
    }

    pub fn zero() -> Self {
        WeylOp { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        WeylOp::multiplication(RatFunc::one())
    }

    /// `d/ds`.
    pub fn d() -> Self {
        WeylOp::new(vec![RatFunc::zero(), RatFunc::one()])
    }

    /// Multiplication by `r`.
    pub fn multiplication(r: RatFunc) -> Self {
        WeylOp::new(vec![r])
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the leading coefficient; 0 for the zero operator.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, other: &WeylOp) -> WeylOp {
        let n = self.coeffs.len().max(other.coeffs.len());
        WeylOp::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &WeylOp) -> WeylOp {
        let n = self.coeffs.len().max(other.coeffs.len());
        WeylOp::new((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    /// Action on a rational function: `Σ r_k · r^{(k)}`.
    pub fn apply(&self, r: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut deriv = r.clone();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                deriv = deriv.alg_deriv();
            }
            if !c.is_zero() {
                acc = &acc + &(c * &deriv);
            }
        }
        acc
    }

    /// Composition `self ∘ other`, using `D^i·b = Σ_l C(i,l)·b^{(l)}·D^{i-l}`.
    pub fn mul_ops(&self, other: &WeylOp) -> WeylOp {
        if self.is_zero() || other.is_zero() {
            return WeylOp::zero();
        }
        let mut out = vec![RatFunc::zero(); self.order() + other.order() + 1];
        for (j, b) in other.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let mut derivs = vec![b.clone()];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                while derivs.len() <= i {
                    let next = derivs.last().unwrap().alg_deriv();
                    derivs.push(next);
                }
                for (l, bl) in derivs.iter().enumerate().take(i + 1) {
                    if bl.is_zero() {
                        continue;
                    }
                    let c = re(Real::from_integer(binomial(i as u32, l as u32)));
                    let term = (a * bl).scale(&c);
                    let slot = &mut out[i - l + j];
                    *slot = &*slot + &term;
                }
            }
        }
        WeylOp::new(out)
    }

    /// The same operator in `z = 1/s`, where `d/ds = -z²·d/dz`.
    pub fn at_reciprocal(&self) -> WeylOp {
        let minus_z2 = RatFunc::from_poly(CPoly::monomial(-Scalar::one(), 2));
        let d_s = WeylOp::new(vec![RatFunc::zero(), minus_z2]);
        let mut power = WeylOp::identity();
        let mut acc = WeylOp::zero();
        for (k, r) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power = d_s.mul_ops(&power);
            }
            if !r.is_zero() {
                acc = acc.add(&WeylOp::multiplication(r.at_reciprocal()).mul_ops(&power));
            }
        }
        acc
    }

    pub fn with_var<'a>(&'a self, var: &'a str) -> OpDisplay<'a> {
        OpDisplay { op: self, var }
    }
}

pub struct OpDisplay<'a> {
    op: &'a WeylOp,
    var: &'a str,
}

impl fmt::Display for OpDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.op.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, r) in self.op.coeffs.iter().enumerate().rev() {
            if r.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = if r.is_polynomial() {
                let p = r.num().with_var(self.var).to_string();
                if r.num().coeffs().len() > 1 || p.starts_with('-') {
                    format!("({p})")
                } else {
                    p
                }
            } else {
                format!("({})/({})", r.num().with_var(self.var), r.den().with_var(self.var))
            };
            let d = match k {
                0 => String::new(),
                1 => format!("d/d{}", self.var),
                _ => format!("d^{k}/d{}^{k}", self.var),
            };
            match (k, coeff.as_str()) {
                (0, _) => f.write_str(&coeff)?,
                (_, "1") => f.write_str(&d)?,
                _ => write!(f, "{coeff}·{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.with_var("s").fmt(f)
    }
}

/// `L x = ϖ` with `L` of order at least one.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeSystem {
    op: WeylOp,
    rhs: RatFunc,
}

impl OdeSystem {
    pub fn new(op: WeylOp, rhs: RatFunc) -> Result<Self> {
        if op.is_zero() || op.order() < 1 {
            return Err(Error::OperatorOrder);
        }
        Ok(OdeSystem { op, rhs })
    }

    pub fn op(&self) -> &WeylOp {
        &self.op
    }

    pub fn rhs(&self) -> &RatFunc {
        &self.rhs
    }

    pub fn order(&self) -> usize {
        self.op.order()
    }

    /// `x' = g` with no other terms.
    pub fn is_quadrature(&self) -> bool {
        self.order() == 1 && self.op.coeff(0).is_zero()
    }
}

impl fmt::Display for OdeSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs = if self.rhs.is_polynomial() { self.rhs.num().to_string() } else { self.rhs.to_string() };
        write!(f, "[{}] x = {}", self.op, rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Location {
    Finite(Complex64),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuchsKind {
    Regular,
    Irregular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refinement {
    Logarithmic,
    /// Pole of the given order, possibly with a logarithmic part.
    Pole(u32),
    Unclassified,
}

/// Whether the solution is known to be singular at the point, or only the equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Confirmed,
    Candidate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularPoint {
    pub location: Location,
    pub kind: FuchsKind,
    pub refinement: Refinement,
    pub status: Status,
    /// Poincaré rank of an irregular point.
    pub rank: Option<Ratio<i64>>,
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.location {
            Location::Finite(z) => write!(f, "s = {}", fmt_c64(z))?,
            Location::Infinity => f.write_str("s = ∞")?,
        }
        let kind = match self.kind {
            FuchsKind::Regular => "regular",
            FuchsKind::Irregular => "irregular",
        };
        write!(f, ": {kind}")?;
        match self.refinement {
            Refinement::Logarithmic => f.write_str(", logarithmic")?,
            Refinement::Pole(m) => write!(f, ", pole of order {m}")?,
            Refinement::Unclassified => {}
        }
        if let Some(r) = self.rank {
            write!(f, ", Poincaré rank {r}")?;
        }
        match self.status {
            Status::Confirmed => f.write_str(" (confirmed)"),
            Status::Candidate => f.write_str(" (candidate)"),
        }
    }
}

pub(crate) fn fmt_c64(z: Complex64) -> String {
    let r = |x: f64| crate::scalar::fmt_num(x, 12);
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => r(z.re),
        (true, false) => format!("{}i", r(z.im)),
        _ => format!("{}{}{}i", r(z.re), if z.im < 0.0 { "-" } else { "+" }, r(z.im.abs())),
    }
}

/// The defining equation of a sinc, raised cosine, delay or chirp, with its parameters substituted.
pub fn catalog_equation(e: &SignalExpr) -> Result<OdeSystem> {
    if e.classify() != SignalClass::OdeDefined {
        return Err(Error::Unsupported(format!("{e} has no catalog equation")));
    }
    let (scale, atom) = e.split_scale();
    let s2_plus = |w: &Real| CPoly::new(vec![re(w * w), Scalar::zero(), Scalar::one()]);
    match atom {
        SignalExpr::Sinc(w) => {
            // dσ/ds + ω/(s²+ω²) = 0
            let rhs = RatFunc::new(CPoly::constant(-(scale * re(w.clone()))), s2_plus(w))?;
            OdeSystem::new(WeylOp::d(), rhs)
        }
        SignalExpr::RaisedCos(w) => {
            // (d²/ds² + 1) ϱ = s/(s²+ω²)
            let op = WeylOp::new(vec![RatFunc::one(), RatFunc::zero(), RatFunc::one()]);
            let rhs = RatFunc::new(CPoly::monomial(scale, 1), s2_plus(w))?;
            OdeSystem::new(op, rhs)
        }
        SignalExpr::Delay(l) => {
            // (d/ds + L) ϱ = 0
            let op = WeylOp::new(vec![RatFunc::constant(re(l.clone())), RatFunc::one()]);
            OdeSystem::new(op, RatFunc::zero())
        }
        SignalExpr::Chirp { a, b, c } => {
            // [s + (2a d/ds − b) i] ε = e^{ic}
            let i = imag_unit();
            let r0 = CPoly::new(vec![-(i.clone() * re(b.clone())), Scalar::one()]);
            let r1 = i * re(a.clone()) * cint(2);
            let op = WeylOp::new(vec![RatFunc::from_poly(r0), RatFunc::constant(r1)]);
            OdeSystem::new(op, RatFunc::constant(scale * unit_phase(c)))
        }
        _ => unreachable!("classified as ODE-defined"),
    }
}

fn pole_order(r: &RatFunc, p: &Pole) -> u32 {
    if r.is_zero() {
        0
    } else {
        multiplicity_at(r.den(), p)
    }
}

/// Finite singular points of `L x = ϖ`, with their Fuchs classification.
pub fn finite_singularities(sys: &OdeSystem) -> Result<Vec<SingularPoint>> {
    let n = sys.order();
    let lead = sys.op.coeff(n);
    let normalized: Vec<RatFunc> = (0..n).map(|k| sys.op.coeff(k).div(&lead)).collect::<Result<_>>()?;
    let forcing = sys.rhs.div(&lead)?;

    let mut candidates = lead.num().clone();
    for q in normalized.iter().chain(std::iter::once(&forcing)) {
        candidates = &candidates * q.den();
    }
    let mut out = Vec::new();
    for p in roots(&square_free_part(&candidates))? {
        let orders: Vec<u32> = normalized.iter().map(|q| pole_order(q, &p)).collect();
        let forcing_order = pole_order(&forcing, &p);
        let ordinary_op = orders.iter().all(|&o| o == 0);
        if ordinary_op && forcing_order == 0 {
            continue;
        }
        let regular = orders.iter().enumerate().all(|(k, &o)| o as usize <= n - k);
        let refinement = if sys.is_quadrature() {
            match forcing_order {
                1 => Refinement::Logarithmic,
                m => Refinement::Pole(m - 1),
            }
        } else {
            Refinement::Unclassified
        };
        out.push(SingularPoint {
            location: Location::Finite(p.to_c64()),
            kind: if regular { FuchsKind::Regular } else { FuchsKind::Irregular },
            refinement,
            // a pole of the forcing at an ordinary point of L forces a singular solution
            status: if ordinary_op { Status::Confirmed } else { Status::Candidate },
            rank: if regular { None } else { Some(rank(orders.iter().map(|&o| o as i64), n)) },
        });
    }
    Ok(out)
}

fn rank(orders: impl Iterator<Item = i64>, n: usize) -> Ratio<i64> {
    orders.enumerate().map(|(k, o)| Ratio::new(o.max(0), (n - k) as i64)).max().unwrap_or_else(Ratio::zero)
        - Ratio::one()
}

/// Behaviour at `s = ∞`, through `s = 1/z`. `None` when `z = 0` is an ordinary point.
pub fn singularity_at_infinity(sys: &OdeSystem) -> Result<Option<SingularPoint>> {
    let op = sys.op.at_reciprocal();
    let n = op.order();
    let lead = op.coeff(n);
    let at_zero = |r: &RatFunc| if r.is_zero() { 0 } else { r.order_at_zero().max(0) };
    let orders: Vec<i64> = (0..n).map(|k| op.coeff(k).div(&lead).map(|q| at_zero(&q))).collect::<Result<_>>()?;
    let forcing = sys.rhs.at_reciprocal().div(&lead)?;
    let lead_vanishes = lead.order_at_zero() < 0;
    if !lead_vanishes && orders.iter().all(|&o| o == 0) && at_zero(&forcing) == 0 {
        return Ok(None);
    }
    let regular = orders.iter().enumerate().all(|(k, &o)| o <= (n - k) as i64);
    Ok(Some(SingularPoint {
        location: Location::Infinity,
        kind: if regular { FuchsKind::Regular } else { FuchsKind::Irregular },
        refinement: Refinement::Unclassified,
        status: Status::Candidate,
        rank: if regular { None } else { Some(rank(orders.into_iter(), n)) },
    }))
}

/// An irregular point at infinity of Poincaré rank above one, the signature
/// of a solution oscillating faster and faster as `t → ∞`.
pub fn is_oscillatory_infinity(p: &SingularPoint) -> bool {
    p.kind == FuchsKind::Irregular && p.rank.is_some_and(|r| r > Ratio::one())
}

/// Spectrum of the solution of `L x = ϖ`.
pub fn spectrum_of_ode(sys: &OdeSystem) -> Result<Spectrum> {
    let finite = finite_singularities(sys)?;
    let infinity = singularity_at_infinity(sys)?;
    Ok(spectrum_from_points(&finite, infinity.as_ref()))
}

pub(crate) fn spectrum_from_points(finite: &[SingularPoint], infinity: Option<&SingularPoint>) -> Spectrum {
    let sources = finite
        .iter()
        .filter_map(|p| match p.location {
            Location::Finite(z) => Some(SpectrumSource {
                location: z,
                kind: match p.refinement {
                    Refinement::Logarithmic => SourceKind::Logarithmic,
                    Refinement::Pole(m) => SourceKind::Pole(m),
                    Refinement::Unclassified => SourceKind::None,
                },
            }),
            Location::Infinity => None,
        })
        .collect();
    Spectrum::from_sources(sources, infinity.is_some_and(is_oscillatory_infinity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::sigexpr::parse;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(CPoly::from_ints(num), CPoly::from_ints(den)).unwrap()
    }

    #[test]
    fn weyl_relation() {
        let s = WeylOp::multiplication(RatFunc::s());
        let comm = WeylOp::d().mul_ops(&s).sub(&s.mul_ops(&WeylOp::d()));
        assert_eq!(comm, WeylOp::identity());
    }

    #[test]
    fn product_order_adds() {
        let a = WeylOp::new(vec![rf(&[1], &[0, 1]), RatFunc::one(), rf(&[2], &[1])]);
        let b = WeylOp::new(vec![RatFunc::s(), rf(&[1], &[1, 1])]);
        assert_eq!(a.mul_ops(&b).order(), 3);
        assert_ne!(a.mul_ops(&b), b.mul_ops(&a));
    }

    #[test]
    fn apply_examples() {
        let inv_s = rf(&[1], &[0, 1]);
        assert_eq!(WeylOp::d().apply(&inv_s), rf(&[-1], &[0, 0, 1]));
        let op = WeylOp::new(vec![RatFunc::one(), RatFunc::zero(), RatFunc::one()]);
        let x = rf(&[0, 1], &[4, 0, 1]);
        assert_eq!(op.apply(&x), &x.alg_deriv().alg_deriv() + &x);
    }

    #[test]
    fn zero_order_systems_rejected() {
        assert_eq!(OdeSystem::new(WeylOp::identity(), RatFunc::one()), Err(Error::OperatorOrder));
        assert_eq!(OdeSystem::new(WeylOp::zero(), RatFunc::one()), Err(Error::OperatorOrder));
    }

    #[test]
    fn catalog_entries() {
        let sinc = catalog_equation(&parse("sinc(3)").unwrap()).unwrap();
        assert_eq!(sinc.op(), &WeylOp::d());
        assert_eq!(sinc.rhs(), &rf(&[-3], &[9, 0, 1]));

        let delay = catalog_equation(&parse("delay(0.5)").unwrap()).unwrap();
        assert_eq!(delay.op().coeffs(), &[RatFunc::constant(re(crate::scalar::ratio(1, 2))), RatFunc::one()]);
        assert!(delay.rhs().is_zero());

        let chirp = catalog_equation(&parse("chirp(1, 2, 0)").unwrap()).unwrap();
        let two_i = Scalar::new(int(0), int(2));
        let r0 = CPoly::new(vec![-two_i.clone(), Scalar::one()]);
        assert_eq!(chirp.op().coeffs(), &[RatFunc::from_poly(r0), RatFunc::constant(two_i)]);
        assert_eq!(chirp.rhs(), &RatFunc::one());

        assert!(catalog_equation(&parse("sin(t)").unwrap()).is_err());
    }

    #[test]
    fn sinc_has_two_logarithmic_points() {
        let sys = catalog_equation(&parse("sinc(3)").unwrap()).unwrap();
        let pts = finite_singularities(&sys).unwrap();
        assert_eq!(pts.len(), 2);
        for (p, im) in pts.iter().zip([-3.0, 3.0]) {
            assert_eq!(p.location, Location::Finite(Complex64::new(0.0, im)));
            assert_eq!(p.kind, FuchsKind::Regular);
            assert_eq!(p.refinement, Refinement::Logarithmic);
            assert_eq!(p.status, Status::Confirmed);
        }
        let inf = singularity_at_infinity(&sys).unwrap().unwrap();
        assert_eq!(inf.kind, FuchsKind::Regular);
        let sp = spectrum_of_ode(&sys).unwrap();
        assert_eq!(sp.frequencies, vec![-3.0, 3.0]);
        assert!(!sp.infinite_singularity);
    }

    #[test]
    fn raised_cosine_points_come_from_the_forcing() {
        let sys = catalog_equation(&parse("rcos(2)").unwrap()).unwrap();
        let pts = finite_singularities(&sys).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|p| p.kind == FuchsKind::Regular && p.refinement == Refinement::Unclassified));
        assert_eq!(spectrum_of_ode(&sys).unwrap().frequencies, vec![-2.0, 2.0]);
    }

    #[test]
    fn delay_has_no_finite_points_and_rank_one_infinity() {
        for l in ["delay(2)", "delay(-0.75)"] {
            let sys = catalog_equation(&parse(l).unwrap()).unwrap();
            assert!(finite_singularities(&sys).unwrap().is_empty());
            let inf = singularity_at_infinity(&sys).unwrap().unwrap();
            assert_eq!(inf.kind, FuchsKind::Irregular);
            assert_eq!(inf.rank, Some(Ratio::one()));
            let sp = spectrum_of_ode(&sys).unwrap();
            assert!(sp.is_empty() && !sp.infinite_singularity);
        }
    }

    #[test]
    fn chirp_is_irregular_at_infinity() {
        let sys = catalog_equation(&parse("chirp(1, 0, 0)").unwrap()).unwrap();
        assert!(finite_singularities(&sys).unwrap().is_empty());
        let inf = singularity_at_infinity(&sys).unwrap().unwrap();
        assert_eq!(inf.kind, FuchsKind::Irregular);
        assert_eq!(inf.rank, Some(Ratio::from_integer(2)));
        let sp = spectrum_of_ode(&catalog_equation(&parse("chirp(1, 2, 3)").unwrap()).unwrap()).unwrap();
        assert!(sp.is_empty());
        assert!(sp.infinite_singularity);
    }

    #[test]
    fn quadrature_with_double_pole() {
        // x' = 1/(s-1)^2 : a simple pole in the solution
        let sys = OdeSystem::new(WeylOp::d(), rf(&[1], &[1, -2, 1])).unwrap();
        let pts = finite_singularities(&sys).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].refinement, Refinement::Pole(1));
        assert!(spectrum_of_ode(&sys).unwrap().is_empty());
    }

    #[test]
    fn irregular_finite_point() {
        // s^2 x' + x = 0 is irregular at 0
        let sys = OdeSystem::new(WeylOp::new(vec![RatFunc::one(), rf(&[0, 0, 1], &[1])]), RatFunc::zero()).unwrap();
        let pts = finite_singularities(&sys).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].kind, FuchsKind::Irregular);
        assert_eq!(pts[0].status, Status::Candidate);
    }
}
