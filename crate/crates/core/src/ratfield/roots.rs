//! Roots of exact polynomials.
//!
//! Multiplicities come from an exact square-free decomposition (Yun's
//! algorithm). Each square-free factor is then solved in floating point by
//! Aberth–Ehrlich simultaneous iteration, polished with Newton steps. Each
//! root is then rounded to a Gaussian rational by continued fractions and
//! kept exactly when it satisfies the polynomial exactly; exact roots are
//! divided out before the remaining ones are refined.

use std::cmp::Ordering;

use num_complex::Complex64;
use num_traits::Zero;

use super::poly::CPoly;
use crate::error::{Error, Result};
use crate::scalar::{from_c64, ratio, to_c64, Real, Scalar};

const MAX_ITERATIONS: u32 = 500;
const RESIDUAL_TOL: f64 = 1e-12;
const SNAP_TOL: f64 = 1e-6;
const MAX_SNAP_DENOMINATOR: i64 = 10_000;

/// A root (or pole) location with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    pub location: Scalar,
    pub multiplicity: u32,
    /// The location is an exact root, not a float approximation.
    pub exact: bool,
}

impl Pole {
    pub fn to_c64(&self) -> Complex64 {
        to_c64(&self.location)
    }
}

/// `p = c · Π fᵢ^i` with monic, square-free, pairwise coprime `fᵢ`.
pub fn square_free_decomposition(p: &CPoly) -> Vec<(CPoly, u32)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let p = p.monic();
    let d = p.derivative();
    let a0 = p.gcd(&d);
    let mut b = p.exact_div(&a0);
    let c = d.exact_div(&a0);
    let mut dd = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&dd);
        b = b.exact_div(&a);
        let c = dd.exact_div(&a);
        dd = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Monic square-free part.
pub fn square_free_part(p: &CPoly) -> CPoly {
    square_free_decomposition(p).iter().fold(CPoly::one(), |acc, (f, _)| &acc * f)
}

/// All roots of `p` with multiplicities, sorted by real then imaginary part.
pub fn roots(p: &CPoly) -> Result<Vec<Pole>> {
    let mut out = Vec::new();
    for (factor, mult) in square_free_decomposition(p) {
        for (location, exact) in square_free_roots(&factor)? {
            out.push(Pole { location, multiplicity: mult, exact });
        }
    }
    out.sort_by(|a, b| cmp_c64(a.to_c64(), b.to_c64()));
    Ok(out)
}

pub(crate) fn cmp_c64(a: Complex64, b: Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Roots of a square-free polynomial, each flagged exact or approximate.
///
/// Exact roots are divided out and the iteration restarts on the quotient,
/// which is better conditioned, until no further root snaps.
fn square_free_roots(f: &CPoly) -> Result<Vec<(Scalar, bool)>> {
    let mut exact: Vec<Scalar> = Vec::new();
    let mut rest = f.clone();
    while let Some(n) = rest.degree() {
        if n == 0 {
            break;
        }
        if rest.coeff(0).is_zero() {
            exact.push(Scalar::zero());
            rest = rest.exact_div(&CPoly::x());
            continue;
        }
        if n == 1 {
            exact.push(-rest.coeff(0) / rest.coeff(1));
            break;
        }
        let mut found = aberth(&rest.to_c64())?;
        if rest.has_real_coeffs() {
            enforce_conjugate_symmetry(&mut found);
        }
        let mut snapped: Vec<Scalar> = Vec::new();
        for &z in &found {
            if let Some(r) = snap(&rest, z) {
                if !snapped.contains(&r) {
                    snapped.push(r);
                }
            }
        }
        if snapped.is_empty() {
            let mut out: Vec<(Scalar, bool)> = exact.into_iter().map(|r| (r, true)).collect();
            out.extend(found.into_iter().map(|z| (from_c64(z), false)));
            return Ok(out);
        }
        let divisor = snapped.iter().fold(CPoly::one(), |acc, r| &acc * &CPoly::linear(r));
        rest = rest.exact_div(&divisor);
        exact.extend(snapped);
    }
    Ok(exact.into_iter().map(|r| (r, true)).collect())
}

/// Small-denominator Gaussian rational near `z` that is an exact root of `f`.
fn snap(f: &CPoly, z: Complex64) -> Option<Scalar> {
    let tol = SNAP_TOL * (1.0 + z.norm());
    let (res, ims) = (convergents(z.re, tol), convergents(z.im, tol));
    res.iter().flat_map(|a| ims.iter().map(move |b| Scalar::new(a.clone(), b.clone()))).find(|c| f.eval(c).is_zero())
}

/// Continued-fraction convergents of `x` within `tol` with denominator at most
/// `MAX_SNAP_DENOMINATOR`, coarsest first.
fn convergents(x: f64, tol: f64) -> Vec<Real> {
    let mut out = Vec::new();
    if !(x.abs() < 1e12) {
        return out;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        let ai = a as i64;
        let next =
            ai.checked_mul(h1).and_then(|v| v.checked_add(h0)).zip(ai.checked_mul(k1).and_then(|v| v.checked_add(k0)));
        let Some((h2, k2)) = next else {
            break;
        };
        if k2 > MAX_SNAP_DENOMINATOR {
            break;
        }
        if (h2 as f64 / k2 as f64 - x).abs() <= tol {
            out.push(ratio(h2, k2));
        }
        let frac = y - a;
        if frac == 0.0 {
            break;
        }
        y = 1.0 / frac;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    out
}

/// Roots of a real polynomial come in conjugate pairs; remove the float asymmetry.
fn enforce_conjugate_symmetry(roots: &mut [Complex64]) {
    let tol = |z: Complex64| 1e-9 * (1.0 + z.norm());
    let n = roots.len();
    let mut paired = vec![false; n];
    for i in 0..n {
        if paired[i] || roots[i].im <= tol(roots[i]) {
            continue;
        }
        let target = roots[i].conj();
        let partner = (0..n)
            .filter(|&j| j != i && !paired[j] && roots[j].im < 0.0)
            .min_by(|&a, &b| (roots[a] - target).norm().total_cmp(&(roots[b] - target).norm()));
        if let Some(j) = partner {
            let mid = (roots[i] + roots[j].conj()) * 0.5;
            roots[i] = mid;
            roots[j] = mid.conj();
            paired[i] = true;
            paired[j] = true;
        }
    }
    for (z, p) in roots.iter_mut().zip(paired) {
        if !p && z.im.abs() <= tol(*z) {
            z.im = 0.0;
        }
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn magnitude_bound(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Aberth–Ehrlich iteration on float coefficients (ascending degree).
pub fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let center = -monic[n - 1] / n as f64;
    let spread = horner(&monic, center).0.norm().powf(1.0 / n as f64);
    let cauchy = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = if spread.is_finite() && spread > 1e-12 { spread } else { cauchy.min(1.0) };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.7;
            center + Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner(&monic, z[k]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[k] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }

    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *zk);
            if p.is_zero() || dp.is_zero() {
                break;
            }
            let next = *zk - p / dp;
            if horner(&monic, next).0.norm() < p.norm() {
                *zk = next;
            } else {
                break;
            }
        }
    }

    let ok = z.iter().all(|&zk| horner(&monic, zk).0.norm() <= RESIDUAL_TOL * magnitude_bound(&monic, zk));
    if !ok {
        return Err(Error::RootNonConvergence { degree: n, iterations: MAX_ITERATIONS });
    }
    Ok(z)
}

/// Multiplicity of `root` as a zero of `p`.
pub fn multiplicity_at(p: &CPoly, root: &Pole) -> u32 {
    if p.is_zero() {
        return u32::MAX;
    }
    if root.exact {
        let mut q = p.clone();
        let mut m = 0;
        while !q.is_zero() && q.eval(&root.location).is_zero() {
            q = q.derivative();
            m += 1;
        }
        return m;
    }
    let z = root.to_c64();
    for (f, i) in square_free_decomposition(p) {
        let c = f.to_c64();
        let resid = horner(&c, z).0.norm();
        if resid <= 1e-8 * magnitude_bound(&c, z) {
            return i;
        }
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cint;

    #[test]
    fn yun_recovers_multiplicities() {
        // (s-1)^3 (s+2)
        let p = &CPoly::from_ints(&[-1, 1]).pow(3) * &CPoly::from_ints(&[2, 1]);
        let sf = square_free_decomposition(&p);
        assert_eq!(sf, vec![(CPoly::from_ints(&[2, 1]), 1), (CPoly::from_ints(&[-1, 1]), 3)]);
    }

    #[test]
    fn pure_imaginary_pair() {
        let r = roots(&CPoly::from_ints(&[9, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|p| p.exact && p.multiplicity == 1));
        assert_eq!(r[0].location, Scalar::new(cint(0).re, cint(-3).re));
        assert_eq!(r[1].location, Scalar::new(cint(0).re, cint(3).re));
    }

    #[test]
    fn triple_real_root() {
        let r = roots(&CPoly::from_ints(&[-2, 1]).pow(3)).unwrap();
        assert_eq!(r, vec![Pole { location: cint(2), multiplicity: 3, exact: true }]);
    }

    #[test]
    fn residuals_of_irrational_roots() {
        // (s^2 - 2)(s^2 + s + 7): roots ±√2 and (-1 ± i√27)/2
        let p = &CPoly::from_ints(&[-2, 0, 1]) * &CPoly::from_ints(&[7, 1, 1]);
        let r = roots(&p).unwrap();
        assert_eq!(r.len(), 4);
        for pole in &r {
            let z = pole.to_c64();
            assert!(p.eval_c64(z).norm() <= 1e-10, "{z}");
        }
        let conj_pairs = r.iter().filter(|p| p.to_c64().im != 0.0).count();
        assert_eq!(conj_pairs, 2);
        assert_eq!(r[1].to_c64().im, -r[2].to_c64().im);
    }

    #[test]
    fn multiplicity_queries() {
        let p = &CPoly::from_ints(&[-1, 1]).pow(2) * &CPoly::from_ints(&[-2, 0, 1]);
        let one = Pole { location: cint(1), multiplicity: 0, exact: true };
        assert_eq!(multiplicity_at(&p, &one), 2);
        let sqrt2 = Pole { location: from_c64(Complex64::new(2f64.sqrt(), 0.0)), multiplicity: 0, exact: false };
        assert_eq!(multiplicity_at(&p, &sqrt2), 1);
        let three = Pole { location: cint(3), multiplicity: 0, exact: true };
        assert_eq!(multiplicity_at(&p, &three), 0);
    }
}
