use num_complex::Complex64;
use num_traits::{FromPrimitive, Num, Zero};

use super::poly::{taylor_shift, CPoly};
use super::ratfunc::RatFunc;
use super::roots::{roots, Pole};
use crate::error::Result;
use crate::scalar::{binomial, from_c64, to_c64, Scalar};

/// One term `coefficient / (s - pole)^order`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFraction {
    pub pole: Scalar,
    pub order: u32,
    pub coefficient: Scalar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartialFractions {
    pub polynomial_part: CPoly,
    pub terms: Vec<PartialFraction>,
    /// All poles were found exactly, so every coefficient is exact.
    pub exact: bool,
}

impl PartialFractions {
    pub fn reconstruct(&self) -> RatFunc {
        assemble(&self.polynomial_part, &self.terms)
    }
}

/// Partial fraction decomposition over ℂ.
pub fn partial_fractions(r: &RatFunc) -> Result<PartialFractions> {
    let (polynomial_part, rem) = r.num().div_rem(r.den());
    if rem.is_zero() {
        return Ok(PartialFractions { polynomial_part, terms: Vec::new(), exact: true });
    }
    let poles = roots(r.den())?;
    let exact = poles.iter().all(|p| p.exact);
    let terms = if exact {
        let ps: Vec<(Scalar, u32)> = poles.iter().map(|p| (p.location.clone(), p.multiplicity)).collect();
        expand(rem.coeffs(), &ps, &poles)
    } else {
        let ps: Vec<(Complex64, u32)> = poles.iter().map(|p| (p.to_c64(), p.multiplicity)).collect();
        let coeffs = rem.to_c64();
        expand(&coeffs, &ps, &poles).into_iter().map(|(pole, order, c)| (pole, order, from_c64(c))).collect()
    };
    let terms = terms
        .into_iter()
        .filter(|(_, _, c)| !c.is_zero())
        .map(|(pole, order, coefficient)| PartialFraction { pole, order, coefficient })
        .collect();
    Ok(PartialFractions { polynomial_part, terms, exact })
}

/// Taylor expansion of `rem / Π_{q≠p}(s-q)^m_q` at each pole `p`.
fn expand<T>(rem: &[T], poles: &[(T, u32)], meta: &[Pole]) -> Vec<(Scalar, u32, T)>
where
    T: Clone + Num + FromPrimitive,
{
    let mut out = Vec::new();
    for (j, (p, m)) in poles.iter().enumerate() {
        let m = *m as usize;
        let mut series = taylor_shift(rem, p, m);
        for (k, (q, mk)) in poles.iter().enumerate() {
            if k == j {
                continue;
            }
            let d = p.clone() - q.clone();
            let inv_d = T::one() / d;
            let mut base = T::one();
            for _ in 0..*mk {
                base = base * inv_d.clone();
            }
            // (d + h)^(-mk) = Σ (-1)^i C(mk+i-1, i) d^(-mk-i) h^i
            let mut factor = Vec::with_capacity(m);
            for i in 0..m {
                let c = binomial(*mk + i as u32 - 1, i as u32);
                let c = T::from_u64(u64::try_from(c).unwrap_or(u64::MAX)).unwrap();
                let term = c * base.clone();
                factor.push(if i % 2 == 1 { T::zero() - term } else { term });
                base = base * inv_d.clone();
            }
            series = truncated_product(&series, &factor, m);
        }
        for (i, c) in series.into_iter().enumerate() {
            out.push((meta[j].location.clone(), (m - i) as u32, c));
        }
    }
    out
}

fn truncated_product<T: Clone + Num>(a: &[T], b: &[T], len: usize) -> Vec<T> {
    (0..len).map(|n| (0..=n).fold(T::zero(), |acc, i| acc + a[i].clone() * b[n - i].clone())).collect()
}

/// `poly + Σ c/(s-p)^k` over a common denominator.
///
/// The result is reduced whenever the highest-order coefficient at each
/// distinct pole is nonzero, which holds after dropping zero terms.
pub fn assemble(polynomial_part: &CPoly, terms: &[PartialFraction]) -> RatFunc {
    let mut groups: Vec<(Scalar, u32, Vec<&PartialFraction>)> = Vec::new();
    for t in terms.iter().filter(|t| !t.coefficient.is_zero()) {
        match groups.iter_mut().find(|g| g.0 == t.pole) {
            Some(g) => {
                g.1 = g.1.max(t.order);
                g.2.push(t);
            }
            None => groups.push((t.pole.clone(), t.order, vec![t])),
        }
    }
    let factors: Vec<CPoly> = groups.iter().map(|(p, m, _)| CPoly::linear(p).pow(*m)).collect();
    let den = factors.iter().fold(CPoly::one(), |acc, f| &acc * f);
    let mut num = polynomial_part * &den;
    for (j, (p, m, ts)) in groups.iter().enumerate() {
        let lin = CPoly::linear(p);
        let local = ts.iter().fold(CPoly::zero(), |acc, t| &acc + &lin.pow(m - t.order).scale(&t.coefficient));
        let others = factors.iter().enumerate().filter(|&(k, _)| k != j).fold(CPoly::one(), |acc, (_, f)| &acc * f);
        num = &num + &(&local * &others);
    }
    RatFunc::from_reduced(num, den)
}

/// Float view of a decomposition, for reporting.
pub fn terms_c64(pf: &PartialFractions) -> Vec<(Complex64, u32, Complex64)> {
    pf.terms.iter().map(|t| (to_c64(&t.pole), t.order, to_c64(&t.coefficient))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cint;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(CPoly::from_ints(num), CPoly::from_ints(den)).unwrap()
    }

    #[test]
    fn two_simple_poles() {
        // 2s/(s^2-1) = 1/(s-1) + 1/(s+1)
        let pf = partial_fractions(&rf(&[0, 2], &[-1, 0, 1])).unwrap();
        assert!(pf.exact);
        assert!(pf.polynomial_part.is_zero());
        assert_eq!(
            pf.terms,
            vec![
                PartialFraction { pole: cint(-1), order: 1, coefficient: cint(1) },
                PartialFraction { pole: cint(1), order: 1, coefficient: cint(1) },
            ]
        );
    }

    #[test]
    fn double_pole() {
        // 1/(s-3)^2
        let pf = partial_fractions(&rf(&[1], &[9, -6, 1])).unwrap();
        assert_eq!(pf.terms, vec![PartialFraction { pole: cint(3), order: 2, coefficient: cint(1) }]);
    }

    #[test]
    fn mixed_orders_multiply_back() {
        // (s+1)/((s-2)^2 (s+3))
        let den = &CPoly::from_ints(&[-2, 1]).pow(2) * &CPoly::from_ints(&[3, 1]);
        let r = RatFunc::new(CPoly::from_ints(&[1, 1]), den).unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert_eq!(pf.reconstruct(), r);
        assert_eq!(pf.terms.len(), 3);
    }

    #[test]
    fn irrational_poles_reconstruct_within_tolerance() {
        let r = rf(&[1, 2, 3], &[-2, 0, 0, 1, 1]);
        let pf = partial_fractions(&r).unwrap();
        assert!(!pf.exact);
        assert!(pf.reconstruct().distance(&r) <= 1e-9);
    }

    #[test]
    fn polynomial_part_is_split_off() {
        // (s^2 + 1)/(s - 1) = s + 1 + 2/(s-1)
        let pf = partial_fractions(&rf(&[1, 0, 1], &[-1, 1])).unwrap();
        assert_eq!(pf.polynomial_part, CPoly::from_ints(&[1, 1]));
        assert_eq!(pf.terms, vec![PartialFraction { pole: cint(1), order: 1, coefficient: cint(2) }]);
    }
}
