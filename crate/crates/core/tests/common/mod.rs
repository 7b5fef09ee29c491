#![allow(dead_code)]

use algspec::opcalc::{ExpPoly, ExpTerm};
use algspec::ratfield::{CPoly, RatFunc};
use algspec::scalar::{int, ratio, Scalar};
use algspec::weylode::WeylOp;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

const DENOMS: [i64; 6] = [1, 2, 3, 4, 5, 8];

pub fn rational<R: Rng>(rng: &mut R, max_num: i64) -> algspec::scalar::Real {
    ratio(rng.gen_range(-max_num..=max_num), *DENOMS.choose(rng).unwrap())
}

pub fn gaussian<R: Rng>(rng: &mut R, max_num: i64) -> Scalar {
    Scalar::new(rational(rng, max_num), rational(rng, max_num))
}

pub fn nonzero_gaussian<R: Rng>(rng: &mut R, max_num: i64) -> Scalar {
    loop {
        let z = gaussian(rng, max_num);
        if !z.is_zero() {
            return z;
        }
    }
}

/// Polynomial of exact degree `deg`.
pub fn poly<R: Rng>(rng: &mut R, deg: usize, max_num: i64) -> CPoly {
    let mut c: Vec<Scalar> = (0..deg).map(|_| gaussian(rng, max_num)).collect();
    c.push(nonzero_gaussian(rng, max_num));
    CPoly::new(c)
}

pub fn real_poly<R: Rng>(rng: &mut R, deg: usize, max_num: i64) -> CPoly {
    let mut c: Vec<Scalar> = (0..deg).map(|_| Scalar::new(rational(rng, max_num), int(0))).collect();
    let lead = loop {
        let r = rational(rng, max_num);
        if !r.is_zero() {
            break r;
        }
    };
    c.push(Scalar::new(lead, int(0)));
    CPoly::new(c)
}

/// Canonical exponential polynomial with at most `max_rates` distinct exact rates and degree ≤ `max_deg`.
pub fn exppoly<R: Rng>(rng: &mut R, max_rates: usize, max_deg: usize) -> ExpPoly {
    loop {
        let n = rng.gen_range(1..=max_rates);
        let terms = (0..n)
            .map(|_| {
                let deg = rng.gen_range(0..=max_deg);
                ExpTerm { rate: gaussian(rng, 12), poly: poly(rng, deg, 9) }
            })
            .collect();
        let x = ExpPoly::new(terms);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random element of ℂ(s) with small degrees.
pub fn ratfunc<R: Rng>(rng: &mut R, max_deg: usize) -> RatFunc {
    let (dn, dd) = (rng.gen_range(0..=max_deg), rng.gen_range(0..=max_deg));
    let num = if rng.gen_bool(0.1) { CPoly::zero() } else { poly(rng, dn, 6) };
    let den = poly(rng, dd, 6);
    RatFunc::new(num, den).unwrap()
}

pub fn weyl_op<R: Rng>(rng: &mut R, max_order: usize) -> WeylOp {
    WeylOp::new((0..=rng.gen_range(0..=max_order)).map(|_| ratfunc(rng, 2)).collect())
}
