//! Coprimality screening modulo a prime `p ≡ 1 (mod 4)`, where `i` has an
//! image in `F_p`. A degree-0 gcd modulo `p` with both leading
//! coefficients surviving proves coprimality over `Q(i)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::poly::CPoly;
use crate::scalar::{Real, Scalar};

const P: u64 = 998_244_353;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow_mod(a, P - 2)
}

fn int_mod(n: &BigInt) -> u64 {
    let r = n % BigInt::from(P);
    let r = r.to_i64().expect("residue fits");
    r.rem_euclid(P as i64) as u64
}

fn real_mod(x: &Real) -> Option<u64> {
    let d = int_mod(x.denom());
    if d == 0 {
        return None;
    }
    Some(int_mod(x.numer()) * inv(d) % P)
}

fn scalar_mod(z: &Scalar, iota: u64) -> Option<u64> {
    Some((real_mod(&z.re)? + iota * real_mod(&z.im)?) % P)
}

fn reduce(p: &CPoly, iota: u64) -> Option<Vec<u64>> {
    let v: Vec<u64> = p.coeffs().iter().map(|c| scalar_mod(c, iota)).collect::<Option<_>>()?;
    (v.last().copied() != Some(0)).then_some(v)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lb = inv(*b.last().unwrap());
        while a.len() >= b.len() {
            let q = a.last().unwrap() * lb % P;
            let shift = a.len() - b.len();
            for (j, bc) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + P - q * bc % P) % P;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// `true` only when `a` and `b` are certainly coprime.
pub(crate) fn certainly_coprime(a: &CPoly, b: &CPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let iota = pow_mod(3, (P - 1) / 4);
    match (reduce(a, iota), reduce(b, iota)) {
        (Some(x), Some(y)) => gcd_degree(x, y) == 0,
        _ => false,
    }
}
