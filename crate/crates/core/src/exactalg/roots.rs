//! Rational roots of rational polynomials by p-adic lifting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Rational;
use super::poly::{poly_gcd, Poly};
use super::AlgError;

fn eval_int(g: &[BigInt], y: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
}

fn eval_mod(g: &[BigInt], y: u64, m: u64) -> u64 {
    let mut acc: u64 = 0;
    for c in g.iter().rev() {
        let cm = c.mod_floor(&BigInt::from(m));
        let cm: u64 = cm.try_into().unwrap_or(0);
        acc = ((acc as u128 * y as u128 + cm as u128) % m as u128) as u64;
    }
    acc
}

fn primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|n| (3..).step_by(2).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(m));
    let x = e.x.mod_floor(&BigInt::from(m));
    x.try_into().unwrap()
}

/// Integer roots of a monic integer polynomial with nonzero constant term, assumed squarefree.
fn integer_roots_monic(g: &[BigInt]) -> Vec<BigInt> {
    let bound = g.iter().map(|c| c.abs()).max().unwrap_or_default() + 1u32;
    let dg: Vec<BigInt> = g.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
    for l in primes() {
        let roots: Vec<u64> = (0..l).filter(|&r| eval_mod(g, r, l) == 0).collect();
        if roots.iter().any(|&r| eval_mod(&dg, r, l) == 0) {
            continue;
        }
        let lb = BigInt::from(l);
        let mut out = Vec::new();
        for r0 in roots {
            let inv = BigInt::from(inv_mod(eval_mod(&dg, r0, l), l));
            let mut r = BigInt::from(r0);
            let mut m = lb.clone();
            while m <= &bound * 2u32 {
                let q = eval_int(g, &r) / &m;
                let t = (-(q * &inv)).mod_floor(&lb);
                r += t * &m;
                m *= &lb;
            }
            if &r * 2u32 > m {
                r -= &m;
            }
            if eval_int(g, &r).is_zero() {
                out.push(r);
            }
        }
        return out;
    }
    unreachable!()
}

/// Distinct rational roots, ascending. Coefficients must be rational.
pub fn rational_roots(p: &Poly) -> Result<Vec<Rational>, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroPolynomial);
    }
    let coeffs: Vec<Rational> = p
        .coeffs()
        .iter()
        .map(|c| c.as_rational().cloned().ok_or(AlgError::MixedField))
        .collect::<Result<_, _>>()?;
    let q = Poly::from_rationals(&coeffs);
    let sq = q.div_exact(&poly_gcd(&q, &q.derivative())?)?;
    let mut c: Vec<Rational> = sq.coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let mut out = Vec::new();
    if c.first().is_some_and(|c0| c0.is_zero()) {
        out.push(Rational::zero());
        c.remove(0);
    }
    let n = c.len() - 1;
    if n > 0 {
        let lcm = c.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = c.iter().map(|r| (r * Rational::from(lcm.clone())).to_integer()).collect();
        let lead = ints[n].clone();
        // y = lead * x turns the polynomial monic with integer coefficients
        let mut g: Vec<BigInt> = (0..n).map(|i| &ints[i] * num_traits::pow(lead.clone(), n - 1 - i)).collect();
        g.push(BigInt::one());
        for y in integer_roots_monic(&g) {
            out.push(Rational::new(y, lead.clone()));
        }
    }
    out.sort();
    Ok(out)
}
