//! Low-degree covering solver: undetermined monic factors per fiber, one polynomial identity,
//! a lex Groebner basis and rational back-substitution.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::groebner::{groebner_basis, is_unit_ideal, is_zero_dimensional, MPoly, MonomialOrder};
use super::{measured_fibers, BelyiError};
use crate::exactalg::{poly_gcd, rational_roots, AlgError, FieldElement, Poly, RatFun, Rational};
use crate::patterns::{defect_of, BranchingPattern};

pub const MAX_SOLVE_DEGREE: u32 = 6;

/// A point of the source line: one part of one fiber. Fiber `i` lies over 0, 1, infinity for
/// `i = 0, 1, 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pin {
    pub fiber: usize,
    pub part: u32,
}

/// Which fiber points are placed at x = 0, 1 and infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PinScheme {
    pub zero: Pin,
    pub one: Pin,
    pub infinity: Pin,
}

impl PinScheme {
    fn pins(&self) -> [Pin; 3] {
        [self.zero, self.one, self.infinity]
    }

    fn check(&self, parts: &[Vec<u32>; 3]) -> Result<(), BelyiError> {
        let mut left = part_counts(parts);
        for p in self.pins() {
            let slot = left.get_mut(&(p.fiber, p.part)).filter(|c| **c > 0);
            match slot {
                Some(c) => *c -= 1,
                None => return Err(BelyiError::InvalidPins(format!("no free point with part {} in fiber {}", p.part, p.fiber))),
            }
        }
        Ok(())
    }

    /// Pins on points that are alone with their part in their fiber.
    fn distinguished(&self, parts: &[Vec<u32>; 3]) -> usize {
        let counts = part_counts(parts);
        self.pins().iter().filter(|p| counts[&(p.fiber, p.part)] == 1).count()
    }

    /// All valid schemes, best first.
    pub fn candidates(pattern: &BranchingPattern) -> Vec<PinScheme> {
        let parts = pattern.partitions();
        let points: Vec<Pin> = part_counts(&parts).keys().map(|&(fiber, part)| Pin { fiber, part }).collect();
        let mut out = Vec::new();
        for &zero in &points {
            for &one in &points {
                for &infinity in &points {
                    let s = PinScheme { zero, one, infinity };
                    if s.check(&parts).is_ok() {
                        out.push(s);
                    }
                }
            }
        }
        let natural = |s: &PinScheme| s.pins().iter().enumerate().filter(|(i, p)| p.fiber == *i).count();
        out.sort_by_key(|s| {
            (std::cmp::Reverse(s.distinguished(&parts)), std::cmp::Reverse(natural(s)), std::cmp::Reverse(s.infinity.part))
        });
        out
    }
}

fn part_counts(parts: &[Vec<u32>; 3]) -> BTreeMap<(usize, u32), usize> {
    let mut m = BTreeMap::new();
    for (v, ps) in parts.iter().enumerate() {
        for &e in ps {
            *m.entry((v, e)).or_insert(0) += 1;
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub pins: Vec<PinScheme>,
    /// Pairwise inequivalent coverings with fiber `i` over `0, 1, inf`.
    pub maps: Vec<RatFun>,
    /// Rational points of the polynomial system before filtering.
    pub raw_solutions: usize,
    /// Whether degenerate components had to be removed.
    pub saturated: bool,
}

type UPoly = Vec<MPoly>;

fn upoly_mul(a: &UPoly, b: &UPoly) -> UPoly {
    let z = MPoly::zero(a[0].nvars(), a[0].order());
    let mut r = vec![z; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] = r[i + j].add(&x.mul(y));
        }
    }
    r
}

fn upoly_pow(a: &UPoly, e: u32) -> UPoly {
    let one = vec![MPoly::one(a[0].nvars(), a[0].order())];
    (0..e).fold(one, |acc, _| upoly_mul(&acc, a))
}

fn upoly_lin(a: &UPoly, ca: &MPoly, b: &UPoly, cb: &MPoly) -> UPoly {
    let n = a.len().max(b.len());
    let z = MPoly::zero(ca.nvars(), MonomialOrder::Lex);
    (0..n)
        .map(|i| a.get(i).unwrap_or(&z).mul(ca).add(&b.get(i).unwrap_or(&z).mul(cb)))
        .collect()
}

/// Sylvester resultant of two univariate polynomials with polynomial coefficients (Bareiss).
fn resultant(a: &UPoly, b: &UPoly) -> MPoly {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let nv = a[0].nvars();
    let z = MPoly::zero(nv, MonomialOrder::Lex);
    let mut mat = vec![vec![z.clone(); size]; size];
    for r in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    let mut sign = false;
    let mut prev = MPoly::one(nv, MonomialOrder::Lex);
    for k in 0..size {
        let Some(p) = (k..size).find(|&r| !mat[r][k].is_zero()) else {
            return z;
        };
        if p != k {
            mat.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = z.clone();
        }
        prev = mat[k][k].clone();
    }
    if sign {
        prev.neg()
    } else {
        prev
    }
}

struct System {
    nvars: usize,
    /// Variable holding the free scalar.
    scalar: usize,
    /// Per fiber: pinned exponents at x = 0 and x = 1, then unknown factors with multiplicity.
    factors: [Vec<(u32, UPoly)>; 3],
    zero_pin: [u32; 3],
    one_pin: [u32; 3],
    inf_fiber: usize,
    equations: Vec<MPoly>,
}

fn build(parts: &[Vec<u32>; 3], pins: &PinScheme, extra: usize) -> System {
    let d = parts[0].iter().sum::<u32>() as usize;
    let mut left = part_counts(parts);
    for p in pins.pins() {
        *left.get_mut(&(p.fiber, p.part)).unwrap() -= 1;
    }
    let unknowns: usize = left.values().sum();
    let nvars = extra + unknowns + 1;
    let lex = MonomialOrder::Lex;
    let one = MPoly::one(nvars, lex);
    let zero = MPoly::zero(nvars, lex);
    let mut next = extra;
    let mut factors: [Vec<(u32, UPoly)>; 3] = Default::default();
    for (&(v, m), &c) in &left {
        if c == 0 {
            continue;
        }
        let mut p: UPoly = (0..c).map(|k| MPoly::var(nvars, lex, next + k)).collect();
        p.push(one.clone());
        next += c;
        factors[v].push((m, p));
    }
    let scalar = next;
    let mut zero_pin = [0; 3];
    let mut one_pin = [0; 3];
    zero_pin[pins.zero.fiber] = pins.zero.part;
    one_pin[pins.one.fiber] = pins.one.part;
    let fiber_poly = |v: usize| -> UPoly {
        let x = vec![zero.clone(), one.clone()];
        let xm1 = vec![one.neg(), one.clone()];
        let mut f = upoly_mul(&upoly_pow(&x, zero_pin[v]), &upoly_pow(&xm1, one_pin[v]));
        for (m, p) in &factors[v] {
            f = upoly_mul(&f, &upoly_pow(p, *m));
        }
        f
    };
    let f: Vec<UPoly> = (0..3).map(fiber_poly).collect();
    let s = MPoly::var(nvars, lex, scalar);
    let (a, b) = match pins.infinity.fiber {
        2 => (s.clone(), s.clone()),
        0 => (s.clone(), one.neg()),
        _ => (one.clone(), s.clone()),
    };
    // a F0 - b F1 - Finf
    let lhs = upoly_lin(&f[0], &a, &f[1], &b.neg());
    let e = upoly_lin(&lhs, &one, &f[2], &one.neg());
    debug_assert!(e.get(d).is_none_or(MPoly::is_zero));
    let equations = e.into_iter().take(d).filter(|p| !p.is_zero()).collect();
    System { nvars, scalar, factors, zero_pin, one_pin, inf_fiber: pins.infinity.fiber, equations }
}

/// Polynomials that vanish on collisions of distinct points or a degenerate scalar.
fn degeneracy_factors(sys: &System) -> Vec<MPoly> {
    let lex = MonomialOrder::Lex;
    let nv = sys.nvars;
    let mut out = vec![MPoly::var(nv, lex, sys.scalar)];
    let all: Vec<&UPoly> = sys.factors.iter().flatten().map(|(_, p)| p).collect();
    for (i, p) in all.iter().enumerate() {
        if p.len() > 2 {
            let dp: UPoly = p.iter().enumerate().skip(1).map(|(k, c)| c.scale(&Rational::from_integer(k.into()))).collect();
            out.push(resultant(p, &dp));
        }
        for q in &all[i + 1..] {
            out.push(resultant(p, q));
        }
        let at = |r: &Rational| p.iter().rev().fold(MPoly::zero(nv, lex), |acc, c| acc.scale(r).add(c));
        if sys.zero_pin.iter().any(|&e| e > 0) {
            out.push(at(&Rational::zero()));
        }
        if sys.one_pin.iter().any(|&e| e > 0) {
            out.push(at(&Rational::one()));
        }
    }
    out.retain(|p| !p.is_constant());
    out
}

/// Rational points of a zero-dimensional lex basis, assigning the last variable first.
fn rational_points(basis: &[MPoly], nvars: usize) -> Vec<Vec<Rational>> {
    fn go(basis: &[MPoly], k: usize, point: &mut Vec<Option<Rational>>, out: &mut Vec<Vec<Rational>>) {
        if k == usize::MAX {
            out.push(point.iter().map(|v| v.clone().unwrap()).collect());
            return;
        }
        let mut g: Option<Poly> = None;
        for p in basis.iter().filter(|p| p.support().iter().all(|&j| j >= k)) {
            let mut q = p.clone();
            for (j, v) in point.iter().enumerate().skip(k + 1) {
                q = q.substitute(j, v.as_ref().unwrap());
            }
            if q.is_zero() {
                continue;
            }
            let u = q.to_univariate(k).unwrap();
            g = Some(match g {
                None => u,
                Some(h) => poly_gcd(&h, &u).unwrap(),
            });
        }
        let Some(g) = g else {
            return;
        };
        if g.is_constant() {
            return;
        }
        for r in rational_roots(&g).unwrap() {
            point[k] = Some(r);
            go(basis, k.checked_sub(1).unwrap_or(usize::MAX), point, out);
        }
        point[k] = None;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    let mut point = vec![None; nvars];
    go(basis, nvars - 1, &mut point, &mut out);
    out
}

fn eval_upoly(p: &UPoly, point: &[Rational]) -> Poly {
    Poly::from_rationals(&p.iter().map(|c| c.eval(point)).collect::<Vec<_>>())
}

fn map_at(sys: &System, point: &[Rational]) -> Option<RatFun> {
    let fiber = |v: usize| -> Poly {
        let mut f = Poly::from_ints(&[0, 1]).pow(sys.zero_pin[v]).mul(&Poly::from_ints(&[-1, 1]).pow(sys.one_pin[v]));
        for (m, p) in &sys.factors[v] {
            f = f.mul(&eval_upoly(p, point).pow(*m));
        }
        f
    };
    let s = point[sys.scalar].clone();
    let lead = if sys.inf_fiber == 1 { Rational::one() } else { s };
    if lead.is_zero() {
        return None;
    }
    let num = fiber(0).scale(&FieldElement::rational(lead));
    RatFun::new(num, fiber(2)).ok()
}

fn solve_points(sys: &System) -> Result<Option<Vec<Vec<Rational>>>, BelyiError> {
    let basis = groebner_basis(&sys.equations);
    if is_unit_ideal(&basis) {
        return Ok(Some(Vec::new()));
    }
    if !is_zero_dimensional(&basis) {
        return Ok(None);
    }
    Ok(Some(rational_points(&basis, sys.nvars)))
}

fn solve_scheme(pattern: &BranchingPattern, pins: &PinScheme) -> Result<(Vec<RatFun>, usize, bool), BelyiError> {
    let parts = pattern.partitions();
    let plain = build(&parts, pins, 0);
    let (sys, points, saturated) = match solve_points(&plain)? {
        Some(points) => (plain, points, false),
        None => {
            let h = degeneracy_factors(&plain);
            let mut sys = build(&parts, pins, h.len());
            let lifted = degeneracy_factors(&sys);
            for (t, hp) in lifted.iter().enumerate() {
                let tv = MPoly::var(sys.nvars, MonomialOrder::Lex, t);
                sys.equations.push(tv.mul(hp).sub(&MPoly::one(sys.nvars, MonomialOrder::Lex)));
            }
            let points = solve_points(&sys)?.ok_or(BelyiError::NoSolution)?;
            (sys, points, true)
        }
    };
    let raw = points.len();
    let maps = points
        .iter()
        .filter_map(|p| map_at(&sys, p))
        .filter(|f| measured_fibers(f).is_ok_and(|m| m == parts) && defect_of(&parts) == 0)
        .collect();
    Ok((maps, raw, saturated))
}

/// Whether `g = f o mu` for some Moebius transformation `mu` over the algebraic closure.
pub fn mobius_equivalent(f: &RatFun, g: &RatFun) -> Result<bool, BelyiError> {
    if f.degree() != g.degree() {
        return Ok(false);
    }
    let d = f.degree();
    let rat = |p: &Poly| -> Result<Vec<Rational>, BelyiError> {
        let mut v: Vec<Rational> = p
            .coeffs()
            .iter()
            .map(|c| c.as_rational().cloned().ok_or(BelyiError::Alg(AlgError::MixedField)))
            .collect::<Result<_, _>>()?;
        v.resize(d + 1, Rational::zero());
        Ok(v)
    };
    let (fnum, fden, gnum, gden) = (rat(f.num())?, rat(f.den())?, rat(g.num())?, rat(g.den())?);
    // variables: alpha, beta, gamma, delta, t
    let o = MonomialOrder::GrevLex;
    let var = |i| MPoly::var(5, o, i);
    let cst = |c: &Rational| MPoly::constant(5, o, c.clone());
    let top: UPoly = vec![var(1), var(0)];
    let bot: UPoly = vec![var(3), var(2)];
    let homog = |cs: &[Rational]| -> UPoly {
        let mut acc: UPoly = vec![MPoly::zero(5, o); d + 1];
        for (j, c) in cs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = upoly_mul(&upoly_pow(&top, j as u32), &upoly_pow(&bot, (d - j) as u32));
            for (k, tk) in t.iter().enumerate() {
                acc[k] = acc[k].add(&tk.scale(c));
            }
        }
        acc
    };
    let as_up = |cs: &[Rational]| -> UPoly { cs.iter().map(cst).collect() };
    let lhs = upoly_mul(&homog(&fnum), &as_up(&gden));
    let rhs = upoly_mul(&homog(&fden), &as_up(&gnum));
    let mut eqs: Vec<MPoly> = lhs.iter().zip(&rhs).map(|(a, b)| a.sub(b)).filter(|p| !p.is_zero()).collect();
    let det = var(0).mul(&var(3)).sub(&var(1).mul(&var(2)));
    eqs.push(var(4).mul(&det).sub(&MPoly::one(5, o)));
    Ok(!is_unit_ideal(&groebner_basis(&eqs)))
}

fn dedupe(maps: Vec<RatFun>) -> Result<Vec<RatFun>, BelyiError> {
    let mut out: Vec<RatFun> = Vec::new();
    for f in maps {
        let mut fresh = true;
        for g in &out {
            if mobius_equivalent(g, &f)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            out.push(f);
        }
    }
    Ok(out)
}

fn precheck(pattern: &BranchingPattern) -> Result<(), BelyiError> {
    if pattern.degree() > MAX_SOLVE_DEGREE {
        return Err(BelyiError::DegreeTooLarge(pattern.degree()));
    }
    if defect_of(&pattern.partitions()) != 0 {
        return Err(BelyiError::NonzeroDefect);
    }
    Ok(())
}

/// Solve with caller-chosen pins. Maps are deduplicated unless all three pins are distinguished.
pub fn solve_belyi_with(pattern: &BranchingPattern, pins: PinScheme) -> Result<SolveReport, BelyiError> {
    precheck(pattern)?;
    let parts = pattern.partitions();
    pins.check(&parts)?;
    let (maps, raw, saturated) = solve_scheme(pattern, &pins)?;
    let maps = if pins.distinguished(&parts) == 3 { maps } else { dedupe(maps)? };
    if maps.is_empty() {
        return Err(BelyiError::NoSolution);
    }
    Ok(SolveReport { pins: vec![pins], maps, raw_solutions: raw, saturated })
}

/// Number of pin schemes tried when fewer than three points are distinguished.
const SCHEME_BUDGET: usize = 4;

/// Solve with automatically chosen pins.
pub fn solve_belyi(pattern: &BranchingPattern) -> Result<SolveReport, BelyiError> {
    precheck(pattern)?;
    let parts = pattern.partitions();
    let schemes = PinScheme::candidates(pattern);
    let Some(best) = schemes.first().copied() else {
        return Err(BelyiError::NoSolution);
    };
    let tried: Vec<PinScheme> =
        if best.distinguished(&parts) == 3 { vec![best] } else { schemes.into_iter().take(SCHEME_BUDGET).collect() };
    let mut all = Vec::new();
    let mut raw = 0;
    let mut saturated = false;
    for s in &tried {
        let (maps, r, sat) = solve_scheme(pattern, s)?;
        all.extend(maps);
        raw += r;
        saturated |= sat;
    }
    let maps = if tried.len() == 1 { all } else { dedupe(all)? };
    if maps.is_empty() {
        return Err(BelyiError::NoSolution);
    }
    Ok(SolveReport { pins: tried, maps, raw_solutions: raw, saturated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Poly;
    use crate::patterns::BranchingPattern;

    fn map(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    fn solve(text: &str) -> Result<SolveReport, BelyiError> {
        solve_belyi(&BranchingPattern::parse(text).unwrap())
    }

    #[test]
    fn quadratic() {
        let r = solve("2=2=1+1").unwrap();
        assert_eq!(r.maps.len(), 1);
        assert!(mobius_equivalent(&r.maps[0], &map(&[0, 0, 1], &[-1, 2])).unwrap());
        assert!(!mobius_equivalent(&r.maps[0], &map(&[0, 0, 1], &[1])).unwrap());
    }

    #[test]
    fn cubic_with_two_branched_fibers() {
        let r = solve("3=2+1=2+1").unwrap();
        assert_eq!(r.maps.len(), 1);
        let p = BranchingPattern::parse("3=2+1=2+1").unwrap();
        assert!(crate::belyi::verify_covering(&r.maps[0], &p).is_ok());
    }

    #[test]
    fn quartic_with_symmetric_fibers() {
        let r = solve("3+1=3+1=2+2").unwrap();
        assert_eq!(r.maps.len(), 1);
        // 64x(x-1)^3/(8x-9) has fibers 3+1 over 0 and infinity; move them to 0 and 1
        let f = r.maps[0].clone();
        let p = BranchingPattern::parse("3+1=3+1=2+2").unwrap();
        assert!(crate::belyi::verify_covering(&f, &p).is_ok());
    }

    #[test]
    fn unrealizable_pattern_has_no_solution() {
        assert!(matches!(solve("[2]^2=3+1=2+2"), Err(BelyiError::NoSolution)));
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(solve("7=7=1+1+1+1+1+1+1"), Err(BelyiError::DegreeTooLarge(7))));
    }

    #[test]
    fn bad_pins_rejected() {
        let p = BranchingPattern::parse("2=2=1+1").unwrap();
        let pins = PinScheme { zero: Pin { fiber: 0, part: 0 }, one: Pin { fiber: 0, part: 0 }, infinity: Pin { fiber: 1, part: 0 } };
        assert!(matches!(solve_belyi_with(&p, pins), Err(BelyiError::InvalidPins(_))));
    }
}
