//! Sparse multivariate polynomials over Q and Buchberger's algorithm.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::exactalg::{fmt_rat, Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Variable 0 is the largest.
    Lex,
    GrevLex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Mono {
    order: MonomialOrder,
    exps: Vec<u32>,
}

impl Mono {
    fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn mul(&self, o: &Mono) -> Mono {
        Mono { order: self.order, exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect() }
    }

    fn divides(&self, o: &Mono) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    fn div(&self, o: &Mono) -> Mono {
        Mono { order: self.order, exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a - b).collect() }
    }

    fn lcm(&self, o: &Mono) -> Mono {
        Mono { order: self.order, exps: self.exps.iter().zip(&o.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    fn coprime(&self, o: &Mono) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.order {
            MonomialOrder::Lex => self.exps.cmp(&o.exps),
            MonomialOrder::GrevLex => self
                .degree()
                .cmp(&o.degree())
                .then_with(|| o.exps.iter().rev().cmp(self.exps.iter().rev())),
        }
    }
}

/// A polynomial in `nvars` variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    order: MonomialOrder,
    terms: BTreeMap<Mono, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        MPoly { nvars, order, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, order: MonomialOrder, c: Rational) -> Self {
        Self::term(nvars, order, vec![0; nvars], c)
    }

    pub fn one(nvars: usize, order: MonomialOrder) -> Self {
        Self::constant(nvars, order, Rational::one())
    }

    pub fn var(nvars: usize, order: MonomialOrder, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, order, e, Rational::one())
    }

    pub fn term(nvars: usize, order: MonomialOrder, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars, order);
        if !c.is_zero() {
            p.terms.insert(Mono { order, exps }, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().rev().map(|(m, c)| (m.exps.as_slice(), c))
    }

    /// Exponents of the leading monomial.
    pub fn leading_exponents(&self) -> Option<&[u32]> {
        self.terms.keys().next_back().map(|m| m.exps.as_slice())
    }

    fn lead(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|m| m.exps[i] > 0)).collect()
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MPoly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        let mut r = self.clone();
        r.terms.values_mut().for_each(|v| *v *= c);
        r
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = Self::zero(self.nvars, self.order);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> MPoly {
        (0..e).fold(Self::one(self.nvars, self.order), |acc, _| acc.mul(self))
    }

    /// `self - c * m * g`
    fn sub_multiple(&mut self, c: &Rational, m: &Mono, g: &MPoly) {
        for (gm, gc) in &g.terms {
            self.add_term(gm.mul(m), -(c * gc));
        }
    }

    pub fn monic(&self) -> MPoly {
        match self.lead() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Substitute a value for variable `i`.
    pub fn substitute(&self, i: usize, v: &Rational) -> MPoly {
        let mut r = Self::zero(self.nvars, self.order);
        for (m, c) in &self.terms {
            let mut e = m.exps.clone();
            let k = std::mem::take(&mut e[i]);
            r.add_term(Mono { order: self.order, exps: e }, c * num_traits::pow(v.clone(), k as usize));
        }
        r
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| m.exps.iter().zip(point).fold(c.clone(), |acc, (e, x)| acc * num_traits::pow(x.clone(), *e as usize)))
            .sum()
    }

    /// Same polynomial under another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> MPoly {
        let mut r = Self::zero(self.nvars, order);
        for (m, c) in &self.terms {
            r.terms.insert(Mono { order, exps: m.exps.clone() }, c.clone());
        }
        r
    }

    /// As a univariate polynomial when only variable `i` occurs.
    pub fn to_univariate(&self, i: usize) -> Option<Poly> {
        if self.support().iter().any(|&j| j != i) {
            return None;
        }
        let deg = self.terms.keys().map(|m| m.exps[i]).max().unwrap_or(0) as usize;
        let mut cs = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            cs[m.exps[i] as usize] = c.clone();
        }
        Some(Poly::from_rationals(&cs))
    }

    /// Remainder of full reduction modulo `basis`.
    pub fn reduce(&self, basis: &[MPoly]) -> MPoly {
        let mut p = self.clone();
        let mut r = Self::zero(self.nvars, self.order);
        while let Some((m, c)) = p.terms.pop_last() {
            match basis.iter().find(|g| g.lead().is_some_and(|(gm, _)| gm.divides(&m))) {
                Some(g) => {
                    let (gm, gc) = g.lead().unwrap();
                    let q = m.div(gm);
                    let qc = &c / gc;
                    // the leading term cancels by construction; skip it
                    for (tm, tc) in g.terms.iter().rev().skip(1) {
                        p.add_term(tm.mul(&q), -(&qc * tc));
                    }
                }
                None => {
                    r.terms.insert(m, c);
                }
            }
        }
        r
    }

    /// Quotient when `g` divides `self` exactly.
    pub fn div_exact(&self, g: &MPoly) -> Option<MPoly> {
        let (gm, gc) = g.lead()?;
        let mut p = self.clone();
        let mut q = Self::zero(self.nvars, self.order);
        while let Some((m, c)) = p.lead() {
            if !gm.divides(m) {
                return None;
            }
            let t = m.div(gm);
            let tc = c / gc;
            p.sub_multiple(&tc, &t, g);
            q.add_term(t, tc);
        }
        Some(q)
    }

    fn s_poly(&self, o: &MPoly) -> MPoly {
        let (m1, c1) = self.lead().unwrap();
        let (m2, c2) = o.lead().unwrap();
        let l = m1.lcm(m2);
        let mut a = Self::zero(self.nvars, self.order);
        a.sub_multiple(&-c1.recip(), &l.div(m1), self);
        a.sub_multiple(&c2.recip(), &l.div(m2), o);
        a
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(i, k)| if *k == 1 { format!("v{i}") } else { format!("v{i}^{k}") })
                    .collect();
                if mono.is_empty() {
                    fmt_rat(c)
                } else if c.is_one() {
                    mono.join("*")
                } else {
                    format!("{}*{}", fmt_rat(c), mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Reduced Groebner basis, sorted by increasing leading monomial. `[1]` for the unit ideal.
pub fn groebner_basis(input: &[MPoly]) -> Vec<MPoly> {
    let mut g: Vec<MPoly> = Vec::new();
    for p in input {
        let r = p.reduce(&g);
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    let Some(first) = input.first() else {
        return Vec::new();
    };
    let (nvars, order) = (first.nvars, first.order);
    if g.iter().any(MPoly::is_constant) {
        return vec![MPoly::one(nvars, order)];
    }
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while !pending.is_empty() {
        let &(i, j) = pending
            .iter()
            .min_by_key(|&&(i, j)| {
                let l = g[i].lead().unwrap().0.lcm(g[j].lead().unwrap().0);
                (l.degree(), l, i, j)
            })
            .unwrap();
        pending.remove(&(i, j));
        let (mi, mj) = (g[i].lead().unwrap().0, g[j].lead().unwrap().0);
        if mi.coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].lead().unwrap().0.divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let r = g[i].s_poly(&g[j]).reduce(&g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![MPoly::one(nvars, order)];
        }
        let n = g.len();
        g.push(r.monic());
        for k in 0..n {
            pending.insert((k, n));
        }
    }
    // minimal, then reduced
    let mut min: Vec<MPoly> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let m = p.lead().unwrap().0;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let qm = q.lead().unwrap().0;
            j != k && qm.divides(m) && (qm != m || j < k)
        });
        if !redundant {
            min.push(p.clone());
        }
    }
    let mut out: Vec<MPoly> = (0..min.len())
        .map(|k| {
            let others: Vec<MPoly> = min.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, q)| q.clone()).collect();
            let (m, c) = min[k].lead().unwrap();
            let mut head = MPoly::zero(nvars, order);
            head.terms.insert(m.clone(), c.clone());
            head.add(&min[k].sub(&head).reduce(&others)).monic()
        })
        .collect();
    out.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0));
    out
}

/// True when the basis describes finitely many points over the algebraic closure.
pub fn is_zero_dimensional(basis: &[MPoly]) -> bool {
    let Some(first) = basis.first() else {
        return false;
    };
    (0..first.nvars).all(|i| {
        basis.iter().any(|g| {
            let e = g.leading_exponents().unwrap();
            e[i] > 0 && e.iter().enumerate().all(|(j, k)| j == i || *k == 0)
        })
    })
}

pub fn is_unit_ideal(basis: &[MPoly]) -> bool {
    basis.iter().any(|g| g.is_constant() && !g.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat_int;

    fn v(n: usize, i: usize) -> MPoly {
        MPoly::var(n, MonomialOrder::Lex, i)
    }

    fn c(n: usize, k: i64) -> MPoly {
        MPoly::constant(n, MonomialOrder::Lex, rat_int(k))
    }

    #[test]
    fn circle_and_line() {
        // x^2 + y^2 - 1, x - y  ->  lex basis {x - y, y^2 - 1/2}
        let (x, y) = (v(2, 0), v(2, 1));
        let f = x.mul(&x).add(&y.mul(&y)).sub(&c(2, 1));
        let g = x.sub(&y);
        let b = groebner_basis(&[f, g]);
        assert_eq!(b.len(), 2);
        assert!(is_zero_dimensional(&b));
        let uni = b[0].to_univariate(1).unwrap();
        assert_eq!(uni, Poly::from_rationals(&[crate::exactalg::rat(-1, 2), rat_int(0), rat_int(1)]));
    }

    #[test]
    fn inconsistent_system() {
        let (x, y) = (v(2, 0), v(2, 1));
        let b = groebner_basis(&[x.mul(&y).sub(&c(2, 1)), x.clone()]);
        assert!(is_unit_ideal(&b));
    }

    #[test]
    fn positive_dimensional_detected() {
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let b = groebner_basis(&[x.mul(&y), x.mul(&z)]);
        assert!(!is_zero_dimensional(&b));
    }

    #[test]
    fn grevlex_matches_lex_on_emptiness() {
        let (x, y) = (v(2, 0), v(2, 1));
        let sys = [x.mul(&x).sub(&y), y.mul(&y).sub(&x), x.mul(&y).sub(&c(2, 2))];
        let lex = groebner_basis(&sys);
        let grev: Vec<MPoly> = sys.iter().map(|p| p.with_order(MonomialOrder::GrevLex)).collect();
        assert_eq!(is_unit_ideal(&lex), is_unit_ideal(&groebner_basis(&grev)));
        assert!(is_unit_ideal(&lex));
    }

    #[test]
    fn exact_division() {
        let (x, y) = (v(2, 0), v(2, 1));
        let a = x.add(&y);
        let b = x.sub(&y.scale(&rat_int(3)));
        assert_eq!(a.mul(&b).div_exact(&b), Some(a.clone()));
        assert_eq!(a.mul(&b).add(&c(2, 1)).div_exact(&b), None);
    }
}
