//! Non-existence arguments: pulled-back singularity profiles and the rules that refute them.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::exactalg::{fmt_rat, is_integer, rat, rat_int, Rational};
use crate::patterns::{BranchingPattern, RestrictionType};

mod factor;

pub use factor::{closure, cyclic_factor_possible, triangle_generators};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    SingleSingularity,
    UnequalPair,
    ThirdsParity,
    HalfQuarter,
    IntegerTriangle,
    IntegerPoint,
    Schwarz,
    GaussianIsogeny,
    EisensteinIsogeny,
    GaugeParity,
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::SingleSingularity => "6.1a",
            Rule::UnequalPair => "6.1b",
            Rule::ThirdsParity => "6.2a",
            Rule::HalfQuarter => "6.2b",
            Rule::IntegerTriangle => "6.2c",
            Rule::IntegerPoint => "6.2d",
            Rule::Schwarz => "schwarz",
            Rule::GaussianIsogeny => "6.3-gauss",
            Rule::EisensteinIsogeny => "6.3-eisenstein",
            Rule::GaugeParity => "gauge-parity",
        }
    }

    pub fn parse(s: &str) -> Option<Rule> {
        ALL_RULES.iter().copied().find(|r| r.label() == s)
    }
}

const ALL_RULES: [Rule; 10] = [
    Rule::SingleSingularity,
    Rule::UnequalPair,
    Rule::ThirdsParity,
    Rule::HalfQuarter,
    Rule::IntegerTriangle,
    Rule::IntegerPoint,
    Rule::Schwarz,
    Rule::GaussianIsogeny,
    Rule::EisensteinIsogeny,
    Rule::GaugeParity,
];

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

fn ser_rats<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rat))
}

/// Exponent differences of a pulled-back equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityProfile {
    /// Non-integer differences, ascending.
    #[serde(serialize_with = "ser_rats")]
    pub relevant: Vec<Rational>,
    /// Integer differences of at least 2 at non-logarithmic points, ascending.
    pub apparent: Vec<u32>,
    #[serde(serialize_with = "ser_rats")]
    pub base: Vec<Rational>,
    pub degree: u32,
    /// Fibers of the covering over the three base points.
    pub fibers: [Vec<u32>; 3],
}

impl SingularityProfile {
    /// Relevant and apparent differences together.
    pub fn singular(&self) -> Vec<Rational> {
        let mut v = self.relevant.clone();
        v.extend(self.apparent.iter().map(|&a| rat_int(a as i64)));
        v.sort();
        v
    }

    pub fn to_text(&self) -> String {
        let s: Vec<String> = self.singular().iter().map(fmt_rat).collect();
        format!("({})", s.join(", "))
    }
}

/// True when an integer difference in `base` is harmless: it equals 1 and the other two agree.
fn integer_points_safe(base: &[Rational; 3]) -> bool {
    (0..3).all(|i| {
        if !is_integer(&base[i]) {
            return true;
        }
        base[i].is_one() && base[(i + 1) % 3] == base[(i + 2) % 3]
    })
}

/// Pull back a base triple along a covering with the given fibers.
///
/// Returns `None` when the base has an integer difference that might be logarithmic.
pub fn pulled_back_profile(parts: &[Vec<u32>; 3], base: &[Rational; 3]) -> Option<SingularityProfile> {
    if !integer_points_safe(base) || base.iter().any(|v| !v.is_positive()) {
        return None;
    }
    let mut relevant = Vec::new();
    let mut apparent = Vec::new();
    for (ps, v) in parts.iter().zip(base) {
        for &e in ps {
            let d = v * rat_int(e as i64);
            if is_integer(&d) {
                let n = d.to_integer();
                if n != 1.into() {
                    apparent.push(u32::try_from(n).ok()?);
                }
            } else {
                relevant.push(d);
            }
        }
    }
    relevant.sort();
    apparent.sort_unstable();
    let degree = parts[0].iter().sum();
    Some(SingularityProfile { relevant, apparent, base: base.to_vec(), degree, fibers: parts.clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Nonexistent,
    Undecided,
}

/// One refutation: which base was pulled back, what came out, and the rule that fails on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertStep {
    /// Values given to the free parameters; empty for a base outside the pattern's own family.
    #[serde(serialize_with = "ser_rats")]
    pub alpha: Vec<Rational>,
    pub implied: bool,
    pub profile: SingularityProfile,
    pub rule: Rule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub chain: Vec<CertStep>,
}

impl Verdict {
    pub fn undecided() -> Self {
        Verdict { status: Status::Undecided, chain: Vec::new() }
    }

    pub fn is_nonexistent(&self) -> bool {
        self.status == Status::Nonexistent
    }

    pub fn rules(&self) -> Vec<Rule> {
        self.chain.iter().map(|c| c.rule).collect()
    }
}

/// Rules that need only the count and values of the singular points.
pub fn lemma_logpoint(p: &SingularityProfile) -> Option<Rule> {
    let s = p.singular();
    match s.len() {
        1 => Some(Rule::SingleSingularity),
        2 if s[0] != s[1] => Some(Rule::UnequalPair),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Monodromy {
    Finite,
    Infinite,
    Undecided,
}

/// Reduced forms of the finite-monodromy triples; dihedral triples are recognized separately.
const SCHWARZ: [(&str, [(i64, i64); 3]); 14] = [
    ("II", [(1, 2), (1, 3), (1, 3)]),
    ("III", [(2, 3), (1, 3), (1, 3)]),
    ("IV", [(1, 2), (1, 3), (1, 4)]),
    ("V", [(2, 3), (1, 4), (1, 4)]),
    ("VI", [(1, 2), (1, 3), (1, 5)]),
    ("VII", [(2, 5), (1, 3), (1, 3)]),
    ("VIII", [(2, 3), (1, 5), (1, 5)]),
    ("IX", [(1, 2), (2, 5), (1, 5)]),
    ("X", [(3, 5), (1, 3), (1, 5)]),
    ("XI", [(2, 5), (2, 5), (2, 5)]),
    ("XII", [(2, 3), (1, 3), (1, 5)]),
    ("XIII", [(4, 5), (1, 5), (1, 5)]),
    ("XIV", [(1, 2), (2, 5), (1, 3)]),
    ("XV", [(3, 5), (2, 5), (1, 3)]),
];

fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

fn same_multiset(a: &[Rational; 3], b: &[Rational; 3]) -> bool {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    x.sort();
    y.sort();
    x == y
}

/// Fractional parts, with one complemented when the integer shifts have odd sum.
fn reduced(t: &[Rational; 3]) -> [Rational; 3] {
    let shift: Rational = t.iter().map(|r| r.floor()).sum();
    let mut f = t.clone().map(|r| frac(&r));
    if shift.to_integer().is_odd() {
        f[0] = Rational::one() - &f[0];
    }
    f
}

/// Schwarz type of an all-non-integer triple, or `None` for infinite monodromy.
pub fn schwarz_type(t: &[Rational; 3]) -> Option<&'static str> {
    let r = reduced(t);
    let half = rat(1, 2);
    if r.iter().filter(|x| **x == half).count() >= 2 {
        return Some("I");
    }
    let one = Rational::one();
    SCHWARZ.iter().find_map(|(name, entry)| {
        let e = entry.map(|(p, q)| rat(p, q));
        // even numbers of complements
        let hit = [[false, false, false], [true, true, false], [true, false, true], [false, true, true]].iter().any(|c| {
            let v: [Rational; 3] = std::array::from_fn(|i| if c[i] { &one - &e[i] } else { e[i].clone() });
            same_multiset(&v, &r)
        });
        hit.then_some(*name)
    })
}

/// Finite/infinite decision for a hypergeometric equation with the given exponent differences.
pub fn finite_monodromy(t: &[Rational; 3]) -> (Monodromy, Option<Rule>) {
    let t = t.clone().map(|r| r.abs());
    let den = |r: &Rational, q: i64| r.denom() == &q.into();
    if t.iter().all(|r| den(r, 3)) {
        let s: num_bigint::BigInt = t.iter().map(|r| r.numer().clone()).sum();
        let m = if s.is_even() { Monodromy::Finite } else { Monodromy::Infinite };
        return (m, Some(Rule::ThirdsParity));
    }
    let halves = t.iter().filter(|r| den(r, 2)).count();
    let quarters = t.iter().filter(|r| den(r, 4)).count();
    if halves == 1 && quarters == 2 {
        return (Monodromy::Infinite, Some(Rule::HalfQuarter));
    }
    let ints: Vec<usize> = (0..3).filter(|&i| is_integer(&t[i])).collect();
    match ints.len() {
        3 => {
            let n = t.clone().map(|r| r.to_integer());
            let s: num_bigint::BigInt = n.iter().sum();
            let triangle = (0..3).all(|i| n[i] < &n[(i + 1) % 3] + &n[(i + 2) % 3]);
            let m = if s.is_odd() && triangle { Monodromy::Finite } else { Monodromy::Infinite };
            (m, Some(Rule::IntegerTriangle))
        }
        1 => {
            let i = ints[0];
            let n = &t[i];
            let (b, c) = (&t[(i + 1) % 3], &t[(i + 2) % 3]);
            let ok = [(b - c).abs(), b + c]
                .into_iter()
                .any(|k| is_integer(&k) && (&k + n).to_integer().is_odd() && &k < n);
            (if ok { Monodromy::Finite } else { Monodromy::Infinite }, Some(Rule::IntegerPoint))
        }
        0 => {
            let m = if schwarz_type(&t).is_some() { Monodromy::Finite } else { Monodromy::Infinite };
            (m, Some(Rule::Schwarz))
        }
        _ => (Monodromy::Undecided, None),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Lattice {
    Gaussian,
    Eisenstein,
}

/// Number of cyclic self-isogenies of degree `d` counted as in the lattice lemma.
pub fn isogeny_count(lattice: Lattice, d: u64) -> u64 {
    let mut n = 0;
    let mut b: u64 = 1;
    loop {
        match lattice {
            Lattice::Gaussian => {
                if b * b > d {
                    break;
                }
                n += (0..=d).take_while(|a| a * a <= d).filter(|a| a * a + b * b == d).count() as u64;
            }
            Lattice::Eisenstein => {
                // a^2 - ab + b^2 >= 3b^2/4 on 0 <= a < b
                if 3 * b * b > 4 * d {
                    break;
                }
                n += (0..b).filter(|a| a * a + b * b - a * b == d).count() as u64;
            }
        }
        b += 1;
    }
    n
}

fn self_map_lattice(base: &[Rational; 3]) -> Option<(Lattice, Rule)> {
    let g = [rat(1, 2), rat(1, 4), rat(1, 4)];
    let e1 = [rat(1, 2), rat(1, 3), rat(1, 6)];
    let e2 = [rat(1, 3), rat(1, 3), rat(1, 3)];
    if same_multiset(base, &g) {
        Some((Lattice::Gaussian, Rule::GaussianIsogeny))
    } else if same_multiset(base, &e1) || same_multiset(base, &e2) {
        Some((Lattice::Eisenstein, Rule::EisensteinIsogeny))
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LemmaError {
    #[error("gauge test needs exactly three relevant points, found {0}")]
    RelevantCount(usize),
}

/// True when some signed sum of the three differences is an odd integer.
pub fn reducible(t: &[Rational; 3]) -> bool {
    [(1, 1), (1, -1), (-1, 1), (-1, -1)].iter().any(|&(b, c)| {
        let s = &t[0] + &t[1] * rat_int(b) + &t[2] * rat_int(c);
        is_integer(&s) && s.to_integer().is_odd()
    })
}

/// Whether a finite reducible monodromy is compatible with the profile.
///
/// A diagonal monodromy makes the ratio of eigen-solutions a product of powers of linear forms:
/// order `±r` at relevant points, `±a` or `0` at apparent ones, `±1` at a number of ordinary
/// points, with orders summing to zero and critical points only at the apparent points of order 0.
pub fn split_possible(p: &SingularityProfile) -> bool {
    let n = p.apparent.len();
    let mut choice = vec![0u8; n];
    loop {
        let mut critical: i64 = 0;
        let mut nonzero: i64 = 0;
        let mut apparent_sum: i64 = 0;
        for (c, &a) in choice.iter().zip(&p.apparent) {
            match c {
                0 => critical += a as i64 - 1,
                1 => {
                    nonzero += 1;
                    apparent_sum += a as i64;
                }
                _ => {
                    nonzero += 1;
                    apparent_sum -= a as i64;
                }
            }
        }
        let ordinary = critical - 1 - nonzero;
        if ordinary >= 0 {
            for mask in 0..8u32 {
                let mut sum = rat_int(apparent_sum);
                for (i, r) in p.relevant.iter().enumerate() {
                    if mask >> i & 1 == 0 {
                        sum += r;
                    } else {
                        sum -= r;
                    }
                }
                if is_integer(&sum) {
                    let k = sum.to_integer();
                    if k.abs() <= ordinary.into() && (k - ordinary).is_even() {
                        return true;
                    }
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            choice[i] += 1;
            if choice[i] < 3 {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Contiguity-parity test for three relevant points plus apparent ones.
pub fn gauge_contiguity_test(p: &SingularityProfile) -> Result<Verdict, LemmaError> {
    if p.relevant.len() != 3 {
        return Err(LemmaError::RelevantCount(p.relevant.len()));
    }
    let base: [Rational; 3] = p.base.clone().try_into().expect("three base values");
    if finite_monodromy(&base).0 != Monodromy::Finite {
        return Ok(Verdict::undecided());
    }
    let apparent_shift: u32 = p.apparent.iter().map(|a| a - 1).sum();
    let mut admissible = 0;
    for mask in 0..8u32 {
        let mut shift = num_bigint::BigInt::from(apparent_shift);
        let target: [Rational; 3] = std::array::from_fn(|i| {
            let r = &p.relevant[i];
            if mask >> i & 1 == 0 {
                shift += r.floor().to_integer();
                frac(r)
            } else {
                shift += r.floor().to_integer() + 1;
                Rational::one() - frac(r)
            }
        });
        if shift.is_odd() {
            continue;
        }
        admissible += 1;
        let infinite = if reducible(&target) {
            let orders: Vec<u32> = p.relevant.iter().filter_map(|r| u32::try_from(r.denom().clone()).ok()).collect();
            !split_possible(p) || !cyclic_factor_possible(&p.fibers, &p.base, &orders)
        } else {
            finite_monodromy(&target).0 == Monodromy::Infinite
        };
        if !infinite {
            return Ok(Verdict::undecided());
        }
    }
    if admissible == 0 {
        return Ok(Verdict::undecided());
    }
    let step = CertStep { alpha: Vec::new(), implied: false, profile: p.clone(), rule: Rule::GaugeParity };
    Ok(Verdict { status: Status::Nonexistent, chain: vec![step] })
}

/// Every rule that refutes the profile, in the fixed order.
pub fn refutations(p: &SingularityProfile) -> Vec<Rule> {
    let mut out = Vec::new();
    if let Some(r) = lemma_logpoint(p) {
        out.push(r);
    }
    let base: [Rational; 3] = p.base.clone().try_into().expect("three base values");
    let base_finite = finite_monodromy(&base).0 == Monodromy::Finite;
    let s = p.singular();
    if base_finite && s.len() == 3 {
        let t = [s[0].clone(), s[1].clone(), s[2].clone()];
        if let (Monodromy::Infinite, Some(r)) = finite_monodromy(&t) {
            out.push(r);
        }
    }
    if let Some((lat, rule)) = self_map_lattice(&base) {
        if p.apparent.is_empty() && p.relevant.len() == 3 {
            let t = [p.relevant[0].clone(), p.relevant[1].clone(), p.relevant[2].clone()];
            if same_multiset(&t, &base) && isogeny_count(lat, p.degree as u64) == 0 {
                out.push(rule);
            }
        }
    }
    if base_finite && p.relevant.len() == 3 && !p.apparent.is_empty() {
        if let Ok(v) = gauge_contiguity_test(p) {
            if v.is_nonexistent() {
                out.push(Rule::GaugeParity);
            }
        }
    }
    out
}

/// Re-check a certificate from its profile alone.
pub fn replay(step: &CertStep) -> bool {
    refutations(&step.profile).contains(&step.rule)
}

/// Candidate values for a specialized parameter: `1, 1/2, ..., 1/d`.
pub fn specialization_values(d: u32) -> Vec<Rational> {
    (1..=d as i64).map(|k| rat(1, k)).collect()
}

fn bases_for(ty: &RestrictionType, p: &BranchingPattern) -> Vec<(Vec<Rational>, [Rational; 3])> {
    let forms = p.default_base();
    let vals = specialization_values(p.degree());
    let free = ty.free_count();
    let mut out = Vec::new();
    let mut params = vec![0usize; free];
    loop {
        let mut full = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (i, &j) in params.iter().enumerate() {
            full[i] = vals[j].clone();
        }
        let base = forms.clone().map(|f| f.eval(&full));
        out.push((params.iter().map(|&j| vals[j].clone()).collect(), base));
        // odometer, first parameter slowest
        let mut i = free;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            params[i] += 1;
            if params[i] < vals.len() {
                break;
            }
            params[i] = 0;
        }
    }
}

/// Search specializations of the pattern's base family, then other base triples.
///
/// In exhaustive mode every refutation found is returned; otherwise only the first.
pub fn nonexistence_search(ty: &RestrictionType, p: &BranchingPattern, exhaustive: bool) -> Verdict {
    let parts = p.partitions();
    let own = bases_for(ty, p);
    let vals = specialization_values(p.degree());
    let mut implied = Vec::new();
    for a in &vals {
        for b in &vals {
            for c in &vals {
                let t = [a.clone(), b.clone(), c.clone()];
                if !own.iter().any(|(_, o)| *o == t) {
                    implied.push((Vec::new(), t));
                }
            }
        }
    }
    let mut chain = Vec::new();
    let routes = own.into_iter().map(|r| (r, false)).chain(implied.into_iter().map(|r| (r, true)));
    for ((alpha, base), is_implied) in routes {
        let Some(profile) = pulled_back_profile(&parts, &base) else {
            continue;
        };
        for rule in refutations(&profile) {
            chain.push(CertStep { alpha: alpha.clone(), implied: is_implied, profile: profile.clone(), rule });
            if !exhaustive {
                return Verdict { status: Status::Nonexistent, chain };
            }
        }
    }
    let status = if chain.is_empty() { Status::Undecided } else { Status::Nonexistent };
    Verdict { status, chain }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        rat(p, q)
    }

    fn profile(relevant: Vec<Rational>, apparent: Vec<u32>, base: [Rational; 3]) -> SingularityProfile {
        let fibers = [vec![2; 12], vec![3; 8], vec![4; 6]];
        SingularityProfile { relevant, apparent, base: base.to_vec(), degree: 24, fibers }
    }

    #[test]
    fn logpoint_rules() {
        let b = [r(1, 2), r(1, 3), r(1, 2)];
        assert_eq!(lemma_logpoint(&profile(vec![], vec![3], b.clone())), Some(Rule::SingleSingularity));
        assert_eq!(lemma_logpoint(&profile(vec![r(1, 2), r(7, 2)], vec![], b.clone())), Some(Rule::UnequalPair));
        assert_eq!(lemma_logpoint(&profile(vec![r(1, 3), r(1, 3)], vec![], b)), None);
    }

    #[test]
    fn monodromy_rules() {
        assert_eq!(finite_monodromy(&[r(1, 3), r(1, 3), r(2, 3)]).0, Monodromy::Finite);
        assert_eq!(finite_monodromy(&[r(7, 3), r(1, 3), r(1, 3)]), (Monodromy::Infinite, Some(Rule::ThirdsParity)));
        assert_eq!(finite_monodromy(&[r(2, 1), r(2, 1), r(5, 1)]), (Monodromy::Infinite, Some(Rule::IntegerTriangle)));
        assert_eq!(finite_monodromy(&[r(1, 1), r(1, 2), r(1, 2)]), (Monodromy::Finite, Some(Rule::IntegerPoint)));
        assert_eq!(finite_monodromy(&[r(3, 2), r(1, 4), r(1, 4)]).0, Monodromy::Infinite);
        assert_eq!(finite_monodromy(&[r(2, 1), r(1, 2), r(5, 2)]).0, Monodromy::Infinite);
    }

    #[test]
    fn schwarz_reduction() {
        assert_eq!(schwarz_type(&[r(1, 2), r(2, 3), r(4, 3)]), Some("II"));
        assert_eq!(schwarz_type(&[r(3, 2), r(3, 2), r(2, 3)]), Some("I"));
        assert_eq!(schwarz_type(&[r(1, 3), r(1, 5), r(4, 5)]), Some("VIII"));
        assert_eq!(schwarz_type(&[r(7, 5), r(1, 5), r(1, 5)]), None);
        assert_eq!(schwarz_type(&[r(1, 3), r(1, 3), r(1, 3)]), None);
    }

    #[test]
    fn isogenies() {
        assert_eq!(isogeny_count(Lattice::Gaussian, 3), 0);
        assert_eq!(isogeny_count(Lattice::Gaussian, 5), 2);
        assert_eq!(isogeny_count(Lattice::Eisenstein, 10), 0);
        assert_eq!(isogeny_count(Lattice::Eisenstein, 7), 2);
    }

    #[test]
    fn gauge_needs_three_relevant() {
        let p = profile(vec![r(1, 3)], vec![2], [r(1, 2), r(1, 3), r(1, 3)]);
        assert_eq!(gauge_contiguity_test(&p), Err(LemmaError::RelevantCount(1)));
    }

    #[test]
    fn gauge_without_shift_is_undecided() {
        let p = profile(vec![r(1, 3), r(1, 3), r(2, 3)], vec![], [r(1, 2), r(1, 3), r(1, 3)]);
        assert_eq!(gauge_contiguity_test(&p).unwrap().status, Status::Undecided);
    }

    #[test]
    fn unsafe_integer_base_skipped() {
        let parts = [vec![2; 6], vec![3; 4], vec![9, 1, 1, 1]];
        assert!(pulled_back_profile(&parts, &[r(1, 2), r(1, 3), r(1, 1)]).is_none());
        assert!(pulled_back_profile(&parts, &[r(1, 3), r(1, 3), r(1, 1)]).is_some());
    }

    #[test]
    fn gauge_parity_list_example() {
        let parts = [vec![2; 12], vec![3; 8], vec![10, 6, 3, 3, 1, 1]];
        let p = pulled_back_profile(&parts, &[r(1, 2), r(1, 3), r(1, 3)]).unwrap();
        assert_eq!(p.to_text(), "(1/3, 1/3, 2, 10/3)");
        assert!(!split_possible(&p));
        assert!(gauge_contiguity_test(&p).unwrap().is_nonexistent());
    }

    #[test]
    fn split_cyclic_pullback_is_not_refuted() {
        let parts = [vec![2; 6], vec![3; 4], vec![9, 1, 1, 1]];
        let p = pulled_back_profile(&parts, &[r(1, 2), r(1, 3), r(1, 3)]).unwrap();
        assert!(reducible(&[r(1, 3), r(1, 3), r(1, 3)]));
        assert!(split_possible(&p));
        assert_eq!(gauge_contiguity_test(&p).unwrap().status, Status::Undecided);
    }

    #[test]
    fn rule_labels_round_trip() {
        for r in ALL_RULES {
            assert_eq!(Rule::parse(r.label()), Some(r));
        }
    }
}
