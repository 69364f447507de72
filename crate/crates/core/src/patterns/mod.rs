//! Restriction types, branching patterns and exponent transport.

mod exponent;

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt;

pub use exponent::{ExponentForm, PARAM_NAMES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("restriction type {0} is not admissible")]
    InadmissibleType(String),
    #[error("degree {degree} is not admissible for type {ty}")]
    InadmissibleDegree { ty: String, degree: u32 },
    #[error("fiber {fiber} sums to {sum}, expected {degree}")]
    FiberSum { fiber: usize, sum: u32, degree: u32 },
    #[error("bracketed parts in fiber {fiber} need the constant base 1/{k}, got {base}")]
    BracketMismatch { fiber: usize, k: u32, base: String },
    #[error("expected 4 Heun exponents, got {0}")]
    ExponentCount(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Multiset of restricted exponent denominators, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RestrictionType(Vec<u32>);

impl RestrictionType {
    pub fn new(mut ks: Vec<u32>) -> Result<Self, PatternError> {
        ks.sort_unstable();
        let t = RestrictionType(ks);
        if enumerate_types().iter().any(|(u, _)| *u == t) {
            Ok(t)
        } else {
            Err(PatternError::InadmissibleType(t.label()))
        }
    }

    pub fn ks(&self) -> &[u32] {
        &self.0
    }

    pub fn free_count(&self) -> usize {
        3 - self.0.len()
    }

    pub fn label(&self) -> String {
        let inner: Vec<String> = self.0.iter().map(u32::to_string).collect();
        format!("({})", inner.join(","))
    }

    /// Accepts `()`, `(2)`, `(2,3)`, `2,3`.
    pub fn parse(s: &str) -> Result<Self, PatternError> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let ks = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| PatternError::Parse(format!("bad type {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        RestrictionType::new(ks)
    }

    /// Degrees `D` with room for `D - 2` bracketed points and one bracket per restricted fiber.
    fn degree_feasible(&self, d: u32) -> bool {
        if d < 2 || self.0.iter().any(|&k| k > d) {
            return false;
        }
        let brackets = d - 2;
        let room: u32 = self.0.iter().map(|&k| d / k).sum();
        brackets >= self.0.len() as u32 && brackets <= room
    }

    pub fn admissible_degrees(&self) -> Vec<u32> {
        let dmax = enumerate_types()
            .into_iter()
            .find(|(t, _)| t == self)
            .map(|(_, d)| d)
            .unwrap_or(0);
        (2..=dmax).filter(|&d| self.degree_feasible(d)).collect()
    }
}

impl fmt::Display for RestrictionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

const SEARCH_K: u32 = 24;
const SEARCH_D: u32 = 64;

/// Restriction types with a bounded, nonempty degree range, with their maximal degree.
///
/// Types whose inequality still holds at the search ceiling have no degree bound and are
/// dropped; this is exactly `(2,2)`. Denominator 1 is never considered.
pub fn enumerate_types() -> Vec<(RestrictionType, u32)> {
    let mut candidates = vec![vec![]];
    for k in 2..=SEARCH_K {
        candidates.push(vec![k]);
        for l in k..=SEARCH_K {
            candidates.push(vec![k, l]);
        }
    }
    let mut out = Vec::new();
    for ks in candidates {
        let t = RestrictionType(ks);
        let ds: Vec<u32> = (2..=SEARCH_D).filter(|&d| t.degree_feasible(d)).collect();
        match ds.last() {
            Some(&dmax) if dmax < SEARCH_D => out.push((t, dmax)),
            _ => {}
        }
    }
    out.sort_by(|a, b| (a.0 .0.len(), &a.0).cmp(&(b.0 .0.len(), &b.0)));
    out
}

/// One fiber: a partition (descending) and an optional restriction mark `k`.
/// With a mark, every part equal to `k` is bracketed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fiber {
    pub mark: Option<u32>,
    pub parts: Vec<u32>,
}

impl Fiber {
    pub fn new(mark: Option<u32>, mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Fiber { mark, parts }
    }

    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn bracketed(&self) -> usize {
        match self.mark {
            Some(k) => self.parts.iter().filter(|&&e| e == k).count(),
            None => 0,
        }
    }

    pub fn unbracketed(&self) -> Vec<u32> {
        self.parts
            .iter()
            .copied()
            .filter(|&e| Some(e) != self.mark)
            .collect()
    }

    fn sort_key(&self) -> (u32, Reverse<Vec<u32>>) {
        (self.mark.unwrap_or(u32::MAX), Reverse(self.parts.clone()))
    }

    pub fn to_text(&self) -> String {
        let mut toks = Vec::new();
        let b = self.bracketed();
        if let Some(k) = self.mark {
            match b {
                0 => {}
                1 => toks.push(format!("[{k}]")),
                n => toks.push(format!("[{k}]^{n}")),
            }
        }
        toks.extend(self.unbracketed().iter().map(u32::to_string));
        toks.join("+")
    }

    pub fn parse(s: &str) -> Result<Self, PatternError> {
        let bad = || PatternError::Parse(format!("bad fiber {s:?}"));
        let mut mark = None;
        let mut parts = Vec::new();
        for tok in s.split('+').map(str::trim) {
            if let Some(rest) = tok.strip_prefix('[') {
                let (k, tail) = rest.split_once(']').ok_or_else(bad)?;
                let k: u32 = k.trim().parse().map_err(|_| bad())?;
                let n: usize = match tail.trim() {
                    "" => 1,
                    t => t
                        .strip_prefix('^')
                        .ok_or_else(bad)?
                        .trim()
                        .parse()
                        .map_err(|_| bad())?,
                };
                if mark.is_some_and(|m| m != k) || k == 0 {
                    return Err(bad());
                }
                mark = Some(k);
                parts.extend(std::iter::repeat(k).take(n));
            } else {
                let e: u32 = tok.parse().map_err(|_| bad())?;
                if e == 0 {
                    return Err(bad());
                }
                parts.push(e);
            }
        }
        if let Some(k) = mark {
            // an unbracketed part equal to the mark would be ambiguous
            let written_k = s.split('+').filter(|t| t.trim() == k.to_string()).count();
            if written_k > 0 {
                return Err(bad());
            }
        }
        Ok(Fiber::new(mark, parts))
    }
}

/// Three fibers over a common degree, stored in canonical order:
/// marked fibers by increasing mark, then unmarked; ties by descending partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BranchingPattern {
    degree: u32,
    fibers: [Fiber; 3],
}

impl PartialOrd for BranchingPattern {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BranchingPattern {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |p: &BranchingPattern| {
            (
                p.degree,
                p.fibers.iter().map(Fiber::sort_key).collect::<Vec<_>>(),
            )
        };
        key(self).cmp(&key(other))
    }
}

impl BranchingPattern {
    pub fn new(fibers: [Fiber; 3]) -> Result<Self, PatternError> {
        let degree = fibers[0].sum();
        for (i, f) in fibers.iter().enumerate() {
            if f.sum() != degree || f.parts.is_empty() {
                return Err(PatternError::FiberSum {
                    fiber: i,
                    sum: f.sum(),
                    degree,
                });
            }
        }
        let mut fibers = fibers;
        fibers.sort_by_key(Fiber::sort_key);
        Ok(BranchingPattern { degree, fibers })
    }

    /// Unmarked pattern from three partitions.
    pub fn from_partitions(parts: [Vec<u32>; 3]) -> Result<Self, PatternError> {
        let [a, b, c] = parts;
        BranchingPattern::new([
            Fiber::new(None, a),
            Fiber::new(None, b),
            Fiber::new(None, c),
        ])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn fibers(&self) -> &[Fiber; 3] {
        &self.fibers
    }

    /// Partitions with marks stripped.
    pub fn partitions(&self) -> [Vec<u32>; 3] {
        self.fibers.clone().map(|f| f.parts)
    }

    /// Same partitions, no marks; the identity used for realizability.
    pub fn stripped(&self) -> BranchingPattern {
        BranchingPattern::from_partitions(self.partitions()).unwrap()
    }

    pub fn restriction_type(&self) -> Vec<u32> {
        self.fibers.iter().filter_map(|f| f.mark).collect()
    }

    pub fn unbracketed_count(&self) -> usize {
        self.fibers.iter().map(|f| f.unbracketed().len()).sum()
    }

    /// Restricted fibers get `1/k`; free fibers get `a`, `b`, `g` in order.
    pub fn default_base(&self) -> [ExponentForm; 3] {
        let mut next = 0;
        self.fibers.clone().map(|f| match f.mark {
            Some(k) => ExponentForm::reciprocal(k),
            None => {
                next += 1;
                ExponentForm::param(next - 1)
            }
        })
    }

    pub fn to_text(&self) -> String {
        let fs: Vec<String> = self.fibers.iter().map(Fiber::to_text).collect();
        fs.join("=")
    }

    pub fn parse(s: &str) -> Result<Self, PatternError> {
        let fs: Vec<&str> = s.split('=').collect();
        if fs.len() != 3 {
            return Err(PatternError::Parse(format!("need three fibers in {s:?}")));
        }
        BranchingPattern::new([
            Fiber::parse(fs[0])?,
            Fiber::parse(fs[1])?,
            Fiber::parse(fs[2])?,
        ])
    }
}

impl fmt::Display for BranchingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `2(D-1) - sum (e-1)` over all parts of all fibers.
pub fn hurwitz_defect(p: &BranchingPattern) -> i64 {
    let ramification: i64 = p
        .fibers
        .iter()
        .flat_map(|f| &f.parts)
        .map(|&e| e as i64 - 1)
        .sum();
    2 * (p.degree as i64 - 1) - ramification
}

/// Same quantity for bare partitions.
pub fn defect_of(parts: &[Vec<u32>; 3]) -> i64 {
    let d: u32 = parts[0].iter().sum();
    let ram: i64 = parts.iter().flatten().map(|&e| e as i64 - 1).sum();
    2 * (d as i64 - 1) - ram
}

/// All partitions of `n` in descending order, each one descending.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Belyi patterns of the given type and degree with exactly four unbracketed parts.
pub fn enumerate_patterns(
    ty: &RestrictionType,
    degree: u32,
) -> Result<Vec<BranchingPattern>, PatternError> {
    let dmax = enumerate_types()
        .into_iter()
        .find(|(t, _)| t == ty)
        .map(|(_, d)| d)
        .ok_or_else(|| PatternError::InadmissibleType(ty.label()))?;
    if degree < 2 || degree > dmax {
        return Err(PatternError::InadmissibleDegree {
            ty: ty.label(),
            degree,
        });
    }
    let marks: Vec<Option<u32>> = ty
        .ks()
        .iter()
        .map(|&k| Some(k))
        .chain(std::iter::repeat(None))
        .take(3)
        .collect();
    let parts = partitions(degree);
    let options: Vec<Vec<Fiber>> = marks
        .iter()
        .map(|&m| {
            parts
                .iter()
                .map(|p| Fiber::new(m, p.clone()))
                .filter(|f| m.is_none() || f.bracketed() > 0)
                .collect()
        })
        .collect();
    let mut found = BTreeSet::new();
    for a in &options[0] {
        for b in &options[1] {
            for c in &options[2] {
                let ub = a.unbracketed().len() + b.unbracketed().len() + c.unbracketed().len();
                let total = a.parts.len() + b.parts.len() + c.parts.len();
                if ub == 4 && total as u32 == degree + 2 {
                    found.insert(BranchingPattern::new([a.clone(), b.clone(), c.clone()])?);
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Every pattern over every admissible type and degree.
pub fn enumerate_all() -> Vec<(RestrictionType, BranchingPattern)> {
    let mut out = Vec::new();
    for (t, dmax) in enumerate_types() {
        for d in 2..=dmax {
            for p in enumerate_patterns(&t, d).unwrap() {
                out.push((t.clone(), p));
            }
        }
    }
    out
}

/// Transport the three base exponent differences to the pulled-back equation.
///
/// Returns the forms at unbracketed points and the `(fiber, part)` pairs that became ordinary.
pub fn derive_heun_exponents(
    base: &[ExponentForm; 3],
    p: &BranchingPattern,
) -> Result<(Vec<ExponentForm>, Vec<(usize, u32)>), PatternError> {
    let mut forms = Vec::new();
    let mut dropped = Vec::new();
    for (i, (f, b)) in p.fibers.iter().zip(base).enumerate() {
        if let Some(k) = f.mark {
            let want = ExponentForm::reciprocal(k);
            if f.bracketed() > 0 && *b != want {
                return Err(PatternError::BracketMismatch {
                    fiber: i,
                    k,
                    base: b.to_text(),
                });
            }
            dropped.extend(std::iter::repeat((i, k)).take(f.bracketed()));
        }
        for e in f.unbracketed() {
            forms.push(b.scale(&crate::exactalg::rat_int(e as i64)));
        }
    }
    if forms.len() != 4 {
        return Err(PatternError::ExponentCount(forms.len()));
    }
    Ok((forms, dropped))
}

/// Sorted copy, for order-insensitive comparison.
pub fn canonical_forms(forms: &[ExponentForm]) -> Vec<ExponentForm> {
    let mut v = forms.to_vec();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> RestrictionType {
        RestrictionType::parse(s).unwrap()
    }

    #[test]
    fn ten_types() {
        let ts = enumerate_types();
        let labels: Vec<(String, u32)> = ts.iter().map(|(t, d)| (t.label(), *d)).collect();
        let want = [
            ("()", 2),
            ("(2)", 4),
            ("(3)", 3),
            ("(2,3)", 12),
            ("(2,4)", 8),
            ("(2,5)", 6),
            ("(2,6)", 6),
            ("(3,3)", 6),
            ("(3,4)", 4),
            ("(4,4)", 4),
        ];
        assert_eq!(
            labels,
            want.iter()
                .map(|(s, d)| (s.to_string(), *d))
                .collect::<Vec<_>>()
        );
        assert_eq!(ty("(2)").admissible_degrees(), vec![3, 4]);
        assert!(RestrictionType::parse("(2,2)").is_err());
    }

    #[test]
    fn pattern_text_roundtrip() {
        let p = BranchingPattern::parse("[2]^6=[3]^4=9+1+1+1").unwrap();
        assert_eq!(p.to_text(), "[2]^6=[3]^4=9+1+1+1");
        let q = BranchingPattern::parse("9+1+1+1=[3]^4=[2]^6").unwrap();
        assert_eq!(p, q);
        assert_eq!(
            BranchingPattern::parse("[4]=[4]=1+1+1+1")
                .unwrap()
                .to_text(),
            "[4]=[4]=1+1+1+1"
        );
        assert_eq!(
            BranchingPattern::parse("[2]^1+1=2+1=3").unwrap().to_text(),
            "[2]+1=3=2+1"
        );
        assert!(BranchingPattern::parse("[2]+2=2+2=4").is_err());
        assert!(BranchingPattern::parse("2=1+1").is_err());
    }

    #[test]
    fn defects() {
        assert_eq!(
            hurwitz_defect(&BranchingPattern::parse("2=2=1+1").unwrap()),
            0
        );
        assert_eq!(
            hurwitz_defect(&BranchingPattern::parse("2=1+1=1+1").unwrap()),
            1
        );
        assert_eq!(
            hurwitz_defect(&BranchingPattern::parse("[2]^6=[3]^4=9+1+1+1").unwrap()),
            0
        );
    }

    #[test]
    fn exponents_quadratic() {
        let p = BranchingPattern::parse("1+1=2=2").unwrap();
        assert_eq!(p.to_text(), "2=2=1+1");
        let (forms, dropped) = derive_heun_exponents(&p.default_base(), &p).unwrap();
        let want: Vec<ExponentForm> = ["2a", "2b", "g", "g"]
            .iter()
            .map(|s| ExponentForm::parse(s).unwrap())
            .collect();
        assert_eq!(canonical_forms(&forms), canonical_forms(&want));
        assert!(dropped.is_empty());
    }

    #[test]
    fn bracket_needs_matching_base() {
        let p = BranchingPattern::parse("[2]^2=4=2+1+1").unwrap();
        let base = [
            ExponentForm::reciprocal(3),
            ExponentForm::param(0),
            ExponentForm::param(1),
        ];
        assert!(matches!(
            derive_heun_exponents(&base, &p),
            Err(PatternError::BracketMismatch { .. })
        ));
    }
}
