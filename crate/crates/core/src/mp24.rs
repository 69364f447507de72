//! Degree-24 branch data `[2]^12=[3]^8=P` with `P` of six parts: character sums and refutations.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::charcount::{frobenius_count_with, CharCache, CharError};
use crate::exactalg::rat;
use crate::lemmas::{pulled_back_profile, refutations, Rule, SingularityProfile};

pub const MP_DEGREE: u32 = 24;
pub const MP_PARTS: usize = 6;
/// Largest denominator tried on the third fiber.
pub const MAX_SPECIALIZATION: u32 = 6;

const FIXTURE_TEXT: &str = include_str!("../data/mp24.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ListedStatus {
    Exists,
    NonexistentDirect,
    NonexistentGauge,
    NonexistentOther,
    Open,
}

impl ListedStatus {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "exists" => ListedStatus::Exists,
            "nonexistent-direct" => ListedStatus::NonexistentDirect,
            "nonexistent-gauge" => ListedStatus::NonexistentGauge,
            "nonexistent-other" => ListedStatus::NonexistentOther,
            "open" => ListedStatus::Open,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureEntry {
    pub status: ListedStatus,
    pub argument: String,
    pub sigma_zero: bool,
    /// Descending parts.
    pub partition: Vec<u32>,
    /// Denominator of the specialization singled out by the bracket notation.
    pub marked: Option<u32>,
}

#[derive(Debug, thiserror::Error)]
pub enum MpError {
    #[error("fixture line {line}: {msg}")]
    Fixture { line: usize, msg: String },
    #[error(transparent)]
    Char(#[from] CharError),
}

/// `a+b+[k]^n+...`; returns parts and the bracketed value.
pub fn parse_marked_partition(s: &str) -> Option<(Vec<u32>, Option<u32>)> {
    let mut parts = Vec::new();
    let mut marked = None;
    for term in s.trim().trim_end_matches('.').split('+') {
        let term = term.trim();
        if let Some(rest) = term.strip_prefix('[') {
            let (k, n) = rest.split_once("]^")?;
            let (k, n): (u32, usize) = (k.parse().ok()?, n.parse().ok()?);
            if marked.is_some_and(|m| m != k) {
                return None;
            }
            marked = Some(k);
            parts.extend(std::iter::repeat(k).take(n));
        } else {
            parts.push(term.parse().ok()?);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Some((parts, marked))
}

pub fn parse_fixture(text: &str) -> Result<Vec<FixtureEntry>, MpError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| MpError::Fixture { line: i + 1, msg: msg.to_string() };
        let f: Vec<&str> = line.split('|').map(str::trim).collect();
        if f.len() != 4 {
            return Err(err("expected four fields"));
        }
        let status = ListedStatus::parse(f[0]).ok_or_else(|| err("unknown status"))?;
        let sigma_zero = match f[2] {
            "zero" => true,
            "nonzero" => false,
            _ => return Err(err("character sum must be zero or nonzero")),
        };
        let (partition, marked) = parse_marked_partition(f[3]).ok_or_else(|| err("bad partition"))?;
        if partition.len() != MP_PARTS || partition.iter().sum::<u32>() != MP_DEGREE {
            return Err(err("not a six-part partition of 24"));
        }
        out.push(FixtureEntry { status, argument: f[1].to_string(), sigma_zero, partition, marked });
    }
    Ok(out)
}

pub fn builtin_fixture() -> Vec<FixtureEntry> {
    parse_fixture(FIXTURE_TEXT).expect("bundled fixture parses")
}

/// All partitions of 24 into six parts, descending parts, reverse lexicographic order.
pub fn enumerate_mp_partitions() -> Vec<Vec<u32>> {
    fn rec(left: u32, slots: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = max.min(left + 1 - slots as u32);
        for p in (1..=hi).rev() {
            if p * (slots as u32) < left {
                break;
            }
            cur.push(p);
            rec(left - p, slots - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(MP_DEGREE, MP_PARTS, MP_DEGREE, &mut Vec::new(), &mut out);
    out
}

/// Outcome of pulling back `(1/2, 1/3, 1/k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Route {
    pub k: u32,
    /// Absent when the base has a possibly logarithmic integer point.
    pub profile: Option<SingularityProfile>,
    pub rules: Vec<Rule>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Resolution {
    Direct,
    Gauge,
    Undecided,
}

fn ser_big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MpRecord {
    pub partition: Vec<u32>,
    #[serde(serialize_with = "ser_big")]
    pub sigma_raw: BigUint,
    pub routes: Vec<Route>,
    pub resolution: Resolution,
    pub listed_status: ListedStatus,
}

pub fn mp_fibers(p: &[u32]) -> [Vec<u32>; 3] {
    [vec![2; 12], vec![3; 8], p.to_vec()]
}

/// Lemma routes only, without the character sum.
pub fn mp_routes(p: &[u32]) -> (Vec<Route>, Resolution) {
    let parts = mp_fibers(p);
    let routes: Vec<Route> = (1..=MAX_SPECIALIZATION)
        .map(|k| {
            let base = [rat(1, 2), rat(1, 3), rat(1, k as i64)];
            let profile = pulled_back_profile(&parts, &base);
            let rules = profile.as_ref().map(refutations).unwrap_or_default();
            Route { k, profile, rules }
        })
        .collect();
    let all: Vec<Rule> = routes.iter().flat_map(|r| r.rules.iter().copied()).collect();
    let resolution = if all.iter().any(|&r| r != Rule::GaugeParity) {
        Resolution::Direct
    } else if all.is_empty() {
        Resolution::Undecided
    } else {
        Resolution::Gauge
    };
    (routes, resolution)
}

fn listed_status(fixture: &[FixtureEntry], p: &[u32]) -> ListedStatus {
    fixture.iter().find(|e| e.partition == p).map_or(ListedStatus::Exists, |e| e.status)
}

pub fn classify_mp_with(cache: &CharCache, fixture: &[FixtureEntry], p: &[u32]) -> Result<MpRecord, MpError> {
    let fibers = mp_fibers(p);
    let sigma_raw = frobenius_count_with(cache, &fibers[0], &fibers[1], &fibers[2])?;
    let (routes, resolution) = mp_routes(p);
    Ok(MpRecord { partition: p.to_vec(), sigma_raw, routes, resolution, listed_status: listed_status(fixture, p) })
}

pub fn classify_mp(p: &[u32]) -> Result<MpRecord, MpError> {
    classify_mp_with(&CharCache::new(), &builtin_fixture(), p)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MpTotals {
    pub partitions: usize,
    pub sigma_zero: usize,
    pub direct: usize,
    pub with_gauge: usize,
    pub listed_nonexistent: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MpReport {
    pub totals: MpTotals,
    pub records: Vec<MpRecord>,
    /// Disagreements between the engine and the transcribed lists.
    pub warnings: Vec<String>,
    /// Refutations of realized data; any entry means an unsound rule.
    pub violations: Vec<String>,
}

fn text(p: &[u32]) -> String {
    p.iter().map(u32::to_string).collect::<Vec<_>>().join("+")
}

pub fn mp_report_with(cache: &CharCache) -> Result<MpReport, MpError> {
    let fixture = builtin_fixture();
    let records = enumerate_mp_partitions()
        .par_iter()
        .map(|p| classify_mp_with(cache, &fixture, p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut totals = MpTotals { partitions: records.len(), ..Default::default() };
    let mut warnings = Vec::new();
    let mut violations = Vec::new();
    for r in &records {
        let zero = r.sigma_raw.is_zero();
        totals.sigma_zero += zero as usize;
        totals.direct += (r.resolution == Resolution::Direct) as usize;
        totals.with_gauge += (r.resolution != Resolution::Undecided) as usize;
        totals.listed_nonexistent += (r.listed_status != ListedStatus::Exists) as usize;
        let t = text(&r.partition);
        if let Some(e) = fixture.iter().find(|e| e.partition == r.partition) {
            if e.sigma_zero != zero {
                warnings.push(format!("{t}: listed with character sum {} but computed {}", if e.sigma_zero { "zero" } else { "nonzero" }, r.sigma_raw));
            }
        }
        match (r.listed_status, r.resolution) {
            (ListedStatus::Exists, Resolution::Direct | Resolution::Gauge) => violations.push(format!("{t}: realized but refuted")),
            (ListedStatus::Exists, _) if zero => violations.push(format!("{t}: realized but the character sum vanishes")),
            (ListedStatus::NonexistentDirect, res) if res != Resolution::Direct => {
                warnings.push(format!("{t}: listed as refuted directly, engine says {res:?}"))
            }
            (ListedStatus::NonexistentGauge, Resolution::Undecided) => warnings.push(format!("{t}: listed as refuted by gauge parity, engine undecided")),
            (ListedStatus::NonexistentGauge, Resolution::Direct) => warnings.push(format!("{t}: listed under gauge parity, engine refutes directly")),
            (ListedStatus::Open, res) if res != Resolution::Undecided => {
                warnings.push(format!("{t}: left open in the lists, engine finds {res:?}"))
            }
            (ListedStatus::NonexistentOther, Resolution::Undecided) => warnings.push(format!("{t}: listed as refuted, engine undecided")),
            _ => {}
        }
    }
    Ok(MpReport { totals, records, warnings, violations })
}

pub fn mp_report() -> Result<MpReport, MpError> {
    mp_report_with(&CharCache::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_count() {
        let all = enumerate_mp_partitions();
        assert_eq!(all.len(), 199);
        assert!(all.contains(&vec![9, 9, 2, 2, 1, 1]));
        assert!(all.contains(&vec![10, 6, 4, 2, 1, 1]));
        assert!(all.iter().all(|p| p.len() == 6 && p.iter().sum::<u32>() == 24));
    }

    #[test]
    fn fixture_counts() {
        let f = builtin_fixture();
        assert_eq!(f.len(), 87);
        let count = |s| f.iter().filter(|e| e.status == s).count();
        assert_eq!(count(ListedStatus::NonexistentDirect), 48);
        assert_eq!(count(ListedStatus::NonexistentGauge), 14);
        assert_eq!(count(ListedStatus::Open), 24);
        let mut ps: Vec<_> = f.iter().map(|e| e.partition.clone()).collect();
        ps.sort();
        ps.dedup();
        assert_eq!(ps.len(), 87);
    }

    #[test]
    fn marked_partition_text() {
        assert_eq!(parse_marked_partition("14+[2]^5"), Some((vec![14, 2, 2, 2, 2, 2], Some(2))));
        assert_eq!(parse_marked_partition("9+6+6+1+1+1"), Some((vec![9, 6, 6, 1, 1, 1], None)));
        assert_eq!(parse_marked_partition("[2]^2+[3]^1"), None);
    }

    #[test]
    fn single_point_route() {
        let (routes, res) = mp_routes(&[14, 2, 2, 2, 2, 2]);
        assert_eq!(res, Resolution::Direct);
        let r = &routes[1];
        assert_eq!(r.k, 2);
        assert_eq!(r.profile.as_ref().unwrap().to_text(), "(7)");
        assert_eq!(r.rules[0], Rule::SingleSingularity);
    }

    #[test]
    fn realized_and_remaining() {
        assert_eq!(mp_routes(&[10, 6, 4, 2, 1, 1]).1, Resolution::Undecided);
        assert_eq!(mp_routes(&[7, 7, 6, 2, 1, 1]).1, Resolution::Undecided);
    }
}
