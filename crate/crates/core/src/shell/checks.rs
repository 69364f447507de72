//! Individual reproduction checks over the catalog, the tables and the degree-24 data.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::json;

use crate::belyi::{check_composition_claim, solve_belyi, verify_catalog, verify_covering, BelyiError, CoveringRecord};
use crate::charcount::{frobenius_count_with, CharCache};
use crate::lemmas::{nonexistence_search, replay, Status};
use crate::monodromy::{count_triples, dessin};
use crate::mp24::{mp_report_with, ListedStatus, Resolution};
use crate::patterns::{BranchingPattern, RestrictionType};

use super::fixture::TableFixture;
use super::report::{Check, CheckStatus};

pub const EXPECTED_CATALOG: usize = 48;
pub const MP_PARTITIONS: usize = 199;
pub const MP_SIGMA_ZERO: usize = 47;
pub const MP_DIRECT: usize = 48;
pub const MP_GAUGE: usize = 14;

/// Distinct unmarked patterns of the table rows, with one marked row each.
pub fn distinct_patterns(fixture: &TableFixture) -> BTreeMap<BranchingPattern, BranchingPattern> {
    let mut out = BTreeMap::new();
    for r in &fixture.rows {
        out.entry(r.pattern.stripped()).or_insert_with(|| r.pattern.clone());
    }
    out
}

fn fail_list(name: &str, total: usize, what: &str, failures: Vec<String>) -> Check {
    Check::new(name, CheckStatus::from_ok(failures.is_empty()), format!("{} of {total} {what}", total - failures.len()))
        .with_data(json!({ "failures": failures }))
}

pub fn check_catalog(catalog: &[CoveringRecord]) -> Vec<Check> {
    let report = verify_catalog(catalog);
    let failures: Vec<String> = report
        .rows
        .iter()
        .filter_map(|(id, r)| r.as_ref().err().map(|e| format!("{id}: {e}")))
        .collect();
    let fields: Vec<String> =
        catalog.iter().filter(|r| r.field.tag() != "Q").map(|r| format!("{} over {}", r.id, r.field.tag())).collect();
    let ok = failures.is_empty() && catalog.len() == EXPECTED_CATALOG;
    vec![Check::new(
        "catalog/verify",
        CheckStatus::from_ok(ok),
        format!("{} of {} coverings verified, {} with conjugates", report.passed, catalog.len(), report.weighted),
    )
    .with_data(json!({ "failures": failures, "extension_fields": fields }))]
}

pub fn check_compositions(catalog: &[CoveringRecord]) -> Vec<Check> {
    let results: Vec<Result<_, BelyiError>> = catalog.par_iter().map(check_composition_claim).collect();
    let mut failures = Vec::new();
    let mut unmatched = Vec::new();
    for (rec, res) in catalog.iter().zip(results) {
        match res {
            Ok(rep) if rep.consistent => {
                for (alt, ok) in &rep.alternatives {
                    if !ok {
                        unmatched.push(format!("{}: {:?}", rec.id, alt));
                    }
                }
            }
            Ok(rep) => failures.push(format!("{}: claim {:?}, block sizes {:?}", rec.id, rep.claim, rep.block_sizes)),
            Err(e) => failures.push(format!("{}: {e}", rec.id)),
        }
    }
    let mut checks = vec![fail_list("catalog/composition", catalog.len(), "composition claims agree with block systems", failures)];
    if !unmatched.is_empty() {
        checks.push(
            Check::new("catalog/factor-degrees", CheckStatus::Warn, format!("{} claimed factorizations without a block chain", unmatched.len()))
                .with_data(json!({ "unmatched": unmatched })),
        );
    }
    checks
}

/// Character-sum counts against exhaustive counts on every table triple up to `max_degree`.
pub fn check_cross_oracle(fixture: &TableFixture, cache: &CharCache, max_degree: u32) -> Vec<Check> {
    let patterns: Vec<BranchingPattern> =
        distinct_patterns(fixture).into_keys().filter(|p| p.degree() <= max_degree).collect();
    let failures: Vec<String> = patterns
        .par_iter()
        .filter_map(|p| {
            let parts = p.partitions();
            let exhaustive = count_triples(&parts).map(|c| BigUint::from(c.raw_count));
            let formula = frobenius_count_with(cache, &parts[0], &parts[1], &parts[2]);
            match (exhaustive, formula) {
                (Ok(a), Ok(b)) if a == b => None,
                (a, b) => Some(format!("{p}: exhaustive {a:?}, character sum {b:?}")),
            }
        })
        .collect();
    let name = if max_degree == u32::MAX { "oracle/all".to_string() } else { format!("oracle/degree-le-{max_degree}") };
    vec![fail_list(
        &name,
        patterns.len(),
        "triples where both counts agree",
        failures,
    )]
}

pub fn check_dessins(fixture: &TableFixture) -> Vec<Check> {
    let patterns: Vec<BranchingPattern> = distinct_patterns(fixture).into_keys().collect();
    let per: Vec<(usize, Vec<String>)> = patterns
        .par_iter()
        .map(|p| {
            let parts = p.partitions();
            let Ok(count) = count_triples(&parts) else {
                return (0, vec![format!("{p}: not enumerable")]);
            };
            let bad = count
                .representatives
                .iter()
                .filter(|t| {
                    let d = dessin(t);
                    d.genus != Some(0) || [d.black_orders(), d.white_orders(), d.face_orders()] != parts
                })
                .map(|_| format!("{p}: dessin inconsistent"))
                .collect();
            (count.representatives.len(), bad)
        })
        .collect();
    let total: usize = per.iter().map(|(n, _)| n).sum();
    let failures: Vec<String> = per.into_iter().flat_map(|(_, b)| b).collect();
    vec![fail_list("dessins/genus-zero", total, "dessins planar with matching valencies", failures)]
}

/// Solver output against orbit counts for table patterns up to `max_degree`.
pub fn check_solver(fixture: &TableFixture, max_degree: u32) -> Vec<Check> {
    let patterns: Vec<BranchingPattern> =
        distinct_patterns(fixture).into_keys().filter(|p| p.degree() <= max_degree).collect();
    let failures: Vec<String> = patterns
        .par_iter()
        .filter_map(|p| {
            let orbits = match count_triples(&p.partitions()) {
                Ok(c) => c.orbit_count,
                Err(e) => return Some(format!("{p}: {e}")),
            };
            match solve_belyi(p) {
                Ok(rep) if rep.maps.len() != orbits => Some(format!("{p}: {} solutions, {orbits} orbits", rep.maps.len())),
                Ok(rep) => rep
                    .maps
                    .iter()
                    .find_map(|m| verify_covering(m, p).err().map(|e| format!("{p}: {} fails: {e}", m.to_text()))),
                Err(BelyiError::NoSolution) if orbits == 0 => None,
                Err(e) => Some(format!("{p}: {e} with {orbits} orbits")),
            }
        })
        .collect();
    vec![fail_list(&format!("solver/degree-le-{max_degree}"), patterns.len(), "patterns solved with the expected count", failures)]
}

pub fn check_unrealizable(fixture: &TableFixture) -> Vec<Check> {
    let failures: Vec<String> = fixture
        .unrealizable
        .par_iter()
        .filter_map(|row| {
            let Ok(ty) = RestrictionType::new(row.pattern.restriction_type()) else {
                return Some(format!("{}: inadmissible type", row.id));
            };
            let v = nonexistence_search(&ty, &row.pattern, true);
            if v.status != Status::Nonexistent {
                return Some(format!("{}: undecided", row.id));
            }
            if !v.chain.iter().all(replay) {
                return Some(format!("{}: certificate does not replay", row.id));
            }
            let named = v.chain.iter().any(|c| c.rule == row.rule && c.profile.singular() == row.differences);
            (!named).then(|| format!("{}: no {} certificate with the listed differences", row.id, row.rule))
        })
        .collect();
    vec![fail_list("nonexist/unrealizable", fixture.unrealizable.len(), "unrealizable patterns refuted by the listed rule", failures)]
}

pub fn check_mp24(cache: &CharCache) -> Vec<Check> {
    let report = match mp_report_with(cache) {
        Ok(r) => r,
        Err(e) => return vec![Check::new("mp24/report", CheckStatus::Fail, e.to_string())],
    };
    let t = &report.totals;
    let listed = |s: ListedStatus| report.records.iter().filter(move |r| r.listed_status == s);
    let direct_missed: Vec<String> = listed(ListedStatus::NonexistentDirect)
        .filter(|r| r.resolution != Resolution::Direct)
        .map(|r| format!("{:?}", r.partition))
        .collect();
    let gauge_listed = listed(ListedStatus::NonexistentGauge).count();
    let gauge_missed: Vec<String> = listed(ListedStatus::NonexistentGauge)
        .filter(|r| r.resolution == Resolution::Undecided)
        .map(|r| format!("{:?}", r.partition))
        .collect();
    let direct_listed = listed(ListedStatus::NonexistentDirect).count();
    let mut checks = vec![
        Check::new("mp24/partitions", CheckStatus::from_ok(t.partitions == MP_PARTITIONS), format!("{} partitions", t.partitions))
            .with_data(json!({ "totals": t })),
        Check::new("mp24/sigma-zero", CheckStatus::from_ok(t.sigma_zero == MP_SIGMA_ZERO), format!("{} with vanishing character sum", t.sigma_zero)),
        Check::new(
            "mp24/direct",
            CheckStatus::from_ok(direct_missed.is_empty() && direct_listed == MP_DIRECT),
            format!("{} of {direct_listed} listed partitions refuted directly", direct_listed - direct_missed.len()),
        )
        .with_data(json!({ "missed": direct_missed })),
        Check::new(
            "mp24/gauge",
            CheckStatus::from_ok(gauge_missed.is_empty() && gauge_listed == MP_GAUGE),
            format!("{} of {gauge_listed} listed partitions refuted with gauge parity", gauge_listed - gauge_missed.len()),
        )
        .with_data(json!({ "missed": gauge_missed })),
        Check::new(
            "mp24/realized",
            CheckStatus::from_ok(report.violations.is_empty()),
            format!("{} realized partitions refuted", report.violations.len()),
        )
        .with_data(json!({ "violations": report.violations })),
    ];
    if !report.warnings.is_empty() {
        checks.push(
            Check::new("mp24/lists", CheckStatus::Warn, format!("{} disagreements with the transcribed lists", report.warnings.len()))
                .with_data(json!({ "warnings": report.warnings })),
        );
    }
    checks
}
