//! Regeneration of the pattern tables and the diff against the fixture.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::belyi::CoveringRecord;
use crate::lemmas::{nonexistence_search, Status};
use crate::monodromy::{block_systems, count_triples};
use crate::patterns::{canonical_forms, derive_heun_exponents, enumerate_all, BranchingPattern, ExponentForm, RestrictionType};

use super::fixture::{TableFixture, TableRow};
use super::report::{Check, CheckStatus, RunReport};
use super::ShellError;

pub const EXPECTED_ROWS: usize = 89;
pub const EXPECTED_COVERINGS: usize = 61;
pub const EXPECTED_COMPOSITE: usize = 28;
/// Coverings counted with their conjugates.
pub const EXPECTED_WEIGHTED: usize = 50;
/// Distinct unrealizable triples; one of them occurs in two rows.
pub const EXPECTED_UNREALIZABLE: usize = 27;

/// One pattern as computed from scratch.
#[derive(Clone, Debug, Serialize)]
pub struct RegeneratedRow {
    #[serde(rename = "type")]
    pub ty: String,
    pub pattern: String,
    pub degree: u32,
    pub heun: Vec<String>,
    pub raw_count: String,
    pub orbit_count: usize,
    /// Catalog id for realizable patterns, fixture id for unrealizable ones.
    pub covering: Option<String>,
    pub verdict: Status,
    /// Whether the monodromy is imprimitive; `None` without a covering.
    pub composite: Option<bool>,
    #[serde(skip)]
    pub forms: Vec<ExponentForm>,
    #[serde(skip)]
    pub key: (RestrictionType, BranchingPattern),
}

fn regenerate_one(
    ty: &RestrictionType,
    p: &BranchingPattern,
    catalog: &[CoveringRecord],
    fixture: &TableFixture,
) -> Result<RegeneratedRow, ShellError> {
    let (forms, _) = derive_heun_exponents(&p.default_base(), p).map_err(|e| ShellError::Module(e.to_string()))?;
    let count = count_triples(&p.partitions()).map_err(|e| ShellError::Module(e.to_string()))?;
    let verdict = nonexistence_search(ty, p, false).status;
    let stripped = p.stripped();
    let covering = if count.orbit_count > 0 {
        catalog.iter().find(|r| r.pattern.stripped() == stripped).map(|r| r.id.clone())
    } else {
        fixture.unrealizable.iter().find(|r| r.pattern.stripped() == stripped).map(|r| r.id.clone())
    };
    let composite = match count.representatives.first() {
        Some(rep) => Some(!block_systems(rep).map_err(|e| ShellError::Module(e.to_string()))?.is_primitive()),
        None => None,
    };
    Ok(RegeneratedRow {
        ty: ty.label(),
        pattern: p.to_text(),
        degree: p.degree(),
        heun: forms.iter().map(ExponentForm::to_text).collect(),
        raw_count: count.raw_count.to_string(),
        orbit_count: count.orbit_count,
        covering,
        verdict,
        composite,
        forms,
        key: (ty.clone(), p.clone()),
    })
}

/// Enumerate every pattern and compute exponents, realizability, verdict and decomposability.
pub fn regenerate_rows(catalog: &[CoveringRecord], fixture: &TableFixture) -> Result<Vec<RegeneratedRow>, ShellError> {
    enumerate_all().par_iter().map(|(t, p)| regenerate_one(t, p, catalog, fixture)).collect()
}

/// Equal as multisets after some renaming of the free parameters.
pub fn forms_match(a: &[ExponentForm], b: &[ExponentForm]) -> bool {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let target = canonical_forms(b);
    PERMS.iter().any(|&perm| {
        let moved: Vec<ExponentForm> = a.iter().map(|f| f.permute_params(perm)).collect();
        canonical_forms(&moved) == target
    })
}

fn row_diffs(row: &TableRow, got: &RegeneratedRow) -> Vec<String> {
    let mut diffs = Vec::new();
    if !forms_match(&row.heun, &got.forms) {
        let want: Vec<String> = row.heun.iter().map(ExponentForm::to_text).collect();
        diffs.push(format!("exponents {} vs {}", want.join(","), got.heun.join(",")));
    }
    if got.covering.as_deref() != Some(row.covering.as_str()) {
        diffs.push(format!("covering {} vs {:?}", row.covering, got.covering));
    }
    let expected_orbits = usize::from(row.realizable());
    if (got.orbit_count > 0) != (expected_orbits > 0) {
        diffs.push(format!("orbit count {}", got.orbit_count));
    }
    let refuted = got.verdict == Status::Nonexistent;
    if refuted == row.realizable() {
        diffs.push(format!("verdict {:?}", got.verdict));
    }
    if row.realizable() && got.composite != Some(row.composite()) {
        diffs.push(format!("composite {:?} vs {}", got.composite, row.composite()));
    }
    diffs
}

/// Diff regenerated rows against the fixture.
pub fn compare_tables(fixture: &TableFixture, rows: &[RegeneratedRow]) -> RunReport {
    let mut checks = Vec::new();
    let by_key: BTreeMap<(RestrictionType, BranchingPattern), &RegeneratedRow> =
        rows.iter().map(|r| (r.key.clone(), r)).collect();
    let fixture_keys: Vec<(RestrictionType, BranchingPattern)> =
        fixture.rows.iter().map(|r| (r.ty.clone(), r.pattern.clone())).collect();
    let missing: Vec<String> = fixture_keys
        .iter()
        .filter(|k| !by_key.contains_key(*k))
        .map(|(t, p)| format!("{t} {p}"))
        .collect();
    let extra: Vec<String> = rows
        .iter()
        .filter(|r| !fixture_keys.contains(&r.key))
        .map(|r| format!("{} {}", r.ty, r.pattern))
        .collect();
    let ok = rows.len() == EXPECTED_ROWS && fixture.rows.len() == EXPECTED_ROWS && missing.is_empty() && extra.is_empty();
    checks.push(
        Check::new("tables/patterns", CheckStatus::from_ok(ok), format!("{} patterns regenerated, {} in fixture", rows.len(), fixture.rows.len()))
            .with_data(json!({ "missing": missing, "extra": extra })),
    );

    let mut mismatches = Vec::new();
    for row in &fixture.rows {
        if let Some(got) = by_key.get(&(row.ty.clone(), row.pattern.clone())) {
            let diffs = row_diffs(row, got);
            if !diffs.is_empty() {
                mismatches.push(json!({ "pattern": row.pattern.to_text(), "type": row.ty.label(), "diffs": diffs }));
            }
        }
    }
    checks.push(
        Check::new(
            "tables/rows",
            CheckStatus::from_ok(mismatches.is_empty()),
            format!("{} of {} rows agree", fixture.rows.len() - mismatches.len(), fixture.rows.len()),
        )
        .with_data(json!({ "mismatches": mismatches })),
    );

    for (i, row) in fixture.rows.iter().enumerate().filter(|(_, r)| r.note.is_some()) {
        checks.push(Check::new(
            format!("tables/discrepancy/table{}-row{}", row.table, position_in_table(fixture, i)),
            CheckStatus::Warn,
            format!("{}: {}", row.pattern, row.note.as_deref().unwrap_or_default()),
        ));
    }

    let with_id = rows.iter().filter(|r| r.covering.as_deref().is_some_and(|c| c.starts_with('H'))).count();
    checks.push(Check::new(
        "tables/coverings",
        CheckStatus::from_ok(with_id == EXPECTED_COVERINGS),
        format!("{with_id} rows with a covering (expected {EXPECTED_COVERINGS})"),
    ));
    let composite = rows.iter().filter(|r| r.composite == Some(true)).count();
    checks.push(Check::new(
        "tables/composite",
        CheckStatus::from_ok(composite == EXPECTED_COMPOSITE),
        format!("{composite} rows with imprimitive monodromy (expected {EXPECTED_COMPOSITE})"),
    ));

    let mut distinct: BTreeMap<BranchingPattern, usize> = BTreeMap::new();
    for r in rows {
        distinct.insert(r.key.1.stripped(), r.orbit_count);
    }
    let weighted: usize = distinct.values().sum();
    let unrealizable = distinct.values().filter(|&&c| c == 0).count();
    let doubled: Vec<String> = rows
        .iter()
        .filter(|r| r.orbit_count == 2)
        .filter_map(|r| r.covering.clone())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let single = distinct.values().all(|&c| c <= 2) && doubled.len() == 2;
    checks.push(
        Check::new(
            "tables/realizability",
            CheckStatus::from_ok(weighted == EXPECTED_WEIGHTED && unrealizable == EXPECTED_UNREALIZABLE && single),
            format!("{} distinct triples, {unrealizable} unrealizable, {weighted} orbits in all", distinct.len()),
        )
        .with_data(json!({ "two_orbits": doubled })),
    );
    RunReport::new(checks)
}

fn position_in_table(fixture: &TableFixture, index: usize) -> usize {
    let table = fixture.rows[index].table;
    fixture.rows[..=index].iter().filter(|r| r.table == table).count()
}

/// Regenerate the tables and diff them against the fixture.
pub fn reproduce_tables(fixture: &TableFixture, catalog: &[CoveringRecord]) -> Result<RunReport, ShellError> {
    let rows = regenerate_rows(catalog, fixture)?;
    Ok(compare_tables(fixture, &rows))
}
