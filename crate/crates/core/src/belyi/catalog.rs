//! The covering catalog: parsing, bulk verification and decomposition checks.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{verify_covering, BelyiError, FiberAssignment};
use crate::exactalg::{Field, Poly, RatFun};
use crate::monodromy::{block_systems, count_triples};
use crate::patterns::BranchingPattern;

pub const CATALOG_TEXT: &str = include_str!("../../data/catalog.txt");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringMeta {
    /// Factor degrees joined by `·` (composition) or `×` (Galois), or `indecomposable`.
    pub composition: String,
    /// 2 when the covering comes with a complex-conjugate partner.
    pub conjugates: u32,
    /// Part of the elliptic-surface list.
    pub herfurtner: bool,
}

#[derive(Clone, Debug)]
pub struct CoveringRecord {
    pub id: String,
    pub degree: u32,
    pub pattern: BranchingPattern,
    pub field: Field,
    pub map: RatFun,
    pub meta: CoveringMeta,
}

impl CoveringRecord {
    pub fn number(&self) -> u32 {
        self.id.trim_start_matches('H').parse().unwrap_or(0)
    }
}

fn parse_line(line: &str, no: usize) -> Result<CoveringRecord, BelyiError> {
    let err = |msg: String| BelyiError::Parse { line: no, msg };
    let cols: Vec<&str> = line.splitn(7, '|').map(str::trim).collect();
    if cols.len() != 7 {
        return Err(err(format!("expected 7 columns, found {}", cols.len())));
    }
    let id = cols[0].to_string();
    let ctx = |m: String| err(format!("{id}: {m}"));
    let degree: u32 = cols[1].parse().map_err(|_| ctx(format!("bad degree {:?}", cols[1])))?;
    let pattern = BranchingPattern::parse(cols[2]).map_err(|e| ctx(e.to_string()))?;
    if pattern.degree() != degree {
        return Err(ctx(format!("pattern degree {} differs from {degree}", pattern.degree())));
    }
    let field = Field::from_tag(cols[3]).map_err(|e| ctx(e.to_string()))?;
    let num = Poly::parse(cols[4], field).map_err(|e| ctx(e.to_string()))?;
    let den = Poly::parse(cols[5], field).map_err(|e| ctx(e.to_string()))?;
    let map = RatFun::new(num, den).map_err(|e| ctx(e.to_string()))?;
    let meta: CoveringMeta = serde_json::from_str(cols[6]).map_err(|e| ctx(e.to_string()))?;
    Ok(CoveringRecord { id, degree, pattern, field, map, meta })
}

/// Parse catalog text; `#` starts a comment line.
pub fn parse_catalog(text: &str) -> Result<Vec<CoveringRecord>, BelyiError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_line(l, i + 1))
        .collect()
}

pub fn load_catalog(path: &Path) -> Result<Vec<CoveringRecord>, BelyiError> {
    let text = std::fs::read_to_string(path).map_err(|e| BelyiError::Parse { line: 0, msg: e.to_string() })?;
    parse_catalog(&text)
}

pub fn builtin_catalog() -> Vec<CoveringRecord> {
    parse_catalog(CATALOG_TEXT).expect("bundled catalog parses")
}

#[derive(Clone, Debug)]
pub struct CatalogReport {
    pub rows: Vec<(String, Result<FiberAssignment, BelyiError>)>,
    pub passed: usize,
    /// Sum of conjugate counts.
    pub weighted: u32,
}

impl CatalogReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.rows.len()
    }
}

pub fn verify_catalog(records: &[CoveringRecord]) -> CatalogReport {
    let rows: Vec<(String, Result<FiberAssignment, BelyiError>)> =
        records.par_iter().map(|r| (r.id.clone(), verify_covering(&r.map, &r.pattern))).collect();
    let passed = rows.iter().filter(|(_, r)| r.is_ok()).count();
    let weighted = records.iter().map(|r| r.meta.conjugates).sum();
    CatalogReport { rows, passed, weighted }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompositionReport {
    pub id: String,
    pub claim: String,
    pub claimed_decomposable: bool,
    /// Block sizes of the nontrivial block systems, per representative.
    pub block_sizes: Vec<Vec<usize>>,
    /// Factor multisets achievable by chains of block systems (first representative).
    pub factorizations: Vec<Vec<u32>>,
    /// Each claimed factor multiset and whether a block chain realizes it.
    pub alternatives: Vec<(Vec<u32>, bool)>,
    /// Decomposability agrees with the block structure for every representative.
    pub consistent: bool,
}

fn claimed_factors(claim: &str) -> Vec<Vec<u32>> {
    if claim.trim() == "indecomposable" {
        return Vec::new();
    }
    claim
        .split(',')
        .map(|alt| {
            let mut fs: Vec<u32> = alt
                .split(['·', '×'])
                .filter_map(|t| t.trim().trim_end_matches("_H").parse().ok())
                .collect();
            fs.sort_unstable_by(|a, b| b.cmp(a));
            fs
        })
        .collect()
}

/// Compare the record's composition string with block systems of its monodromy.
pub fn check_composition_claim(record: &CoveringRecord) -> Result<CompositionReport, BelyiError> {
    let parts = record.pattern.partitions();
    let count = count_triples(&parts).map_err(|_| BelyiError::NoRepresentative)?;
    if count.representatives.is_empty() {
        return Err(BelyiError::NoRepresentative);
    }
    let alts = claimed_factors(&record.meta.composition);
    let claimed_decomposable = !alts.is_empty();
    let mut block_sizes = Vec::new();
    let mut consistent = true;
    let mut factorizations = Vec::new();
    for (k, rep) in count.representatives.iter().enumerate() {
        let report = block_systems(rep).map_err(|_| BelyiError::NoRepresentative)?;
        block_sizes.push(report.systems.iter().map(|s| s.block_size()).collect());
        consistent &= report.is_primitive() != claimed_decomposable;
        if k == 0 {
            factorizations = report.factorizations.into_iter().collect();
        }
    }
    let alternatives = alts.into_iter().map(|a| {
        let ok = factorizations.contains(&a);
        (a, ok)
    });
    Ok(CompositionReport {
        id: record.id.clone(),
        claim: record.meta.composition.clone(),
        claimed_decomposable,
        block_sizes,
        alternatives: alternatives.collect(),
        factorizations,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claims_parse() {
        assert_eq!(claimed_factors("4·3, 3·2_H·2_H"), vec![vec![4, 3], vec![3, 2, 2]]);
        assert_eq!(claimed_factors("2×2×2"), vec![vec![2, 2, 2]]);
        assert!(claimed_factors("indecomposable").is_empty());
    }

    #[test]
    fn bad_line_is_located() {
        let text = "# header\nH1 | 2 | 2=2=1+1 | Q | [0, 0, 1] | [1]\n";
        assert!(matches!(parse_catalog(text), Err(BelyiError::Parse { line: 2, .. })));
    }
}
