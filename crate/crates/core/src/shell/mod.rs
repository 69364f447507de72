//! Fixtures, reproduction runs and reports behind the command line.

mod checks;
mod fixture;
mod report;
mod tables;

use std::path::PathBuf;

use crate::belyi::{builtin_catalog, CoveringRecord};
use crate::charcount::{CharCache, CACHE_FILE};

pub use checks::{
    check_catalog, check_compositions, check_cross_oracle, check_dessins, check_mp24, check_solver, check_unrealizable,
    distinct_patterns,
};
pub use fixture::{TableFixture, TableRow, UnrealizableRow, TABLES_TEXT, UNREALIZABLE_TEXT};
pub use report::{timed, Check, CheckStatus, RunReport, REPORT_SCHEMA};
pub use tables::{
    compare_tables, EXPECTED_COMPOSITE, EXPECTED_COVERINGS, EXPECTED_ROWS, EXPECTED_UNREALIZABLE, EXPECTED_WEIGHTED,
    forms_match, regenerate_rows, reproduce_tables, RegeneratedRow};

/// Environment variable naming the character cache directory.
pub const CACHE_ENV: &str = "HEUN_ATLAS_CACHE";
/// Cross-oracle ceiling in the quick profile.
pub const QUICK_ORACLE_DEGREE: u32 = 8;
/// Largest degree handed to the solver in runs.
pub const SOLVER_DEGREE: u32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum ShellError {
    #[error("{file} fixture line {line}: {msg}")]
    Fixture { file: &'static str, line: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Module(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

/// Character cache file under `$HEUN_ATLAS_CACHE`, if set.
pub fn cache_path() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(|d| PathBuf::from(d).join(CACHE_FILE))
}

/// Load the cache named by the environment, or start empty.
pub fn open_cache() -> CharCache {
    cache_path().filter(|p| p.exists()).and_then(|p| CharCache::load(&p).ok()).unwrap_or_default()
}

/// Write the cache back when the environment names a directory.
pub fn persist_cache(cache: &CharCache) -> Result<(), ShellError> {
    match cache_path() {
        Some(p) => cache.save(&p).map_err(|e| ShellError::Io(e.to_string())),
        None => Ok(()),
    }
}

/// Quick: catalog and small-degree oracles. Full: every check, including degree 12 and degree 24.
pub fn run_all_with(
    profile: Profile,
    fixture: &TableFixture,
    catalog: &[CoveringRecord],
    cache: &CharCache,
) -> Result<RunReport, ShellError> {
    let mut checks = timed(|| check_catalog(catalog));
    checks.extend(timed(|| check_compositions(catalog)));
    let oracle_degree = match profile {
        Profile::Quick => QUICK_ORACLE_DEGREE,
        Profile::Full => u32::MAX,
    };
    checks.extend(timed(|| check_cross_oracle(fixture, cache, oracle_degree)));
    checks.extend(timed(|| check_solver(fixture, SOLVER_DEGREE)));
    checks.extend(timed(|| check_unrealizable(fixture)));
    if profile == Profile::Full {
        let tables = timed(|| match reproduce_tables(fixture, catalog) {
            Ok(r) => r.checks,
            Err(e) => vec![Check::new("tables", CheckStatus::Fail, e.to_string())],
        });
        checks.extend(tables);
        checks.extend(timed(|| check_dessins(fixture)));
        checks.extend(timed(|| check_mp24(cache)));
    }
    Ok(RunReport::new(checks))
}

pub fn run_all(profile: Profile) -> Result<RunReport, ShellError> {
    let cache = open_cache();
    let report = run_all_with(profile, &TableFixture::builtin(), &builtin_catalog(), &cache)?;
    persist_cache(&cache)?;
    Ok(report)
}
