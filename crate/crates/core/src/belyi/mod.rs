//! Explicit coverings: the catalog, the fiber verifier and a small-degree solver.

mod catalog;
mod groebner;
mod solve;

pub use catalog::{
    builtin_catalog, check_composition_claim, load_catalog, parse_catalog, verify_catalog, CatalogReport,
    CompositionReport, CoveringMeta, CoveringRecord, CATALOG_TEXT,
};
pub use groebner::{groebner_basis, is_unit_ideal, is_zero_dimensional, MPoly, MonomialOrder};
pub use solve::{mobius_equivalent, solve_belyi, solve_belyi_with, Pin, PinScheme, SolveReport, MAX_SOLVE_DEGREE};

use crate::exactalg::{root_multiplicities, AlgError, RatFun};
use crate::patterns::{defect_of, BranchingPattern};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BelyiError {
    #[error("map has degree {map}, pattern has degree {pattern}")]
    DegreeMismatch { map: u32, pattern: u32 },
    #[error("measured fibers {measured:?} (over 0, 1, inf) do not match the pattern")]
    FiberMismatch { measured: [Vec<u32>; 3] },
    #[error("measured fibers {measured:?} leave Riemann-Hurwitz defect {defect}")]
    NotBelyi { measured: [Vec<u32>; 3], defect: i64 },
    #[error("degree {0} is above the solver cap")]
    DegreeTooLarge(u32),
    #[error("pattern has nonzero Riemann-Hurwitz defect")]
    NonzeroDefect,
    #[error("invalid pins: {0}")]
    InvalidPins(String),
    #[error("no covering with this branching exists")]
    NoSolution,
    #[error("no permutation triple realizes the pattern")]
    NoRepresentative,
    #[error("catalog line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("algebra: {0}")]
    Alg(#[from] AlgError),
}

/// Which pattern fiber lies over 0, 1 and infinity, with the partitions measured from the map.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FiberAssignment {
    /// Index into `pattern.fibers()` for the targets 0, 1, infinity.
    pub fiber_over: [usize; 3],
    pub measured: [Vec<u32>; 3],
}

fn with_infinity(mut parts: Vec<u32>, degree: usize, finite: usize) -> Vec<u32> {
    if degree > finite {
        parts.push((degree - finite) as u32);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Partitions of the degree over 0, 1 and infinity, counting the point `x = inf`.
pub fn measured_fibers(map: &RatFun) -> Result<[Vec<u32>; 3], BelyiError> {
    let d = map.degree();
    let num = map.num();
    let den = map.den();
    let shifted = num.sub(den);
    let over = |p: &crate::exactalg::Poly| -> Result<Vec<u32>, BelyiError> {
        let ms: Vec<u32> = root_multiplicities(p)?.into_iter().map(|m| m as u32).collect();
        Ok(with_infinity(ms, d, p.deg()))
    };
    Ok([over(num)?, over(&shifted)?, over(den)?])
}

/// Check a claimed covering against a branching pattern without locating critical points.
pub fn verify_covering(map: &RatFun, pattern: &BranchingPattern) -> Result<FiberAssignment, BelyiError> {
    let d = map.degree() as u32;
    if d != pattern.degree() {
        return Err(BelyiError::DegreeMismatch { map: d, pattern: pattern.degree() });
    }
    let measured = measured_fibers(map)?;
    let want = pattern.partitions();
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let Some(fiber_over) = PERMS.into_iter().find(|p| (0..3).all(|v| measured[v] == want[p[v]])) else {
        return Err(BelyiError::FiberMismatch { measured });
    };
    let defect = defect_of(&measured);
    if defect != 0 {
        return Err(BelyiError::NotBelyi { measured, defect });
    }
    Ok(FiberAssignment { fiber_over, measured })
}
