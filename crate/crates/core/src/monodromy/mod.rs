//! Permutation triples: enumeration, orbit counts, dessins and block systems.

mod blocks;
mod dessin;
mod perm;

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

pub use blocks::{block_systems, BlockReport, BlockSystem};
pub use dessin::{dessin, emit_dot, Dessin};
pub use perm::{all_of_type, canonical_of_type, class_size, Permutation};

/// Enumeration is refused above this degree.
pub const MAX_ENUM_DEGREE: u32 = 14;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonodromyError {
    #[error("degree {0} exceeds the enumeration cap")]
    DegreeTooLarge(u32),
    #[error("partitions sum to {0:?}, not a common degree")]
    PartitionSum(Vec<u32>),
    #[error("images do not form a bijection")]
    NotBijective,
    #[error("sigma0 sigma1 sigma_inf is not the identity")]
    ProductNotIdentity,
    #[error("permutations of different degrees")]
    DegreeMismatch,
    #[error("Euler characteristic {0} is not of the form 2 - 2g")]
    InvalidEuler(i64),
    #[error("the triple does not generate a transitive group")]
    NotTransitive,
}

/// `sigma0` then `sigma1` then `sigma_inf` is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermTriple {
    pub sigma0: Permutation,
    pub sigma1: Permutation,
    pub sigma_inf: Permutation,
}

impl PermTriple {
    /// Completes `sigma_inf` from the first two.
    pub fn from_pair(sigma0: Permutation, sigma1: Permutation) -> Result<Self, MonodromyError> {
        if sigma0.degree() != sigma1.degree() {
            return Err(MonodromyError::DegreeMismatch);
        }
        let sigma_inf = sigma0.then(&sigma1).inverse();
        Ok(PermTriple { sigma0, sigma1, sigma_inf })
    }

    pub fn new(sigma0: Permutation, sigma1: Permutation, sigma_inf: Permutation) -> Result<Self, MonodromyError> {
        let n = sigma0.degree();
        if sigma1.degree() != n || sigma_inf.degree() != n {
            return Err(MonodromyError::DegreeMismatch);
        }
        if !sigma0.then(&sigma1).then(&sigma_inf).is_identity() {
            return Err(MonodromyError::ProductNotIdentity);
        }
        Ok(PermTriple { sigma0, sigma1, sigma_inf })
    }

    pub fn degree(&self) -> usize {
        self.sigma0.degree()
    }

    pub fn as_array(&self) -> [&Permutation; 3] {
        [&self.sigma0, &self.sigma1, &self.sigma_inf]
    }

    pub fn cycle_types(&self) -> [Vec<u32>; 3] {
        [self.sigma0.cycle_type(), self.sigma1.cycle_type(), self.sigma_inf.cycle_type()]
    }

    pub fn is_transitive(&self) -> bool {
        is_transitive(&self.sigma0, &self.sigma1)
    }
}

pub fn is_transitive(a: &Permutation, b: &Permutation) -> bool {
    let n = a.degree();
    let mut uf = UnionFind::<usize>::new(n);
    let mut parts = n;
    for i in 0..n {
        for p in [a, b] {
            if uf.union(i, p.apply(i)) {
                parts -= 1;
            }
        }
    }
    parts <= 1
}

/// `2 - 2g = cycles(s0) + cycles(s1) + cycles(s_inf) - D`.
pub fn genus(t: &PermTriple) -> Result<u32, MonodromyError> {
    let chi: i64 = t.as_array().iter().map(|p| p.cycle_count() as i64).sum::<i64>() - t.degree() as i64;
    if chi > 2 || (2 - chi) % 2 != 0 {
        return Err(MonodromyError::InvalidEuler(chi));
    }
    Ok(((2 - chi) / 2) as u32)
}

#[derive(Clone, Debug)]
pub struct TripleCount {
    /// Pairs `(sigma0, sigma1)` over the full classes, connected or not.
    pub raw_count: u128,
    /// Matches with the canonical first permutation that generate a transitive group.
    pub transitive_matches: usize,
    /// Connected triples up to simultaneous conjugation.
    pub orbit_count: usize,
    /// One triple per orbit, in the caller's fiber order.
    pub representatives: Vec<PermTriple>,
}

fn check_partitions(fibers: &[Vec<u32>; 3]) -> Result<u32, MonodromyError> {
    let sums: Vec<u32> = fibers.iter().map(|f| f.iter().sum()).collect();
    if sums[0] != sums[1] || sums[1] != sums[2] || sums[0] == 0 || fibers.iter().flatten().any(|&e| e == 0) {
        return Err(MonodromyError::PartitionSum(sums));
    }
    Ok(sums[0])
}

fn sorted_desc(p: &[u32]) -> Vec<u32> {
    let mut v = p.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Generators of the centralizer of a canonical permutation: rotations of each cycle and
/// swaps of neighbouring equal-length cycles.
fn centralizer_generators(cycle_type: &[u32]) -> Vec<Permutation> {
    let n: usize = cycle_type.iter().map(|&l| l as usize).sum();
    let mut starts = Vec::new();
    let mut s = 0usize;
    for &l in cycle_type {
        starts.push((s, l as usize));
        s += l as usize;
    }
    let mut gens = Vec::new();
    for &(s, l) in &starts {
        if l > 1 {
            let mut im: Vec<u8> = (0..n as u8).collect();
            for k in 0..l {
                im[s + k] = (s + (k + 1) % l) as u8;
            }
            gens.push(Permutation::from_images_unchecked(im));
        }
    }
    for w in starts.windows(2) {
        let ((s1, l1), (s2, l2)) = (w[0], w[1]);
        if l1 == l2 {
            let mut im: Vec<u8> = (0..n as u8).collect();
            for k in 0..l1 {
                im[s1 + k] = (s2 + k) as u8;
                im[s2 + k] = (s1 + k) as u8;
            }
            gens.push(Permutation::from_images_unchecked(im));
        }
    }
    gens
}

/// Exhaustive count of permutation triples with the given cycle types.
pub fn count_triples(fibers: &[Vec<u32>; 3]) -> Result<TripleCount, MonodromyError> {
    let d = check_partitions(fibers)?;
    if d > MAX_ENUM_DEGREE {
        return Err(MonodromyError::DegreeTooLarge(d));
    }
    let types = fibers.clone().map(|f| sorted_desc(&f));
    let mut order = [0usize, 1, 2];
    order.sort_by_key(|&i| (class_size(&types[i]), i));
    let [ia, ib, ic] = order;

    let x = canonical_of_type(&types[ia]);
    let candidates = all_of_type(&types[ib]);
    let matched: Vec<(Permutation, bool)> = candidates
        .into_par_iter()
        .filter_map(|y| {
            let prod = x.then(&y);
            if prod.cycle_type() != types[ic] {
                return None;
            }
            let connected = is_transitive(&x, &y);
            Some((y, connected))
        })
        .collect();
    let raw_count = class_size(&types[ia]) * matched.len() as u128;
    let connected: Vec<Permutation> = matched.into_iter().filter(|(_, c)| *c).map(|(y, _)| y).collect();

    let index: HashMap<&Permutation, usize> = connected.iter().enumerate().map(|(i, y)| (y, i)).collect();
    let mut uf = UnionFind::<usize>::new(connected.len());
    for g in centralizer_generators(&types[ia]) {
        for (i, y) in connected.iter().enumerate() {
            let z = y.relabel(&g);
            let j = *index.get(&z).expect("centralizer preserves the match set");
            uf.union(i, j);
        }
    }
    let mut reps: Vec<usize> = Vec::new();
    let mut seen_roots = std::collections::HashSet::new();
    for i in 0..connected.len() {
        if seen_roots.insert(uf.find(i)) {
            reps.push(i);
        }
    }

    let even = matches!(order, [0, 1, 2] | [1, 2, 0] | [2, 0, 1]);
    let representatives = reps
        .iter()
        .map(|&i| {
            let y = connected[i].clone();
            let z = x.then(&y).inverse();
            let mut slots: [Option<Permutation>; 3] = [None, None, None];
            for (idx, p) in [(ia, x.clone()), (ib, y), (ic, z)] {
                slots[idx] = Some(if even { p } else { p.inverse() });
            }
            let [s0, s1, si] = slots.map(Option::unwrap);
            PermTriple::new(s0, s1, si).expect("rearranged triple keeps product one")
        })
        .collect();

    Ok(TripleCount { raw_count, transitive_matches: connected.len(), orbit_count: reps.len(), representatives })
}
