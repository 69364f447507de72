//! Block systems of the monodromy group and the degree factorizations they support.

use std::collections::{BTreeSet, VecDeque};

use petgraph::unionfind::UnionFind;

use super::{MonodromyError, PermTriple, Permutation};

/// A partition of the points into blocks permuted by the group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    fn block_of_zero(&self) -> &Vec<usize> {
        &self.blocks[0]
    }
}

#[derive(Clone, Debug)]
pub struct BlockReport {
    /// Every block system other than the two trivial ones, by increasing block size.
    pub systems: Vec<BlockSystem>,
    /// Systems with no nontrivial refinement.
    pub minimal: Vec<BlockSystem>,
    /// Factor multisets (descending) of every chain from points to the whole set.
    pub factorizations: BTreeSet<Vec<u32>>,
}

impl BlockReport {
    pub fn is_primitive(&self) -> bool {
        self.systems.is_empty()
    }
}

/// Smallest block system in which all of `seed` lie in one block.
fn closure(gens: &[&Permutation], n: usize, seed: &[usize]) -> BlockSystem {
    let mut uf = UnionFind::<usize>::new(n);
    let mut queue = VecDeque::new();
    for w in seed.windows(2) {
        if uf.union(w[0], w[1]) {
            queue.push_back((w[0], w[1]));
        }
    }
    while let Some((a, b)) = queue.pop_front() {
        for g in gens {
            let (ga, gb) = (g.apply(a), g.apply(b));
            if uf.union(ga, gb) {
                queue.push_back((ga, gb));
            }
        }
    }
    let labels = uf.into_labeling();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = std::collections::HashMap::new();
    for (x, l) in labels.into_iter().enumerate() {
        let k = *slot.entry(l).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[k].push(x);
    }
    BlockSystem { blocks }
}

pub fn block_systems(t: &PermTriple) -> Result<BlockReport, MonodromyError> {
    if !t.is_transitive() {
        return Err(MonodromyError::NotTransitive);
    }
    let n = t.degree();
    let gens = [&t.sigma0, &t.sigma1];
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut systems: Vec<BlockSystem> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(b) = frontier.pop() {
        for j in 0..n {
            if b.contains(&j) {
                continue;
            }
            let mut seed = b.clone();
            seed.push(j);
            let sys = closure(&gens, n, &seed);
            let key = sys.block_of_zero().clone();
            if key.len() < n && found.insert(key.clone()) {
                frontier.push(key);
                systems.push(sys);
            }
        }
    }
    systems.sort_by_key(|s| (s.block_size(), s.blocks.clone()));

    let contains = |big: &[usize], small: &[usize]| small.iter().all(|x| big.contains(x));
    let minimal = systems
        .iter()
        .filter(|s| {
            !systems
                .iter()
                .any(|r| r.block_size() < s.block_size() && contains(s.block_of_zero(), r.block_of_zero()))
        })
        .cloned()
        .collect();

    // chains 1 = b0 < b1 < ... < n through nested blocks containing point 0
    let mut nodes: Vec<Vec<usize>> = vec![vec![0]];
    nodes.extend(systems.iter().map(|s| s.block_of_zero().clone()));
    nodes.push((0..n).collect());
    let mut factorizations = BTreeSet::new();
    let mut stack: Vec<(usize, Vec<u32>)> = vec![(0, Vec::new())];
    while let Some((i, factors)) = stack.pop() {
        let last = nodes.len() - 1;
        if i == last {
            let mut f = factors;
            f.sort_unstable_by(|a, b| b.cmp(a));
            factorizations.insert(f);
            continue;
        }
        for j in (i + 1)..nodes.len() {
            if nodes[j].len() > nodes[i].len() && contains(&nodes[j], &nodes[i]) {
                let mut f = factors.clone();
                f.push((nodes[j].len() / nodes[i].len()) as u32);
                stack.push((j, f));
            }
        }
    }
    Ok(BlockReport { systems, minimal, factorizations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four_has_three_systems() {
        // (2+2, 2+2, 2+2): the regular action of the Klein four-group
        let a = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![1, 3], vec![2, 4]]).unwrap();
        let t = PermTriple::from_pair(a, b).unwrap();
        let r = block_systems(&t).unwrap();
        assert_eq!(r.systems.len(), 3);
        assert!(r.systems.iter().all(|s| s.block_size() == 2));
        assert_eq!(r.factorizations, BTreeSet::from([vec![2, 2], vec![4]]));
    }

    #[test]
    fn prime_degree_is_primitive() {
        let a = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let t = PermTriple::from_pair(a, b).unwrap();
        assert!(block_systems(&t).unwrap().is_primitive());
    }
}
