//! Permutations on `0..n`, composed left to right.

use std::fmt;

use super::MonodromyError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u8).collect() }
    }

    /// Images of `0..n`; must be a bijection.
    pub fn from_images(images: Vec<u8>) -> Result<Self, MonodromyError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(MonodromyError::NotBijective);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Cycles over 1-based points, as in `(1 2)(3 4 5)`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, MonodromyError> {
        let mut images: Vec<u8> = (0..n as u8).collect();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                let y = c[(k + 1) % c.len()];
                if x == 0 || x > n || y == 0 || y > n {
                    return Err(MonodromyError::NotBijective);
                }
                images[x - 1] = (y - 1) as u8;
            }
        }
        Permutation::from_images(images)
    }

    pub(crate) fn from_images_unchecked(images: Vec<u8>) -> Self {
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// Relabel points by `g`: the result maps `g(i)` to `g(self(i))`.
    pub fn relabel(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images: out }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Cycles in order of their smallest point, each starting at it.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.images[x] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths, descending.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cs.is_empty() {
            return f.write_str("()");
        }
        for c in cs {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// The canonical permutation of a cycle type: consecutive runs `(1..a)(a+1..)`.
pub fn canonical_of_type(cycle_type: &[u32]) -> Permutation {
    let n: u32 = cycle_type.iter().sum();
    let mut images = vec![0u8; n as usize];
    let mut start = 0usize;
    for &len in cycle_type {
        let len = len as usize;
        for k in 0..len {
            images[start + k] = (start + (k + 1) % len) as u8;
        }
        start += len;
    }
    Permutation { images }
}

/// Every permutation of the given cycle type, each exactly once.
///
/// The smallest unused point always opens the next cycle, so equal-length cycles are
/// never produced in two orders.
pub fn all_of_type(cycle_type: &[u32]) -> Vec<Permutation> {
    let n: usize = cycle_type.iter().map(|&l| l as usize).sum();
    let mut lengths: Vec<u32> = cycle_type.to_vec();
    lengths.sort_unstable();
    let mut out = Vec::new();
    let mut images = vec![u8::MAX; n];
    let mut used = vec![false; n];
    fill(&mut lengths, &mut images, &mut used, &mut out);
    out
}

fn fill(lengths: &mut Vec<u32>, images: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
    let Some(first) = used.iter().position(|u| !u) else {
        out.push(Permutation { images: images.clone() });
        return;
    };
    let mut tried = Vec::new();
    for li in 0..lengths.len() {
        let len = lengths[li];
        if tried.contains(&len) {
            continue;
        }
        tried.push(len);
        lengths.remove(li);
        used[first] = true;
        let mut cycle = vec![first];
        extend_cycle(len as usize, &mut cycle, lengths, images, used, out);
        used[first] = false;
        lengths.insert(li, len);
    }
}

fn extend_cycle(
    len: usize,
    cycle: &mut Vec<usize>,
    lengths: &mut Vec<u32>,
    images: &mut Vec<u8>,
    used: &mut Vec<bool>,
    out: &mut Vec<Permutation>,
) {
    if cycle.len() == len {
        for k in 0..len {
            images[cycle[k]] = cycle[(k + 1) % len] as u8;
        }
        fill(lengths, images, used, out);
        return;
    }
    for x in 0..used.len() {
        if used[x] {
            continue;
        }
        used[x] = true;
        cycle.push(x);
        extend_cycle(len, cycle, lengths, images, used, out);
        cycle.pop();
        used[x] = false;
    }
}

/// `n! / prod(k^m_k m_k!)`.
pub fn class_size(cycle_type: &[u32]) -> u128 {
    let n: u32 = cycle_type.iter().sum();
    let mut num: u128 = (1..=n as u128).product();
    let mut counts = std::collections::BTreeMap::new();
    for &k in cycle_type {
        *counts.entry(k).or_insert(0u32) += 1;
    }
    for (k, m) in counts {
        num /= (k as u128).pow(m);
        num /= (1..=m as u128).product::<u128>();
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_sizes_match_generation() {
        for t in [vec![2, 2], vec![3, 1], vec![2, 1, 1], vec![2, 2, 2], vec![3, 3], vec![4, 1, 1]] {
            let all = all_of_type(&t);
            assert_eq!(all.len() as u128, class_size(&t), "{t:?}");
            assert!(all.iter().all(|p| p.cycle_type() == t));
        }
        assert_eq!(class_size(&[2; 6]), 10395);
        assert_eq!(class_size(&[3; 4]), 246400);
    }

    #[test]
    fn composition_order() {
        let a = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
        // 1 -> 2 -> 3
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.to_string(), "(1 2)");
    }
}
