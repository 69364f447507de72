//! Factorization of a covering through the quotient by a cyclic subgroup of the base monodromy.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_traits::One;

use crate::exactalg::Rational;
use crate::monodromy::{count_triples, Permutation, MAX_ENUM_DEGREE};

/// Stop enumerating fiber splittings past this many and assume a factor exists.
const SPLIT_BUDGET: usize = 20_000;

/// Generators `g0, g1, g2` with `g0 g1 g2 = 1` of the finite triangle group with these orders.
pub fn triangle_generators(orders: [u32; 3]) -> Option<[Permutation; 3]> {
    let (p, q, r) = (orders[0] as i64, orders[1] as i64, orders[2] as i64);
    if orders.contains(&0) || q * r + p * r + p * q <= p * q * r {
        return None;
    }
    let twos: Vec<usize> = (0..3).filter(|&i| orders[i] == 2).collect();
    if twos.len() >= 2 {
        let other = (0..3).find(|i| !twos[..2].contains(i)).unwrap();
        let n = orders[other].max(2) as usize;
        return Some(dihedral(n, twos[0], twos[1], other));
    }
    let target = (2 * p * q * r / (q * r + p * r + p * q - p * q * r)) as usize;
    for m in 3..=5usize {
        let all = all_perms(m);
        let a: Vec<&Permutation> = all.iter().filter(|g| order(g) == orders[0]).collect();
        let b: Vec<&Permutation> = all.iter().filter(|g| order(g) == orders[1]).collect();
        for x in &a {
            for y in &b {
                let z = x.then(y).inverse();
                if order(&z) == orders[2] && closure(&[(*x).clone(), (*y).clone()]).len() == target {
                    return Some([(*x).clone(), (*y).clone(), z]);
                }
            }
        }
    }
    None
}

fn dihedral(n: usize, i: usize, j: usize, k: usize) -> [Permutation; 3] {
    // reflections of a 2n-gon's vertex labels keep the action faithful for n = 2
    let m = 2 * n;
    let s = Permutation::from_images((0..m).map(|x| ((m - x) % m) as u8).collect()).unwrap();
    let t = Permutation::from_images((0..m).map(|x| ((m + 2 - x) % m) as u8).collect()).unwrap();
    let u = s.then(&t).inverse();
    let mut g = [u.clone(), u.clone(), u];
    g[i] = s;
    g[j] = t;
    debug_assert!(k != i && k != j);
    g
}

fn all_perms(m: usize) -> Vec<Permutation> {
    fn rec(cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if cur.len() == used.len() {
            out.push(Permutation::from_images(cur.clone()).unwrap());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

fn order(g: &Permutation) -> u32 {
    g.cycle_type().into_iter().fold(1, |acc, l| num_integer::lcm(acc, l))
}

/// All elements of the group generated by `gens`.
pub fn closure(gens: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(gens[0].degree());
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let h = out[i].then(g);
            if seen.insert(h.clone()) {
                out.push(h);
            }
        }
        i += 1;
    }
    out
}

/// Cycle types of the generators acting on cosets of the cyclic subgroup generated by `h`.
fn coset_types(group: &[Permutation], gens: &[Permutation; 3], h: &Permutation) -> [Vec<u32>; 3] {
    let sub = closure(std::slice::from_ref(h));
    let mut label: HashMap<Permutation, usize> = HashMap::new();
    let mut reps = Vec::new();
    for x in group {
        if label.contains_key(x) {
            continue;
        }
        let idx = reps.len();
        for s in &sub {
            label.insert(x.then(s), idx);
        }
        reps.push(x.clone());
    }
    gens.clone().map(|g| {
        let images: Vec<u8> = reps.iter().map(|x| label[&g.then(x)] as u8).collect();
        let mut t = Permutation::from_images(images).unwrap().cycle_type();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    })
}

/// Ways to split `parts` among points with ramification `lengths`, each receiving `d` times its length.
fn splittings(parts: &[u32], lengths: &[u32], d: u32) -> BTreeSet<Vec<Vec<u32>>> {
    fn rec(
        parts: &[u32],
        idx: usize,
        lengths: &[u32],
        d: u32,
        bins: &mut Vec<Vec<u32>>,
        out: &mut BTreeSet<Vec<Vec<u32>>>,
    ) {
        if out.len() > SPLIT_BUDGET {
            return;
        }
        if idx == parts.len() {
            if bins.iter().all(|b| b.iter().sum::<u32>() == d) {
                let mut v: Vec<Vec<u32>> = bins.clone();
                for b in &mut v {
                    b.sort_unstable_by(|a, b| b.cmp(a));
                }
                v.sort();
                out.insert(v);
            }
            return;
        }
        let e = parts[idx];
        let mut tried = HashSet::new();
        for j in 0..lengths.len() {
            let l = lengths[j];
            if e % l != 0 || !tried.insert((l, bins[j].clone())) {
                continue;
            }
            let v = e / l;
            if bins[j].iter().sum::<u32>() + v > d {
                continue;
            }
            bins[j].push(v);
            rec(parts, idx + 1, lengths, d, bins, out);
            bins[j].pop();
        }
    }
    let mut out = BTreeSet::new();
    rec(parts, 0, lengths, d, &mut vec![Vec::new(); lengths.len()], &mut out);
    out
}

fn factor_exists(fibers: &[Vec<u32>; 3], quotient: &[Vec<u32>; 3]) -> bool {
    let index: u32 = quotient[0].iter().sum();
    let degree: u32 = fibers[0].iter().sum();
    if degree % index != 0 {
        return false;
    }
    let d = degree / index;
    let options: Vec<Vec<Vec<Vec<u32>>>> =
        (0..3).map(|i| splittings(&fibers[i], &quotient[i], d).into_iter().collect()).collect();
    if options.iter().any(|o| o.len() > SPLIT_BUDGET) {
        return true;
    }
    for a in &options[0] {
        for b in &options[1] {
            for c in &options[2] {
                let branch: Vec<Vec<u32>> =
                    a.iter().chain(b).chain(c).filter(|nu| nu.iter().any(|&x| x > 1)).cloned().collect();
                let ramification: u32 = branch.iter().map(|nu| d - nu.len() as u32).sum();
                if ramification != 2 * d - 2 {
                    continue;
                }
                if branch.len() > 3 || d > MAX_ENUM_DEGREE {
                    return true;
                }
                let mut f: Vec<Vec<u32>> = branch;
                f.resize(3, vec![1; d as usize]);
                let fibers = [f[0].clone(), f[1].clone(), f[2].clone()];
                if count_triples(&fibers).map_or(true, |c| c.orbit_count > 0) {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether a covering with these fibers can factor through the quotient of the base's
/// Schwarz cover by some cyclic subgroup whose order is divisible by every entry of `orders`.
///
/// Returns `true` whenever the base is not a unit-fraction triple with finite monodromy.
pub fn cyclic_factor_possible(fibers: &[Vec<u32>; 3], base: &[Rational], orders: &[u32]) -> bool {
    let mut denoms = [0u32; 3];
    for (i, v) in base.iter().enumerate() {
        if !v.numer().is_one() {
            return true;
        }
        match u32::try_from(v.denom().clone()) {
            Ok(q) if q >= 2 => denoms[i] = q,
            _ => return true,
        }
    }
    let Some(gens) = triangle_generators(denoms) else {
        return true;
    };
    let group = closure(&gens[..2]);
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    for h in &group {
        let m = order(h);
        if m == 1 || orders.iter().any(|&o| m % o != 0) {
            continue;
        }
        let mut sub = closure(std::slice::from_ref(h));
        sub.sort();
        if !seen.insert(sub) {
            continue;
        }
        if factor_exists(fibers, &coset_types(&group, &gens, h)) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn polyhedral_orders() {
        for (o, n) in [([2, 3, 3], 12), ([2, 3, 4], 24), ([2, 3, 5], 60), ([2, 2, 5], 10), ([3, 2, 2], 6), ([2, 2, 2], 4)] {
            let g = triangle_generators(o).unwrap();
            assert_eq!(closure(&g[..2]).len(), n, "{o:?}");
            assert!(g[0].then(&g[1]).then(&g[2]).is_identity());
            for i in 0..3 {
                assert_eq!(order(&g[i]), o[i]);
            }
        }
        assert!(triangle_generators([2, 3, 6]).is_none());
    }

    #[test]
    fn tetrahedral_quotient_by_three() {
        let g = triangle_generators([2, 3, 3]).unwrap();
        let group = closure(&g[..2]);
        let h = group.iter().find(|x| order(x) == 3).unwrap();
        assert_eq!(coset_types(&group, &g, h), [vec![2, 2], vec![3, 1], vec![3, 1]]);
    }

    #[test]
    fn composite_degree_twelve_factors() {
        let base = [rat(1, 2), rat(1, 3), rat(1, 3)];
        let h1 = [vec![2; 6], vec![3; 4], vec![9, 1, 1, 1]];
        assert!(cyclic_factor_possible(&h1, &base, &[3]));
        let mp = [vec![2; 12], vec![3; 8], vec![9, 9, 3, 1, 1, 1]];
        assert!(!cyclic_factor_possible(&mp, &base, &[3]));
    }
}
