//! Symmetric-group characters by border-strip removal, and the character-sum count of
//! permutation triples with prescribed cycle types.
//!
//! The count returned here is the plain number of triples `(s0, s1, s_inf)` with product one,
//! connected or not. Weighted variants differ by positive factors, so they vanish together.

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::monodromy::class_size;
use crate::patterns::partitions;

pub const CACHE_HEADER: &str = "# heun-atlas character cache v1";
pub const CACHE_FILE: &str = "characters-v1.txt";

#[derive(Debug, thiserror::Error)]
pub enum CharError {
    #[error("partitions of different sizes: {0} and {1}")]
    SizeMismatch(u32, u32),
    #[error("not a partition: {0:?}")]
    BadPartition(Vec<u32>),
    #[error("character value overflowed")]
    Overflow,
    #[error("character sum is not divisible by the group order; character values are wrong")]
    Inexact,
    #[error("cache file: {0}")]
    Cache(String),
}

type Key = (Vec<u8>, Vec<u8>);

fn normalize(p: &[u32]) -> Result<Vec<u8>, CharError> {
    let mut v: Vec<u32> = p.iter().copied().filter(|&x| x > 0).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    if v.iter().any(|&x| x > u8::MAX as u32) {
        return Err(CharError::BadPartition(p.to_vec()));
    }
    Ok(v.into_iter().map(|x| x as u8).collect())
}

/// Beta-set of a partition with `len` beads: `lambda_i + len - 1 - i`.
fn beta_set(lambda: &[u8]) -> Vec<i32> {
    let l = lambda.len() as i32;
    lambda.iter().enumerate().map(|(i, &x)| x as i32 + l - 1 - i as i32).collect()
}

fn from_beta(beta: &mut [i32]) -> Vec<u8> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let l = beta.len() as i32;
    beta.iter()
        .enumerate()
        .map(|(i, &b)| (b - (l - 1 - i as i32)) as u8)
        .filter(|&x| x > 0)
        .collect()
}

/// Thread-safe memo of character values keyed on `(lambda, remaining cycle lengths)`.
#[derive(Default)]
pub struct CharCache {
    memo: RwLock<HashMap<Key, i128>>,
    top: RwLock<HashMap<Key, i128>>,
}

impl CharCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The value of the irreducible character `lambda` on the class `mu`.
    pub fn character(&self, lambda: &[u32], mu: &[u32]) -> Result<i128, CharError> {
        let l = normalize(lambda)?;
        let m = normalize(mu)?;
        let (sl, sm) = (l.iter().map(|&x| x as u32).sum::<u32>(), m.iter().map(|&x| x as u32).sum::<u32>());
        if sl != sm {
            return Err(CharError::SizeMismatch(sl, sm));
        }
        let key = (l, m);
        if let Some(&v) = self.top.read().unwrap().get(&key) {
            return Ok(v);
        }
        let v = self.mn(&key.0, &key.1)?;
        self.top.write().unwrap().insert(key, v);
        Ok(v)
    }

    fn mn(&self, lambda: &[u8], mu: &[u8]) -> Result<i128, CharError> {
        if mu.is_empty() {
            return Ok(if lambda.is_empty() { 1 } else { 0 });
        }
        let key = (lambda.to_vec(), mu.to_vec());
        if let Some(&v) = self.memo.read().unwrap().get(&key) {
            return Ok(v);
        }
        let r = mu[0] as i32;
        let rest = &mu[1..];
        let beta = beta_set(lambda);
        let mut total: i128 = 0;
        for (i, &b) in beta.iter().enumerate() {
            let target = b - r;
            if target < 0 || beta.contains(&target) {
                continue;
            }
            let passed = beta.iter().filter(|&&c| c > target && c < b).count();
            let mut nb = beta.clone();
            nb[i] = target;
            let sub = from_beta(&mut nb);
            let v = self.mn(&sub, rest)?;
            let signed = if passed % 2 == 0 { v } else { -v };
            total = total.checked_add(signed).ok_or(CharError::Overflow)?;
        }
        self.memo.write().unwrap().insert(key, total);
        Ok(total)
    }

    /// Read `lambda : mu : value` lines written by [`CharCache::save`].
    pub fn load(path: &Path) -> Result<Self, CharError> {
        let cache = CharCache::new();
        let f = fs::File::open(path).map_err(|e| CharError::Cache(e.to_string()))?;
        let mut lines = BufReader::new(f).lines();
        match lines.next() {
            Some(Ok(h)) if h.trim() == CACHE_HEADER => {}
            _ => return Err(CharError::Cache(format!("{} has no v1 header", path.display()))),
        }
        let mut top = cache.top.write().unwrap();
        for (no, line) in lines.enumerate() {
            let line = line.map_err(|e| CharError::Cache(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = || CharError::Cache(format!("line {}: {line:?}", no + 2));
            let fields: Vec<&str> = line.split(':').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(bad());
            }
            let parse = |s: &str| -> Result<Vec<u8>, CharError> {
                s.split(',').map(|t| t.trim().parse::<u8>().map_err(|_| bad())).collect()
            };
            let value: i128 = fields[2].parse().map_err(|_| bad())?;
            top.insert((parse(fields[0])?, parse(fields[1])?), value);
        }
        drop(top);
        Ok(cache)
    }

    /// Persist every top-level value computed so far, sorted for stable output.
    pub fn save(&self, path: &Path) -> Result<(), CharError> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(|e| CharError::Cache(e.to_string()))?;
        }
        let top = self.top.read().unwrap();
        let mut rows: Vec<(&Key, &i128)> = top.iter().collect();
        rows.sort();
        let join = |v: &[u8]| v.iter().map(u8::to_string).collect::<Vec<_>>().join(",");
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp).map_err(|e| CharError::Cache(e.to_string()))?;
        let mut body = String::new();
        body.push_str(CACHE_HEADER);
        body.push('\n');
        for ((l, m), v) in rows {
            body.push_str(&format!("{} : {} : {}\n", join(l), join(m), v));
        }
        f.write_all(body.as_bytes()).map_err(|e| CharError::Cache(e.to_string()))?;
        fs::rename(&tmp, path).map_err(|e| CharError::Cache(e.to_string()))?;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.top.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Character value with a throwaway cache.
pub fn mn_character(lambda: &[u32], mu: &[u32]) -> Result<i128, CharError> {
    CharCache::new().character(lambda, mu)
}

/// One row per irreducible character: values on the three classes and the dimension.
#[derive(Clone, Debug)]
pub struct CharTableSlice {
    pub n: u32,
    pub classes: [Vec<u32>; 3],
    pub rows: Vec<(Vec<u32>, [i128; 4])>,
}

pub fn char_table_slice(cache: &CharCache, classes: &[Vec<u32>; 3]) -> Result<CharTableSlice, CharError> {
    let n = check_sizes(classes)?;
    let ones = vec![1u32; n as usize];
    let lambdas = partitions(n);
    let rows = lambdas
        .into_par_iter()
        .map(|l| {
            let v = [
                cache.character(&l, &classes[0])?,
                cache.character(&l, &classes[1])?,
                cache.character(&l, &classes[2])?,
                cache.character(&l, &ones)?,
            ];
            Ok((l, v))
        })
        .collect::<Result<Vec<_>, CharError>>()?;
    Ok(CharTableSlice { n, classes: classes.clone(), rows })
}

fn check_sizes(classes: &[Vec<u32>; 3]) -> Result<u32, CharError> {
    let s: Vec<u32> = classes.iter().map(|c| c.iter().sum()).collect();
    for i in 1..3 {
        if s[i] != s[0] {
            return Err(CharError::SizeMismatch(s[0], s[i]));
        }
    }
    for c in classes {
        if c.is_empty() || c.contains(&0) {
            return Err(CharError::BadPartition(c.clone()));
        }
    }
    Ok(s[0])
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Number of triples with the given cycle types and product one.
///
/// `N = |C1||C2||C3| * sum(chi1 chi2 chi3 * n!/dim) / (n!)^2`, with the division checked.
pub fn frobenius_count_with(cache: &CharCache, mu1: &[u32], mu2: &[u32], mu3: &[u32]) -> Result<BigUint, CharError> {
    let classes = [mu1.to_vec(), mu2.to_vec(), mu3.to_vec()];
    let slice = char_table_slice(cache, &classes)?;
    let nf = factorial(slice.n);
    let sum: BigInt = slice
        .rows
        .par_iter()
        .map(|(_, [a, b, c, d])| {
            let (q, r) = nf.div_rem(&BigInt::from(*d));
            debug_assert!(r.is_zero());
            BigInt::from(*a) * BigInt::from(*b) * BigInt::from(*c) * q
        })
        .reduce(BigInt::zero, |x, y| x + y);
    let sizes: BigInt = classes.iter().map(|c| BigInt::from(class_size_big(c))).product();
    let (q, r) = (sizes * sum).div_rem(&(&nf * &nf));
    if !r.is_zero() || q.is_negative() {
        return Err(CharError::Inexact);
    }
    Ok(q.to_biguint().unwrap())
}

pub fn frobenius_count(mu1: &[u32], mu2: &[u32], mu3: &[u32]) -> Result<BigUint, CharError> {
    frobenius_count_with(&CharCache::new(), mu1, mu2, mu3)
}

/// Class size as a big integer; the machine version covers `n <= 34`.
pub fn class_size_big(mu: &[u32]) -> BigUint {
    let n: u32 = mu.iter().sum();
    if n <= 30 {
        return BigUint::from(class_size(mu));
    }
    let mut num = factorial(n).to_biguint().unwrap();
    let mut counts = std::collections::BTreeMap::new();
    for &k in mu {
        *counts.entry(k).or_insert(0u32) += 1;
    }
    for (k, m) in counts {
        num /= BigUint::from(k).pow(m);
        num /= factorial(m).to_biguint().unwrap();
    }
    num
}

/// Convenience for reports.
pub fn count_as_u128(n: &BigUint) -> Option<u128> {
    n.to_u128()
}
