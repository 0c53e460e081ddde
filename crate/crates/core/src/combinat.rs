//! Signed subset-sum counts over the odd numbers `{1-2n, 3-2n, ..., 2n-1}`.
//!
//! `alpha(r, j, n)` counts the `j`-element subsets with sum `r`;
//! `beta(r, j, n) = alpha(r, j, n) - alpha(r, j-2, n)` are the exponents of
//! the symmetric-power factors in the spin L-function of an Ikeda lift.

use std::collections::BTreeMap;

/// Largest `n` whose counts fit comfortably in `u64`.
pub const MAX_N: usize = 31;

/// Dynamic-programming table of `alpha(., j, n)` for all `j` in `0..=2n`.
#[derive(Clone, Debug)]
pub struct SubsetSums {
    n: usize,
    // counts[j][s + n^2]
    counts: Vec<Vec<u64>>,
}

impl SubsetSums {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_N, "n = {n} exceeds the supported range");
        let offset = n * n;
        let width = 2 * offset + 1;
        let mut counts = vec![vec![0u64; width]; 2 * n + 1];
        counts[0][offset] = 1;
        // Each element is used once: iterate j downward.
        for e in odd_set(n) {
            for j in (1..=2 * n).rev() {
                let (lo, hi) = counts.split_at_mut(j);
                let prev = &lo[j - 1];
                let cur = &mut hi[0];
                for (s, c) in prev.iter().enumerate() {
                    if *c == 0 {
                        continue;
                    }
                    let t = s as i64 + e;
                    if (0..width as i64).contains(&t) {
                        cur[t as usize] += c;
                    }
                }
            }
        }
        SubsetSums { n, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self, r: i64, j: i64) -> u64 {
        if j < 0 || j > 2 * self.n as i64 {
            return 0;
        }
        let idx = r + (self.n * self.n) as i64;
        self.counts[j as usize]
            .get(usize::try_from(idx).unwrap_or(usize::MAX))
            .copied()
            .unwrap_or(0)
    }

    pub fn beta(&self, r: i64, j: i64) -> i64 {
        self.alpha(r, j) as i64 - self.alpha(r, j - 2) as i64
    }
}

/// `{1-2n, 3-2n, ..., 2n-1}`.
pub fn odd_set(n: usize) -> Vec<i64> {
    let n = n as i64;
    (0..2 * n).map(|i| 1 - 2 * n + 2 * i).collect()
}

pub fn alpha(r: i64, j: i64, n: usize) -> u64 {
    SubsetSums::new(n).alpha(r, j)
}

pub fn beta(r: i64, j: i64, n: usize) -> i64 {
    SubsetSums::new(n).beta(r, j)
}

/// Range of `r` in the spin product for a given `j`: `j(j-2n) ..= j(2n-j)`
/// in steps of 2.
pub fn r_range(j: usize, n: usize) -> impl Iterator<Item = i64> {
    let (j, n) = (j as i64, n as i64);
    let lo = j * (j - 2 * n);
    let hi = j * (2 * n - j);
    (lo..=hi).step_by(2)
}

/// `beta(r, j, n)` over `j in 0..=n` and the product ranges of `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaTable {
    pub n: usize,
    /// Keyed by `(j, r)`.
    pub entries: BTreeMap<(usize, i64), i64>,
}

impl BetaTable {
    pub fn get(&self, r: i64, j: usize) -> i64 {
        self.entries.get(&(j, r)).copied().unwrap_or(0)
    }

    /// `(j, r, beta)` in canonical order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, i64, i64)> + '_ {
        self.entries.iter().map(|((j, r), b)| (*j, *r, *b))
    }
}

pub fn beta_table(n: usize) -> BetaTable {
    assert!(n >= 1, "n must be positive");
    let ss = SubsetSums::new(n);
    let mut entries = BTreeMap::new();
    for j in 0..=n {
        for r in r_range(j, n) {
            entries.insert((j, r), ss.beta(r, j as i64));
        }
    }
    BetaTable { n, entries }
}
