//! The orbit of a seed tuple under coordinate permutation, in ascending
//! lexicographic order, with the adjacent transpositions acting on it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An `n`-tuple of small non-negative integer symbols, `n >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ValueTuple(Vec<u32>);

impl ValueTuple {
    pub fn new(entries: Vec<u32>) -> Result<Self, Error> {
        if entries.len() < 2 {
            return Err(Error::TupleTooShort(entries.len()));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry at a 1-based position.
    pub fn at(&self, pos: usize) -> u32 {
        self.0[pos - 1]
    }

    /// The adjacent transposition `σ_k`, swapping 1-based positions `k` and `k+1`.
    pub fn sigma(&self, k: usize) -> Result<Self, Error> {
        let max = self.0.len() - 1;
        if k == 0 || k > max {
            return Err(Error::IndexOutOfRange { k, max });
        }
        let mut out = self.0.clone();
        out.swap(k - 1, k);
        Ok(Self(out))
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&v| v <= 1)
    }

    /// Swaps zeros and ones.
    pub fn complement(&self) -> Result<Self, Error> {
        if !self.is_binary() {
            return Err(Error::NotBinaryTuple(self.to_string()));
        }
        Ok(Self(self.0.iter().map(|v| 1 - v).collect()))
    }

    /// Number of distinct permutations of this tuple.
    pub fn orbit_cardinality(&self) -> u128 {
        orbit_cardinality(self)
    }
}

impl fmt::Display for ValueTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for ValueTuple {
    type Err = Error;

    /// Accepts `(0,1,1)` as well as a bare `0,1,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim();
        let body = body.strip_prefix('(').unwrap_or(body);
        let body = body.strip_suffix(')').unwrap_or(body);
        let entries = body
            .split(',')
            .map(|part| {
                part.trim().parse::<u32>().map_err(|_| {
                    Error::Invalid(format!("bad tuple entry `{}` in `{s}`", part.trim()))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(entries)
    }
}

impl Serialize for ValueTuple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ValueTuple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Multinomial coefficient `n! / (c_1! ... c_r!)` over the value multiplicities.
pub fn orbit_cardinality(z: &ValueTuple) -> u128 {
    let mut counts: HashMap<u32, u128> = HashMap::new();
    for &v in &z.0 {
        *counts.entry(v).or_default() += 1;
    }
    // Product of binomials C(placed + c, c), each step exact.
    let mut placed: u128 = 0;
    let mut total: u128 = 1;
    for c in counts.into_values() {
        for i in 1..=c {
            placed += 1;
            total = total.checked_mul(placed).expect("orbit size overflow") / i;
        }
    }
    total
}

/// Rearranges `v` into its lexicographic successor; returns `false` at the last permutation.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The sorted orbit `X` with its rank map.
#[derive(Clone, Debug)]
pub struct OrbitIndex {
    basis: Vec<ValueTuple>,
    rank: HashMap<ValueTuple, usize>,
}

impl OrbitIndex {
    pub fn generate(seed: &ValueTuple) -> Self {
        let mut cur = seed.0.clone();
        cur.sort_unstable();
        let mut basis = vec![ValueTuple(cur.clone())];
        while next_permutation(&mut cur) {
            basis.push(ValueTuple(cur.clone()));
        }
        let rank = basis
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        Self { basis, rank }
    }

    pub fn basis(&self) -> &[ValueTuple] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Strand count `n`.
    pub fn strands(&self) -> usize {
        self.basis[0].len()
    }

    pub fn get(&self, idx: usize) -> &ValueTuple {
        &self.basis[idx]
    }

    pub fn rank_of(&self, x: &ValueTuple) -> Option<usize> {
        self.rank.get(x).copied()
    }

    /// The permutation of basis ranks induced by `σ_k` (1-based `k`).
    pub fn sigma_permutation(&self, k: usize) -> Result<Vec<usize>, Error> {
        self.basis
            .iter()
            .map(|x| {
                let y = x.sigma(k)?;
                Ok(self.rank[&y])
            })
            .collect()
    }
}
