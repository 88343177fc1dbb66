//! Cycle types of `S_n` and the primary decomposition of the permutation
//! operator they induce on `GF(2)^n`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gf2poly::{factor_cyclic, GF2Poly};
use crate::partition::Partition;
use crate::qarith::Natural;

/// Multiset of cycle lengths of a permutation, stored as length -> count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleType {
    multiplicities: BTreeMap<usize, usize>,
}

impl CycleType {
    pub fn from_lengths(lengths: &[usize]) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidCycleType("empty cycle type".into()));
        }
        let mut multiplicities = BTreeMap::new();
        for &l in lengths {
            if l == 0 {
                return Err(Error::InvalidCycleType("cycle length 0".into()));
            }
            *multiplicities.entry(l).or_insert(0) += 1;
        }
        Ok(Self { multiplicities })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            multiplicities: BTreeMap::from([(1, n)]),
        }
    }

    /// `(length, count)` pairs by increasing length.
    pub fn multiplicities(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.multiplicities.iter().map(|(&l, &m)| (l, m))
    }

    pub fn n(&self) -> usize {
        self.multiplicities().map(|(l, m)| l * m).sum()
    }

    /// Number of cycles.
    pub fn r(&self) -> usize {
        self.multiplicities.values().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.r() == self.n()
    }

    /// Lengths in nonincreasing order.
    pub fn lengths(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.r());
        for (l, m) in self.multiplicities.iter().rev() {
            v.extend(std::iter::repeat_n(*l, *m));
        }
        v
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.lengths().iter().map(usize::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lengths = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidCycleType(format!("{s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_lengths(&lengths)
    }
}

/// Partitions of `n` in reverse lexicographic order: `(n), (n-1,1), (n-2,2), ...`.
pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = CycleType;

    fn next(&mut self) -> Option<CycleType> {
        let cur = self.current.take()?;
        let out = CycleType::from_lengths(&cur).unwrap();
        let mut a = cur;
        let mut rem = 0;
        while a.last() == Some(&1) {
            a.pop();
            rem += 1;
        }
        if let Some(x) = a.pop() {
            let x = x - 1;
            rem += x + 1;
            while rem > 0 {
                let part = x.min(rem);
                a.push(part);
                rem -= part;
            }
            self.current = Some(a);
        }
        Some(out)
    }
}

pub fn partitions_of(n: usize) -> Partitions {
    assert!(n >= 1, "partitions_of requires n >= 1");
    Partitions {
        current: Some(vec![n]),
    }
}

pub fn factorial(n: usize) -> Natural {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Number of permutations with this cycle type: `n! / prod l^{m_l} m_l!`.
pub fn class_size(ct: &CycleType) -> Natural {
    let centralizer = ct
        .multiplicities()
        .fold(BigUint::one(), |acc, (l, m)| acc * BigUint::from(l).pow(m as u32) * factorial(m));
    factorial(ct.n()) / centralizer
}

/// One `p`-primary block of the permutation operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub irreducible: GF2Poly,
    pub degree: usize,
    /// Module type: one part `2^a` for every cycle of length `2^a * u` with `p | t^u - 1`.
    pub lambda: Partition,
}

impl PrimaryComponent {
    /// `Q = 2^degree`, the size of the residue field.
    pub fn residue_size(&self) -> Natural {
        BigUint::one() << self.degree
    }

    /// GF(2)-dimension of the block.
    pub fn dim(&self) -> usize {
        self.degree * self.lambda.size()
    }

    /// Exponent of `p` in the minimal polynomial.
    pub fn mu(&self) -> usize {
        self.lambda.largest()
    }
}

/// Splits a cycle length into `(2^a, u)` with `u` odd.
pub fn split_two_power(len: usize) -> (usize, usize) {
    let a = len.trailing_zeros();
    (1 << a, len >> a)
}

/// Primary components of `T_sigma`, `t + 1` first, then by irreducible.
pub fn primary_components(ct: &CycleType) -> Vec<PrimaryComponent> {
    let mut blocks: BTreeMap<GF2Poly, Vec<usize>> = BTreeMap::new();
    for (len, count) in ct.multiplicities() {
        let (two_power, odd) = split_two_power(len);
        let factors = factor_cyclic(odd as u64).expect("odd part is odd");
        for p in factors.iter() {
            blocks
                .entry(p.clone())
                .or_default()
                .extend(std::iter::repeat_n(two_power, count));
        }
    }
    // GF2Poly ordering puts t + 1 (the only degree-1 factor) first
    blocks
        .into_iter()
        .map(|(irreducible, parts)| PrimaryComponent {
            degree: irreducible.degree().unwrap(),
            irreducible,
            lambda: Partition::new(parts),
        })
        .collect()
}
