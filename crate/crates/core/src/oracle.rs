//! Brute-force ground truth at small `n`.
//!
//! Everything here works by explicit enumeration: subspaces are listed in
//! reduced row echelon form, permutations are applied coordinate by
//! coordinate, orbits are found by applying all of `S_n`. Nothing in this
//! module depends on the counting formulas it is used to check.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use serde::Serialize;

use crate::cyclestruct::CycleType;
use crate::error::{Error, Result};
use crate::gf2poly::GF2Poly;
use crate::partition::Partition;

pub const ENUM_CEILING: usize = 7;
pub const CLASSIFY_CEILING: usize = 5;
pub const MINPOLY_CEILING: usize = 16;

fn ceiling(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::Ceiling { what, n, max })
    } else {
        Ok(())
    }
}

/// Subspace of `GF(2)^n`; rows are bitmasks in RREF keyed on the highest set bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    basis: Vec<u32>,
}

fn reduce(mut v: u32, rows: &[u32]) -> u32 {
    for &r in rows {
        let pivot = 31 - r.leading_zeros();
        if v >> pivot & 1 == 1 {
            v ^= r;
        }
    }
    v
}

impl Subspace {
    /// Canonical form of the span of `vectors`.
    pub fn span(n: usize, vectors: impl IntoIterator<Item = u32>) -> Self {
        let mut rows: Vec<u32> = Vec::new();
        for v in vectors {
            let v = reduce(v, &rows);
            if v != 0 {
                let pivot = 31 - v.leading_zeros();
                for r in rows.iter_mut() {
                    if *r >> pivot & 1 == 1 {
                        *r ^= v;
                    }
                }
                rows.push(v);
                rows.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        Self { n, basis: rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn contains(&self, v: u32) -> bool {
        reduce(v, &self.basis) == 0
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|&v| other.contains(v))
    }

    pub fn permuted(&self, sigma: &Permutation) -> Self {
        Self::span(self.n, self.basis.iter().map(|&v| sigma.apply(v)))
    }

    /// `X_sigma = X`, tested by mapping each basis row.
    pub fn is_fixed_by(&self, sigma: &Permutation) -> bool {
        self.basis.iter().all(|&v| self.contains(sigma.apply(v)))
    }
}

/// Every subspace of `GF(2)^n`, each once.
pub fn enum_subspaces(n: usize) -> Result<Vec<Subspace>> {
    ceiling("subspace enumeration", n, ENUM_CEILING)?;
    let mut out = Vec::new();
    for pivots in 0u32..(1 << n) {
        // each row owns one pivot and is free on non-pivot positions below it
        let piv: Vec<u32> = (0..n as u32).rev().filter(|&p| pivots >> p & 1 == 1).collect();
        let frees: Vec<Vec<u32>> = piv
            .iter()
            .map(|&p| (0..p).filter(|&j| pivots >> j & 1 == 0).collect())
            .collect();
        let total_free: usize = frees.iter().map(Vec::len).sum();
        for mut assign in 0u64..(1 << total_free) {
            let mut rows = Vec::with_capacity(piv.len());
            for (p, free) in piv.iter().zip(&frees) {
                let mut row = 1u32 << p;
                for &j in free {
                    if assign & 1 == 1 {
                        row |= 1 << j;
                    }
                    assign >>= 1;
                }
                rows.push(row);
            }
            out.push(Subspace { n, basis: rows });
        }
    }
    Ok(out)
}

/// Bijection of `{0, .., n-1}`; acts on vectors by `y_i = x_{sigma(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation of `n` points from 0-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n || std::mem::replace(&mut used[a], true) {
                    return Err(Error::InvalidPermutation(format!("{cycles:?}")));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    /// Canonical representative of a cycle type: consecutive points per cycle.
    pub fn of_type(ct: &CycleType) -> Self {
        let mut images = Vec::with_capacity(ct.n());
        let mut start = 0;
        for len in ct.lengths() {
            for k in 0..len {
                images.push(start + (k + 1) % len);
            }
            start += len;
        }
        Self { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, v: u32) -> u32 {
        let mut y = 0;
        for (i, &s) in self.images.iter().enumerate() {
            y |= (v >> s & 1) << i;
        }
        y
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            if len > 0 {
                lengths.push(len);
            }
        }
        CycleType::from_lengths(&lengths).expect("n >= 1")
    }

    /// All of `S_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some((0..n).collect::<Vec<_>>());
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut a = cur.clone();
            if let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) {
                let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
                a.swap(i - 1, j);
                a[i..].reverse();
                next = Some(a);
            }
            Some(Permutation { images: cur })
        })
    }
}

/// Number of subspaces `X` with `X_sigma = X`.
pub fn invariant_count(sigma: &Permutation) -> Result<BigUint> {
    Ok(BigUint::from(invariant_subspaces(sigma)?.len()))
}

pub fn invariant_subspaces(sigma: &Permutation) -> Result<Vec<Subspace>> {
    Ok(enum_subspaces(sigma.n())?
        .into_iter()
        .filter(|x| x.is_fixed_by(sigma))
        .collect())
}

/// Invariant subspaces counted per dimension.
pub fn invariant_dim_counts(sigma: &Permutation) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; sigma.n() + 1];
    for x in invariant_subspaces(sigma)? {
        counts[x.dim()] += 1;
    }
    Ok(counts)
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    pub id: usize,
    pub dim: usize,
    pub size: usize,
    pub stabilizer_order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub n: usize,
    pub b: usize,
    pub by_dim: Vec<usize>,
    pub orbits: Vec<Orbit>,
    pub subspaces: usize,
    /// Subspaces with a nontrivial automorphism group.
    pub nonrigid: usize,
    /// Same, per dimension.
    pub nonrigid_by_dim: Vec<usize>,
    pub subspaces_by_dim: Vec<usize>,
}

impl OrbitReport {
    /// `beta(n)` as an unreduced fraction `(nonrigid, total)`.
    pub fn beta(&self) -> (usize, usize) {
        (self.nonrigid, self.subspaces)
    }

    /// `alpha(n, d)`: non-rigid fraction among `d`-dimensional codes.
    pub fn alpha(&self, d: usize) -> (usize, usize) {
        (self.nonrigid_by_dim[d], self.subspaces_by_dim[d])
    }
}

/// Partitions all subspaces of `GF(2)^n` into `S_n`-orbits by applying every permutation.
pub fn classify(n: usize) -> Result<OrbitReport> {
    ceiling("orbit classification", n, CLASSIFY_CEILING)?;
    let spaces = enum_subspaces(n)?;
    let index: HashMap<&Subspace, usize> = spaces.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let mut orbit_of = vec![usize::MAX; spaces.len()];
    let mut stabilizer = vec![0usize; spaces.len()];
    let mut orbits = Vec::new();
    for (i, x) in spaces.iter().enumerate() {
        for sigma in &perms {
            if x.is_fixed_by(sigma) {
                stabilizer[i] += 1;
            }
        }
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut size = 0;
        for sigma in &perms {
            let j = index[&x.permuted(sigma)];
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = id;
                size += 1;
            }
        }
        orbits.push(Orbit {
            id,
            dim: x.dim(),
            size,
            stabilizer_order: 0,
        });
    }
    for (i, &o) in orbit_of.iter().enumerate() {
        orbits[o].stabilizer_order = stabilizer[i];
    }
    let mut by_dim = vec![0; n + 1];
    for o in &orbits {
        by_dim[o.dim] += 1;
    }
    let mut nonrigid_by_dim = vec![0; n + 1];
    let mut subspaces_by_dim = vec![0; n + 1];
    for (x, &s) in spaces.iter().zip(&stabilizer) {
        subspaces_by_dim[x.dim()] += 1;
        if s >= 2 {
            nonrigid_by_dim[x.dim()] += 1;
        }
    }
    Ok(OrbitReport {
        n,
        b: orbits.len(),
        by_dim,
        orbits,
        subspaces: spaces.len(),
        nonrigid: nonrigid_by_dim.iter().sum(),
        nonrigid_by_dim,
        subspaces_by_dim,
    })
}

/// Square GF(2) matrix stored by columns: `cols[i] = M e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitMatrix {
    cols: Vec<u32>,
}

impl BitMatrix {
    fn identity(n: usize) -> Self {
        Self {
            cols: (0..n).map(|i| 1 << i).collect(),
        }
    }

    fn zero(n: usize) -> Self {
        Self { cols: vec![0; n] }
    }

    fn apply(&self, v: u32) -> u32 {
        self.cols
            .iter()
            .enumerate()
            .filter(|(i, _)| v >> i & 1 == 1)
            .fold(0, |acc, (_, &c)| acc ^ c)
    }

    fn mul(&self, other: &Self) -> Self {
        Self {
            cols: other.cols.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        Self {
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a ^ b).collect(),
        }
    }

    fn rank(&self) -> usize {
        Subspace::span(self.cols.len(), self.cols.iter().copied()).dim()
    }

    fn eval(&self, p: &GF2Poly) -> Self {
        let n = self.cols.len();
        let mut acc = Self::zero(n);
        for i in (0..=p.degree().unwrap_or(0)).rev() {
            acc = acc.mul(self);
            if p.coeff(i) {
                acc = acc.add(&Self::identity(n));
            }
        }
        acc
    }

    fn flatten(&self) -> [u64; 4] {
        let mut out = [0u64; 4];
        for (i, &c) in self.cols.iter().enumerate() {
            let bit = i * 16;
            out[bit / 64] |= (c as u64) << (bit % 64);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinPolyFactor {
    pub irreducible: GF2Poly,
    /// Exponent in the minimal polynomial.
    pub mu: usize,
    /// `dim ker p(T)^mu`.
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial {
    pub poly: GF2Poly,
    pub factors: Vec<MinPolyFactor>,
}

/// Minimal polynomial of `T(e_i) = e_{sigma(i)}`, found from the first linear
/// dependency among `I, T, T^2, ...` and factored by trial division.
pub fn minimal_polynomial(sigma: &Permutation) -> Result<MinimalPolynomial> {
    let n = sigma.n();
    ceiling("minimal polynomial", n, MINPOLY_CEILING)?;
    let t = BitMatrix {
        cols: sigma.images().iter().map(|&j| 1 << j).collect(),
    };
    // echelon rows over flattened matrices, each tagged with its polynomial combination
    let mut rows: Vec<([u64; 4], GF2Poly)> = Vec::new();
    let mut power = BitMatrix::identity(n);
    let mut k = 0;
    let poly = loop {
        let mut v = power.flatten();
        let mut combo = GF2Poly::monomial(k);
        for (r, c) in &rows {
            let lead = lead_bit(r);
            if v[lead / 64] >> (lead % 64) & 1 == 1 {
                for w in 0..4 {
                    v[w] ^= r[w];
                }
                combo = &combo + c;
            }
        }
        if v == [0; 4] {
            break combo;
        }
        rows.push((v, combo));
        rows.sort_by_key(|(r, _)| std::cmp::Reverse(lead_bit(r)));
        power = power.mul(&t);
        k += 1;
    };
    let mut rest = poly.clone();
    let mut factors = Vec::new();
    while rest.degree().unwrap() > 0 {
        let p = (2u64..)
            .map(GF2Poly::from_bits)
            .find(|f| rest.rem(f).is_zero())
            .unwrap();
        let mut mu = 0;
        while rest.rem(&p).is_zero() {
            rest = rest.div_rem(&p).0;
            mu += 1;
        }
        let kernel_dim = n - t.eval(&p.pow(mu as u32)).rank();
        factors.push(MinPolyFactor {
            irreducible: p,
            mu,
            kernel_dim,
        });
    }
    factors.sort_by(|a, b| a.irreducible.cmp(&b.irreducible));
    Ok(MinimalPolynomial { poly, factors })
}

fn lead_bit(v: &[u64; 4]) -> usize {
    for w in (0..4).rev() {
        if v[w] != 0 {
            return w * 64 + 63 - v[w].leading_zeros() as usize;
        }
    }
    0
}

/// GF(2) or GF(4), elements as 2-bit polynomials in `w` with `w^2 = w + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallField {
    q: u8,
}

impl SmallField {
    pub fn new(q: u8) -> Self {
        assert!(q == 2 || q == 4, "only GF(2) and GF(4) are supported");
        Self { q }
    }

    pub fn size(&self) -> u8 {
        self.q
    }

    fn mul(&self, a: u8, b: u8) -> u8 {
        let mut p = 0u8;
        for i in 0..2 {
            if b >> i & 1 == 1 {
                p ^= a << i;
            }
        }
        if p & 0b100 != 0 {
            p ^= 0b111;
        }
        p
    }

    fn inv(&self, a: u8) -> u8 {
        (1..self.q).find(|&b| self.mul(a, b) == 1).unwrap()
    }
}

/// Reduces `v` to RREF `rows` (pivot = first nonzero coordinate, scaled to 1).
fn reduce_fq(field: SmallField, v: &mut [u8], rows: &[Vec<u8>]) {
    for r in rows {
        let p = r.iter().position(|&x| x != 0).unwrap();
        let c = v[p];
        if c != 0 {
            for (x, &y) in v.iter_mut().zip(r) {
                *x ^= field.mul(c, y);
            }
        }
    }
}

fn rank_fq(field: SmallField, vectors: &[Vec<u8>]) -> usize {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        reduce_fq(field, &mut v, &rows);
        if let Some(p) = v.iter().position(|&x| x != 0) {
            let s = field.inv(v[p]);
            v.iter_mut().for_each(|x| *x = field.mul(*x, s));
            for r in rows.iter_mut() {
                let c = r[p];
                if c != 0 {
                    for (x, &y) in r.iter_mut().zip(&v) {
                        *x ^= field.mul(c, y);
                    }
                }
            }
            rows.push(v);
        }
    }
    rows.len()
}

/// Every subspace of `GF(q)^m` as an RREF basis.
pub fn enum_subspaces_fq(field: SmallField, m: usize) -> Vec<Vec<Vec<u8>>> {
    let q = field.size() as usize;
    let mut out = Vec::new();
    for pivots in 0u32..(1 << m) {
        let piv: Vec<usize> = (0..m).filter(|&p| pivots >> p & 1 == 1).collect();
        let frees: Vec<Vec<usize>> = piv
            .iter()
            .map(|&p| ((p + 1)..m).filter(|&j| pivots >> j & 1 == 0).collect())
            .collect();
        let total_free: usize = frees.iter().map(Vec::len).sum();
        for mut assign in 0..q.pow(total_free as u32) {
            let mut rows = Vec::with_capacity(piv.len());
            for (&p, free) in piv.iter().zip(&frees) {
                let mut row = vec![0u8; m];
                row[p] = 1;
                for &j in free {
                    row[j] = (assign % q) as u8;
                    assign /= q;
                }
                rows.push(row);
            }
            out.push(rows);
        }
    }
    out
}

/// The nilpotent shift of type `lambda`: on each block, `e_c -> e_{c+1}`, last -> 0.
fn shift(lambda: &Partition, v: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; v.len()];
    let mut start = 0;
    for &len in lambda.parts() {
        for c in 0..len - 1 {
            out[start + c + 1] = v[start + c];
        }
        start += len;
    }
    out
}

/// Submodules of the type-`lambda` module over `GF(q)[s]/(s^m)`, binned by
/// their own type. Computed by testing every `GF(q)`-subspace for
/// shift-invariance and reading off the type from kernel dimensions.
pub fn submodule_type_counts(lambda: &Partition, q: u8) -> BTreeMap<Partition, u64> {
    let field = SmallField::new(q);
    let m = lambda.size();
    let mut counts = BTreeMap::new();
    for rows in enum_subspaces_fq(field, m) {
        let invariant = rows.iter().all(|r| {
            let mut img = shift(lambda, r);
            reduce_fq(field, &mut img, &rows);
            img.iter().all(|&x| x == 0)
        });
        if !invariant {
            continue;
        }
        // dim(U cap ker N^j) = dim U - rank(N^j U) gives conjugate parts of the type
        let k = rows.len();
        let mut images = rows.clone();
        let mut conj = Vec::new();
        let mut prev = 0;
        loop {
            images = images.iter().map(|v| shift(lambda, v)).collect();
            let kernel = k - rank_fq(field, &images);
            if kernel == prev {
                break;
            }
            conj.push(kernel - prev);
            prev = kernel;
        }
        *counts.entry(Partition::from_conjugate(&conj)).or_insert(0) += 1;
    }
    counts
}
