//! Polynomials over GF(2) and the factorization of `t^u - 1` for odd `u`.
//!
//! For odd `u` the polynomial `t^u - 1` is squarefree, and its irreducible
//! factors correspond one-to-one to the 2-cyclotomic cosets modulo `u`.
//! Factors are found with Berlekamp's algorithm, which is deterministic over
//! GF(2), and cross-checked against the coset sizes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Polynomial over GF(2); bit `i` of the word vector is the coefficient of `t^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GF2Poly {
    words: Vec<u64>,
}

impl GF2Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(exp: usize) -> Self {
        let mut p = Self {
            words: vec![0; exp / 64 + 1],
        };
        p.words[exp / 64] = 1 << (exp % 64);
        p
    }

    /// Polynomial with the given low 64 coefficient bits.
    pub fn from_bits(bits: u64) -> Self {
        Self::from_words(vec![bits])
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Self { words };
        p.normalize();
        p
    }

    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exps {
            p = &p + &Self::monomial(e);
        }
        p
    }

    /// `t^u + 1`, which equals `t^u - 1` in characteristic 2.
    pub fn cyclic(u: usize) -> Self {
        Self::from_exponents(&[u, 0])
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    fn xor_shifted(&mut self, other: &Self, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs != 0 {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            rem.xor_shifted(divisor, shift);
            rem.normalize();
            quot.xor_shifted(&Self::monomial(0), shift);
        }
        quot.normalize();
        (quot, rem)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn square(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..=self.degree().unwrap_or(0) {
            if self.coeff(i) {
                out.xor_shifted(&Self::one(), 2 * i);
            }
        }
        out.normalize();
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    /// Coefficients as lowercase hex, most significant nibble first.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, w) in self.words.iter().rev().enumerate() {
            if i == 0 {
                s.push_str(&format!("{w:x}"));
            } else {
                s.push_str(&format!("{w:016x}"));
            }
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Error::Cache(format!("bad hex polynomial {s:?}")));
        }
        let mut words = Vec::new();
        let mut end = s.len();
        while end > 0 {
            let start = end.saturating_sub(16);
            words.push(u64::from_str_radix(&s[start..end], 16).unwrap());
            end = start;
        }
        Ok(Self::from_words(words))
    }

    /// Brute-force irreducibility: no factor of degree `1..=deg/2`.
    pub fn is_irreducible_brute(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        assert!(d <= 40, "brute-force irreducibility limited to degree 40");
        (2u64..(1u64 << (d / 2 + 1)))
            .map(Self::from_bits)
            .all(|f| !self.rem(&f).is_zero() || f.degree().unwrap() == 0)
    }
}

impl std::ops::Add for &GF2Poly {
    type Output = GF2Poly;
    fn add(self, rhs: &GF2Poly) -> GF2Poly {
        let mut out = self.clone();
        out.xor_shifted(rhs, 0);
        out.normalize();
        out
    }
}

impl std::ops::Mul for &GF2Poly {
    type Output = GF2Poly;
    fn mul(self, rhs: &GF2Poly) -> GF2Poly {
        let mut out = GF2Poly::zero();
        if let Some(d) = self.degree() {
            for i in 0..=d {
                if self.coeff(i) {
                    out.xor_shifted(rhs, i);
                }
            }
        }
        out.normalize();
        out
    }
}

impl PartialOrd for GF2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by degree, then by coefficient bits from the top down.
impl Ord for GF2Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::Display for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0");
        };
        let terms: Vec<String> = (0..=d)
            .rev()
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Poly({self})")
    }
}

fn check_odd(m: u64) -> Result<()> {
    if m.is_multiple_of(2) {
        Err(Error::EvenModulus(m))
    } else {
        Ok(())
    }
}

/// Least `e >= 1` with `2^e = 1 (mod m)`.
pub fn mult_order_of_2(m: u64) -> Result<u64> {
    check_odd(m)?;
    if m == 1 {
        return Ok(1);
    }
    let mut x = 2 % m;
    let mut e = 1;
    while x != 1 {
        x = (x as u128 * 2 % m as u128) as u64;
        e += 1;
    }
    Ok(e)
}

/// A 2-cyclotomic coset `{a, 2a, 4a, ...} mod u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCoset {
    pub modulus: u64,
    pub members: BTreeSet<u64>,
}

impl CyclotomicCoset {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn leader(&self) -> u64 {
        *self.members.first().unwrap()
    }
}

pub fn cyclotomic_cosets(u: u64) -> Result<Vec<CyclotomicCoset>> {
    check_odd(u)?;
    let mut seen = vec![false; u as usize];
    let mut cosets = Vec::new();
    for a in 0..u {
        if seen[a as usize] {
            continue;
        }
        let mut members = BTreeSet::new();
        let mut x = a;
        while members.insert(x) {
            seen[x as usize] = true;
            x = x * 2 % u;
        }
        cosets.push(CyclotomicCoset { modulus: u, members });
    }
    Ok(cosets)
}

/// Row-reduce `rows` (each `width` bits) and return a basis of the left
/// kernel: bitmasks over row indices whose combination vanishes.
fn left_kernel(rows: &[GF2Poly], width: usize) -> Vec<GF2Poly> {
    let n = rows.len();
    let mut work: Vec<(GF2Poly, GF2Poly)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), GF2Poly::monomial(i)))
        .collect();
    let mut pivot_row = 0;
    for col in (0..width).rev() {
        let Some(p) = (pivot_row..n).find(|&i| work[i].0.coeff(col)) else {
            continue;
        };
        work.swap(pivot_row, p);
        let (pv, pt) = work[pivot_row].clone();
        for (i, row) in work.iter_mut().enumerate() {
            if i != pivot_row && row.0.coeff(col) {
                row.0 = &row.0 + &pv;
                row.1 = &row.1 + &pt;
            }
        }
        pivot_row += 1;
    }
    work.into_iter()
        .skip(pivot_row)
        .map(|(_, combo)| combo)
        .collect()
}

/// Distinct irreducible factors of a squarefree polynomial, sorted.
pub fn berlekamp_squarefree(f: &GF2Poly) -> Vec<GF2Poly> {
    let d = f.degree().expect("cannot factor zero");
    if d <= 1 {
        return vec![f.clone()];
    }
    // rows: t^{2i} mod f + t^i; kernel vectors g satisfy g^2 = g (mod f)
    let mut rows = Vec::with_capacity(d);
    let mut power = GF2Poly::one();
    let t2 = GF2Poly::monomial(2).rem(f);
    for i in 0..d {
        rows.push(&power + &GF2Poly::monomial(i));
        power = (&power * &t2).rem(f);
    }
    let kernel = left_kernel(&rows, d);
    let count = kernel.len();
    let mut factors = vec![f.clone()];
    for g in &kernel {
        if factors.len() == count {
            break;
        }
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(factors.len() + 1);
        for h in factors {
            if h.degree().unwrap() == 1 {
                next.push(h);
                continue;
            }
            let a = h.gcd(&g.rem(&h));
            let ad = a.degree().unwrap_or(0);
            if a.is_zero() || ad == 0 || ad == h.degree().unwrap() {
                next.push(h);
            } else {
                let b = h.div_rem(&a).0;
                next.push(a);
                next.push(b);
            }
        }
        factors = next;
    }
    assert_eq!(factors.len(), count, "berlekamp failed to separate factors");
    factors.sort();
    factors
}

fn factor_cyclic_uncached(u: u64) -> Vec<GF2Poly> {
    let factors = berlekamp_squarefree(&GF2Poly::cyclic(u as usize));
    let mut degrees: Vec<usize> = factors.iter().map(|f| f.degree().unwrap()).collect();
    let mut sizes: Vec<usize> = cyclotomic_cosets(u).unwrap().iter().map(|c| c.size()).collect();
    degrees.sort_unstable();
    sizes.sort_unstable();
    assert_eq!(degrees, sizes, "factor degrees disagree with cyclotomic cosets for u = {u}");
    factors
}

/// Memo of `t^u - 1` factorizations, keyed by odd `u`.
#[derive(Default)]
pub struct FactorCache {
    map: RwLock<BTreeMap<u64, Arc<Vec<GF2Poly>>>>,
}

impl FactorCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static FactorCache {
        static GLOBAL: OnceLock<FactorCache> = OnceLock::new();
        GLOBAL.get_or_init(FactorCache::new)
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn factor(&self, u: u64) -> Result<Arc<Vec<GF2Poly>>> {
        check_odd(u)?;
        if let Some(f) = self.map.read().unwrap().get(&u) {
            return Ok(f.clone());
        }
        let f = Arc::new(factor_cyclic_uncached(u));
        Ok(self.map.write().unwrap().entry(u).or_insert(f).clone())
    }

    /// One line per `u`: `u: d1,d2,...; h1,h2,...` with degrees and
    /// hex-encoded factors in sorted order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (u, factors) in self.map.read().unwrap().iter() {
            let degs: Vec<String> = factors.iter().map(|f| f.degree().unwrap().to_string()).collect();
            let hexes: Vec<String> = factors.iter().map(GF2Poly::to_hex).collect();
            out.push_str(&format!("{u}: {}; {}\n", degs.join(","), hexes.join(",")));
        }
        out
    }

    /// Parses and verifies (product must equal `t^u + 1`) each line, then merges.
    pub fn merge_serialized(&self, text: &str) -> Result<usize> {
        let mut parsed = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |why: &str| Error::Cache(format!("line {}: {why}", lineno + 1));
            let (u, rest) = line.split_once(':').ok_or_else(|| bad("missing ':'"))?;
            let u: u64 = u.trim().parse().map_err(|_| bad("bad modulus"))?;
            check_odd(u).map_err(|_| bad("even modulus"))?;
            let (degs, hexes) = rest.split_once(';').ok_or_else(|| bad("missing ';'"))?;
            let degs: Vec<usize> = degs
                .split(',')
                .map(|d| d.trim().parse().map_err(|_| bad("bad degree")))
                .collect::<Result<_>>()?;
            let factors: Vec<GF2Poly> = hexes
                .split(',')
                .map(GF2Poly::from_hex)
                .collect::<Result<_>>()?;
            if degs.len() != factors.len()
                || degs.iter().zip(&factors).any(|(&d, f)| f.degree() != Some(d))
            {
                return Err(bad("degree list does not match factors"));
            }
            let product = factors.iter().fold(GF2Poly::one(), |acc, f| &acc * f);
            if product != GF2Poly::cyclic(u as usize) {
                return Err(bad("factors do not multiply to t^u + 1"));
            }
            let mut sorted = factors.clone();
            sorted.sort();
            if sorted != factors {
                return Err(bad("factors not in canonical order"));
            }
            parsed.push((u, factors));
        }
        let count = parsed.len();
        let mut map = self.map.write().unwrap();
        for (u, f) in parsed {
            map.entry(u).or_insert_with(|| Arc::new(f));
        }
        Ok(count)
    }

    pub fn load(&self, path: &Path) -> Result<usize> {
        match std::fs::read_to_string(path) {
            Ok(text) => self.merge_serialized(&text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(0),
            Err(e) => Err(Error::Cache(format!("{}: {e}", path.display()))),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.serialize())
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }
}

/// Distinct irreducible factors of `t^u - 1` over GF(2), sorted with `t + 1` first.
pub fn factor_cyclic(u: u64) -> Result<Arc<Vec<GF2Poly>>> {
    FactorCache::global().factor(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u64) -> GF2Poly {
        GF2Poly::from_bits(bits)
    }

    #[test]
    fn order_of_two() {
        assert_eq!(mult_order_of_2(1).unwrap(), 1);
        assert_eq!(mult_order_of_2(7).unwrap(), 3);
        assert_eq!(mult_order_of_2(9).unwrap(), 6);
        assert_eq!(mult_order_of_2(8), Err(Error::EvenModulus(8)));
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(*factor_cyclic(1).unwrap(), vec![p(0b11)]);
        assert_eq!(*factor_cyclic(3).unwrap(), vec![p(0b11), p(0b111)]);
        assert_eq!(
            *factor_cyclic(7).unwrap(),
            vec![p(0b11), p(0b1011), p(0b1101)]
        );
        assert_eq!(factor_cyclic(4).unwrap_err(), Error::EvenModulus(4));
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(0b1011);
        let b = p(0b111);
        let prod = &a * &b;
        let (q, r) = prod.div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        assert_eq!(p(0b11).pow(4), p(0b10001));
        assert_eq!(p(0b11).to_string(), "t + 1");
        assert_eq!(GF2Poly::zero().degree(), None);
        let big = GF2Poly::cyclic(200);
        assert_eq!(GF2Poly::from_hex(&big.to_hex()).unwrap(), big);
        assert_eq!(big.degree(), Some(200));
    }

    #[test]
    fn cosets_partition_residues() {
        for u in (1..60).step_by(2) {
            let cosets = cyclotomic_cosets(u).unwrap();
            let total: usize = cosets.iter().map(CyclotomicCoset::size).sum();
            assert_eq!(total as u64, u);
            for c in &cosets {
                for &m in &c.members {
                    assert!(c.members.contains(&(m * 2 % u)));
                }
            }
        }
    }

    #[test]
    fn cache_round_trip() {
        let cache = FactorCache::new();
        for u in [1, 3, 7, 9, 15, 73, 127, 201] {
            cache.factor(u).unwrap();
        }
        let text = cache.serialize();
        assert!(text.starts_with("1: 1; 3\n3: 1,2; 3,7\n"));
        let other = FactorCache::new();
        assert_eq!(other.merge_serialized(&text).unwrap(), 8);
        assert_eq!(other.serialize(), text);
    }

    #[test]
    fn cache_rejects_corruption() {
        let cache = FactorCache::new();
        assert!(cache.merge_serialized("3: 1,2; 3,5\n").is_err());
        assert!(cache.merge_serialized("4: 1; 3\n").is_err());
        assert!(cache.merge_serialized("3 1,2; 3,7\n").is_err());
        assert!(cache.merge_serialized("3: 2,1; 7,3\n").is_err());
    }
}
