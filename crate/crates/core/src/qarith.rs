//! Exact q-analog counts over finite fields.
//!
//! `gauss_total(n, q)` is the number of subspaces of `GF(q)^n` and
//! `gauss_binomial(n, d, q)` the number of `d`-dimensional ones. The total is
//! produced by the three-term recurrence and the binomial by the q-factorial
//! product, so the two routes check each other.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::real::HighPrecisionReal;

pub type Natural = BigUint;

/// Size of a finite field, validated to be a prime power.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSize(BigUint);

impl FieldSize {
    pub fn new(q: u64) -> Result<Self> {
        if is_prime_power(q) {
            Ok(Self(BigUint::from(q)))
        } else {
            Err(Error::InvalidFieldSize(q))
        }
    }

    /// `2^degree`, the residue field of an irreducible of that degree.
    pub fn pow2(degree: u32) -> Self {
        assert!(degree >= 1);
        Self(BigUint::one() << degree)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn gauss_total(&self, n: u32) -> Natural {
        let q = &self.0;
        let (mut prev, mut cur) = (BigUint::one(), BigUint::from(2u32));
        if n == 0 {
            return prev;
        }
        let mut q_pow = q.clone();
        for _ in 1..n {
            let next = (&cur << 1u32) + (&q_pow - 1u32) * &prev;
            prev = cur;
            cur = next;
            q_pow *= q;
        }
        cur
    }

    pub fn gauss_binomial(&self, n: u32, d: i64) -> Natural {
        qbinom(n as u64, d, &self.0)
    }
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            while m.is_multiple_of(p) {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

/// Gaussian binomial for an arbitrary (unchecked) base `q`, by the product
/// `prod_{i<k} (q^{n-i} - 1) / (q^{i+1} - 1)`. Every prefix of the product is
/// itself a Gaussian binomial, so each division is exact.
pub(crate) fn qbinom(n: u64, k: i64, q: &BigUint) -> Natural {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        let num = q.pow((n - i) as u32) - 1u32;
        let den = q.pow((i + 1) as u32) - 1u32;
        acc *= num;
        debug_assert!((&acc % &den).is_zero());
        acc /= den;
    }
    acc
}

pub fn gauss_total(n: u32, q: u64) -> Result<Natural> {
    Ok(FieldSize::new(q)?.gauss_total(n))
}

pub fn gauss_binomial(n: u32, d: i64, q: u64) -> Result<Natural> {
    Ok(FieldSize::new(q)?.gauss_binomial(n, d))
}

/// Cached `G(n, 2)`.
pub fn g2(n: usize) -> Natural {
    static TABLE: OnceLock<Mutex<Vec<Natural>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![BigUint::one(), BigUint::from(2u32)]));
    let mut t = table.lock().unwrap();
    while t.len() <= n {
        let m = t.len() - 1;
        let next = (&t[m] << 1u32) + ((BigUint::one() << m) - 1u32) * &t[m - 1];
        t.push(next);
    }
    t[n].clone()
}

/// `G(n, q) * q^(-n^2/4)`.
pub fn scaled_u(n: u32, q: u64, precision: u32) -> Result<HighPrecisionReal> {
    assert!(precision >= 30, "precision must be at least 30 digits");
    let field = FieldSize::new(q)?;
    let g = field.gauss_total(n);
    let n2 = n as u64 * n as u64;
    let whole = field.value().pow((n2 / 4) as u32);
    let mut u = HighPrecisionReal::from_natural_ratio(&g, &whole, precision);
    if !n2.is_multiple_of(4) {
        // n odd: one remaining factor q^(-1/4)
        let root = HighPrecisionReal::root(field.value(), 4, precision);
        u = &u / &root;
    }
    Ok(u)
}

/// `1.7 * prod_{k=2}^{terms+1} (2^{5/4 - k/2} + 1 - 2^{1-k})`, the running
/// upper bound on `u_n` for `q = 2`.
pub fn lemma1_tail_product(terms: usize, precision: u32) -> HighPrecisionReal {
    let one = HighPrecisionReal::from_i64(1, precision);
    // 5/4 - k/2 = (5 - 2k)/4, always an odd numerator
    let quarter = HighPrecisionReal::pow2_rational(1, 4, precision);
    let three_quarters = HighPrecisionReal::pow2_rational(3, 4, precision);
    let mut acc = HighPrecisionReal::from_ratio(&17.into(), &10.into(), precision);
    for k in 2..=(terms as i64 + 1) {
        let e = 5 - 2 * k;
        let whole = e.div_euclid(4);
        let root = if e.rem_euclid(4) == 1 {
            &quarter
        } else {
            &three_quarters
        };
        let factor = &(&root.mul_pow2(whole) + &one) - &HighPrecisionReal::pow2(1 - k, precision);
        acc = &acc * &factor;
    }
    acc
}
