//! The census: `b(n)` and `b(n, d)` via the Cauchy-Frobenius sum over cycle
//! types of `S_n`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::cyclestruct::{class_size, factorial, partitions_of, CycleType};
use crate::error::{Error, Result};
use crate::qarith::{g2, Natural};
use crate::real::{HighPrecisionReal, DEFAULT_PRECISION};
use crate::submodcount::lattice_dim_poly;

/// How the sum over cycle types is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    Sequential,
    /// Rayon reduction; falls back to sequential without the `parallel` feature.
    #[default]
    Parallel,
}

/// `sum_sigma |L(T_sigma)|` over `S_n`, graded by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideSum {
    pub n: usize,
    pub by_dim: Vec<Natural>,
}

impl BurnsideSum {
    pub fn total(&self) -> Natural {
        self.by_dim.iter().sum()
    }

    /// Contribution of the non-identity permutations.
    pub fn nonidentity(&self) -> Natural {
        self.total() - g2(self.n)
    }
}

fn weighted_terms(ct: &CycleType) -> Vec<Natural> {
    let weight = class_size(ct);
    lattice_dim_poly(ct)
        .into_coefficients()
        .into_iter()
        .map(|c| c * &weight)
        .collect()
}

fn add_into(mut acc: Vec<Natural>, other: Vec<Natural>) -> Vec<Natural> {
    for (a, b) in acc.iter_mut().zip(other) {
        *a += b;
    }
    acc
}

pub fn burnside_sum(n: usize, strategy: Strategy) -> BurnsideSum {
    assert!(n >= 1);
    let types: Vec<CycleType> = partitions_of(n).collect();
    let zero = || vec![BigUint::zero(); n + 1];
    let by_dim = match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            types
                .par_iter()
                .map(weighted_terms)
                .reduce(zero, add_into)
        }
        _ => types.iter().map(weighted_terms).fold(zero(), add_into),
    };
    BurnsideSum { n, by_dim }
}

/// One row of the census table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub b: Natural,
    /// `G(n, 2)`.
    pub g: Natural,
    /// `b(n, d)` for `d = 0..=n`.
    pub by_dim: Vec<Natural>,
    /// The undivided Burnside sum `n! * b(n)`.
    pub burnside_sum: Natural,
}

impl CensusRow {
    /// `R(n) = n! b(n) / G(n,2) - 1`.
    pub fn correction(&self, precision: u32) -> HighPrecisionReal {
        let num = BigInt::from(self.burnside_sum.clone()) - BigInt::from(self.g.clone());
        HighPrecisionReal::from_ratio(&num, &BigInt::from(self.g.clone()), precision)
    }
}

fn exact_div(sum: &Natural, n: usize) -> Result<Natural> {
    let (q, r) = sum.div_rem(&factorial(n));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NotDivisible(n))
    }
}

pub fn count_codes_with(n: usize, strategy: Strategy) -> Result<CensusRow> {
    if n == 0 {
        return Err(Error::BelowMinimum { what: "the census", n, min: 1 });
    }
    let sum = burnside_sum(n, strategy);
    let by_dim = sum
        .by_dim
        .iter()
        .map(|c| exact_div(c, n))
        .collect::<Result<Vec<_>>>()?;
    let total = sum.total();
    Ok(CensusRow {
        n,
        b: exact_div(&total, n)?,
        g: g2(n),
        by_dim,
        burnside_sum: total,
    })
}

/// Census row for `n`, memoized for the life of the process.
pub fn count_codes(n: usize) -> Result<Arc<CensusRow>> {
    static ROWS: OnceLock<Mutex<BTreeMap<usize, Arc<CensusRow>>>> = OnceLock::new();
    let rows = ROWS.get_or_init(Default::default);
    if let Some(row) = rows.lock().unwrap().get(&n) {
        return Ok(row.clone());
    }
    let row = Arc::new(count_codes_with(n, Strategy::Parallel)?);
    Ok(rows.lock().unwrap().entry(n).or_insert(row).clone())
}

pub fn count_codes_by_dim(n: usize, d: i64) -> Result<Natural> {
    if d < 0 || d as usize > n {
        return Err(Error::DimensionOutOfRange { n, d });
    }
    Ok(count_codes(n)?.by_dim[d as usize].clone())
}

/// Size of the correction term against its transposition-class estimate.
#[derive(Clone, Debug)]
pub struct CorrectionReport {
    pub n: usize,
    /// `R(n) = n! b(n) / G(n,2) - 1`.
    pub correction: HighPrecisionReal,
    /// `R(n)` divided by `C(n,2) (2G(n-1,2) - G(n-2,2)) / G(n,2)`.
    pub rho: HighPrecisionReal,
    /// `log2 R(n) + n/2 - 2 log2 n`.
    pub exponent: f64,
}

impl CorrectionReport {
    /// Exponent constants against which `exponent` is compared in reports.
    pub const THEOREM_LOWER: f64 = 1.2499;
    pub const THEOREM_UPPER: f64 = 1.2501;
    pub const EVEN_REFINED: f64 = 13.0 / 4.0;
    pub const ODD_REFINED: f64 = 11.0 / 4.0;
}

pub fn correction_report(n: usize) -> Result<CorrectionReport> {
    if n < 4 {
        return Err(Error::BelowMinimum { what: "the correction report", n, min: 4 });
    }
    let row = count_codes(n)?;
    let precision = DEFAULT_PRECISION;
    let correction = row.correction(precision);
    let excess = BigInt::from(row.burnside_sum.clone()) - BigInt::from(row.g.clone());
    let pairs = BigUint::from(n * (n - 1) / 2);
    let transposition_term = pairs * (g2(n - 1) * 2u32 - g2(n - 2));
    let rho = HighPrecisionReal::from_ratio(&excess, &BigInt::from(transposition_term), precision);
    let exponent = correction.log2() + n as f64 / 2.0 - 2.0 * (n as f64).log2();
    Ok(CorrectionReport {
        n,
        correction,
        rho,
        exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        BigUint::from(v)
    }

    #[test]
    fn small_census() {
        let expect = [(1, 2u64), (2, 4), (3, 8), (4, 16)];
        for (n, b) in expect {
            let row = count_codes(n).unwrap();
            assert_eq!(row.b, nat(b), "n = {n}");
            assert_eq!(row.by_dim.iter().sum::<Natural>(), row.b);
        }
        assert_eq!(count_codes(2).unwrap().burnside_sum, nat(8));
        assert_eq!(count_codes(3).unwrap().burnside_sum, nat(16 + 24 + 8));
        assert_eq!(count_codes(4).unwrap().burnside_sum, nat(67 + 6 * 27 + 3 * 15 + 8 * 10 + 6 * 5));
    }

    #[test]
    fn by_dim_queries() {
        for n in 1..8 {
            assert_eq!(count_codes_by_dim(n, 0).unwrap(), nat(1));
            assert_eq!(count_codes_by_dim(n, n as i64).unwrap(), nat(1));
        }
        assert_eq!(count_codes_by_dim(2, 1).unwrap(), nat(2));
        assert!(matches!(count_codes_by_dim(3, 4), Err(Error::DimensionOutOfRange { .. })));
        assert!(count_codes_by_dim(3, -1).is_err());
        assert!(count_codes(0).is_err());
    }

    #[test]
    fn strategies_agree() {
        for n in [1, 5, 11] {
            assert_eq!(
                burnside_sum(n, Strategy::Sequential),
                burnside_sum(n, Strategy::Parallel)
            );
        }
    }

    #[test]
    fn rho_exceeds_one() {
        for n in 4..16 {
            let r = correction_report(n).unwrap();
            assert!(r.rho > HighPrecisionReal::from_i64(1, 60), "n = {n}");
        }
        assert!(correction_report(3).is_err());
    }
}
