//! Exact size of the invariant-subspace lattice of a permutation operator.
//!
//! Each primary block is a module over a local ring `K[s]/(s^m)` with residue
//! field of size `Q`, of type `lambda`. Its submodules of type `mu` number
//!
//! ```text
//! N(lambda, mu; Q) = prod_i Q^{mu'_{i+1} (lambda'_i - mu'_i)} [lambda'_i - mu'_{i+1}, mu'_i - mu'_{i+1}]_Q
//! ```
//!
//! where primes denote conjugate partitions. The whole lattice is the product
//! of the block lattices.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cyclestruct::{primary_components, CycleType};
pub use crate::partition::Partition;
use crate::qarith::{qbinom, Natural};

/// Invariant-subspace counts graded by GF(2)-dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimPoly {
    coefficients: Vec<Natural>,
}

impl DimPoly {
    pub fn new(coefficients: Vec<Natural>) -> Self {
        Self { coefficients }
    }

    pub fn one() -> Self {
        Self::new(vec![BigUint::one()])
    }

    pub fn coefficients(&self) -> &[Natural] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<Natural> {
        self.coefficients
    }

    /// Top dimension.
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn total(&self) -> Natural {
        self.coefficients.iter().sum()
    }

    pub fn convolve(&self, other: &DimPoly) -> DimPoly {
        let mut out = vec![BigUint::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        DimPoly::new(out)
    }
}

/// All `mu` contained in `lambda`, enumerated by their conjugates
/// `mu'_1 >= mu'_2 >= ...` with `mu'_i <= lambda'_i`.
pub fn subpartitions(lambda: &Partition) -> Vec<Partition> {
    fn go(bound: &[usize], i: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == bound.len() {
            out.push(Partition::from_conjugate(cur));
            return;
        }
        for v in 0..=cap.min(bound[i]) {
            if v == 0 {
                // all later coordinates are zero too
                out.push(Partition::from_conjugate(cur));
                continue;
            }
            cur.push(v);
            go(bound, i + 1, v, cur, out);
            cur.pop();
        }
    }
    let conj = lambda.conjugate();
    let mut out = Vec::new();
    go(&conj, 0, usize::MAX, &mut Vec::new(), &mut out);
    out
}

/// Number of submodules of type `mu` in a module of type `lambda` over a
/// local principal ideal ring with residue field of size `q`. Zero unless
/// `mu` is contained in `lambda`.
pub fn count_submodules_by_type(lambda: &Partition, mu: &Partition, q: &Natural) -> Natural {
    let lc = lambda.conjugate();
    let mut mc = mu.conjugate();
    if mc.len() > lc.len() {
        return BigUint::zero();
    }
    mc.resize(lc.len() + 1, 0);
    if mc.iter().zip(&lc).any(|(m, l)| m > l) {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..lc.len() {
        let exp = mc[i + 1] * (lc[i] - mc[i]);
        if exp > 0 {
            acc *= q.pow(exp as u32);
        }
        acc *= qbinom((lc[i] - mc[i + 1]) as u64, (mc[i] - mc[i + 1]) as i64, q);
    }
    acc
}

type LatticeKey = (Vec<usize>, Natural, usize);

fn lattice_cache() -> &'static RwLock<HashMap<LatticeKey, Arc<DimPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<LatticeKey, Arc<DimPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Submodule lattice of one primary block, graded by GF(2)-dimension:
/// a type-`mu` submodule has dimension `degree * |mu|`.
pub fn component_lattice(lambda: &Partition, q: &Natural, degree: usize) -> Arc<DimPoly> {
    let key = (lambda.parts().to_vec(), q.clone(), degree);
    if let Some(hit) = lattice_cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let mut coefficients = vec![BigUint::zero(); degree * lambda.size() + 1];
    for mu in subpartitions(lambda) {
        coefficients[degree * mu.size()] += count_submodules_by_type(lambda, &mu, q);
    }
    let poly = Arc::new(DimPoly::new(coefficients));
    lattice_cache()
        .write()
        .unwrap()
        .entry(key)
        .or_insert(poly)
        .clone()
}

/// Lattices of every primary block of `T_sigma`, in component order.
pub fn component_lattices(ct: &CycleType) -> Vec<Arc<DimPoly>> {
    primary_components(ct)
        .iter()
        .map(|c| component_lattice(&c.lambda, &c.residue_size(), c.degree))
        .collect()
}

pub fn lattice_dim_poly(ct: &CycleType) -> DimPoly {
    component_lattices(ct)
        .iter()
        .fold(DimPoly::one(), |acc, c| acc.convolve(c))
}

/// Number of `T_sigma`-invariant subspaces of `GF(2)^n`.
pub fn lattice_size(ct: &CycleType) -> Natural {
    component_lattices(ct)
        .iter()
        .fold(BigUint::one(), |acc, c| acc * c.total())
}
