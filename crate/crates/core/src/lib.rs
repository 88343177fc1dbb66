//! Exact census of binary linear codes up to coordinate permutation.
//!
//! The number `b(n)` of inequivalent binary `n`-codes (equivalently,
//! nonisomorphic binary matroids on `n` elements) is computed by averaging
//! the number of invariant subspaces over the conjugacy classes of `S_n`.
//! Invariant-subspace lattices are counted exactly from the primary
//! decomposition of each permutation operator; a brute-force oracle checks
//! everything at small `n`.

pub mod boundscheck;
pub mod burnside;
pub mod cyclestruct;
pub mod error;
pub mod gf2poly;
pub mod oracle;
pub mod output;
pub mod partition;
pub mod qarith;
pub mod real;
pub mod submodcount;

pub use burnside::{count_codes, count_codes_by_dim, correction_report, CensusRow, Strategy};
pub use cyclestruct::{class_size, partitions_of, primary_components, CycleType, PrimaryComponent};
pub use error::{Error, Result};
pub use gf2poly::{factor_cyclic, mult_order_of_2, GF2Poly};
pub use partition::Partition;
pub use qarith::{gauss_binomial, gauss_total, lemma1_tail_product, scaled_u, Natural};
pub use real::HighPrecisionReal;
pub use submodcount::{count_submodules_by_type, lattice_dim_poly, lattice_size, DimPoly};
