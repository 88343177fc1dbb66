use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;

use bincensus::cyclestruct::{partitions_of, primary_components, CycleType};
use bincensus::oracle::{
    classify, enum_subspaces, invariant_count, invariant_dim_counts, minimal_polynomial, submodule_type_counts,
    Permutation, Subspace,
};
use bincensus::submodcount::{count_submodules_by_type, lattice_dim_poly, lattice_size, subpartitions};
use bincensus::{count_codes, GF2Poly, Partition};

fn type_of(lengths: &[usize]) -> CycleType {
    CycleType::from_lengths(lengths).unwrap()
}

fn assert_matches_oracle(ct: &CycleType) {
    let sigma = Permutation::of_type(ct);
    assert_eq!(lattice_size(ct), invariant_count(&sigma).unwrap(), "type {ct}");
    let oracle: Vec<BigUint> = invariant_dim_counts(&sigma).unwrap().into_iter().map(BigUint::from).collect();
    assert_eq!(lattice_dim_poly(ct).coefficients(), &oracle[..], "type {ct}");
}

#[test]
fn lattice_matches_oracle_small_n() {
    for n in 1..=6 {
        for ct in partitions_of(n) {
            assert_matches_oracle(&ct);
        }
    }
}

#[test]
fn lattice_matches_oracle_at_seven() {
    for lengths in [&[7][..], &[6, 1], &[4, 3], &[2, 2, 2, 1], &[4, 2, 1], &[3, 3, 1]] {
        assert_matches_oracle(&type_of(lengths));
    }
}

#[test]
fn invariant_count_is_a_class_function() {
    for n in [4, 5] {
        let mut seen: BTreeMap<String, BigUint> = BTreeMap::new();
        for sigma in Permutation::all(n) {
            let count = invariant_count(&sigma).unwrap();
            let key = sigma.cycle_type().to_string();
            if let Some(prev) = seen.insert(key.clone(), count.clone()) {
                assert_eq!(prev, count, "type {key}");
            }
        }
        assert_eq!(seen.len(), partitions_of(n).count());
    }
}

/// `p(T) v` for the permutation operator, by Horner's rule.
fn eval_at(p: &GF2Poly, sigma: &Permutation, v: u32) -> u32 {
    let deg = p.degree().unwrap();
    (0..=deg).rev().fold(0u32, |acc, i| sigma.apply(acc) ^ if p.coeff(i) { v } else { 0 })
}

#[test]
fn invariant_subspaces_split_over_primary_components() {
    for n in 1..=6 {
        for ct in partitions_of(n) {
            let sigma = Permutation::of_type(&ct);
            let minpoly = minimal_polynomial(&sigma).unwrap();
            let blocks: Vec<Subspace> = minpoly
                .factors
                .iter()
                .map(|f| {
                    let q = f.irreducible.pow(f.mu as u32);
                    Subspace::span(n, (0..1u32 << n).filter(|&v| eval_at(&q, &sigma, v) == 0))
                })
                .collect();
            assert_eq!(blocks.iter().map(Subspace::dim).sum::<usize>(), n, "type {ct}");
            for u in enum_subspaces(n).unwrap() {
                if !u.is_fixed_by(&sigma) {
                    continue;
                }
                let pieces: usize = blocks
                    .iter()
                    .map(|w| Subspace::span(n, (0..1u32 << n).filter(|&v| u.contains(v) && w.contains(v))).dim())
                    .sum();
                assert_eq!(pieces, u.dim(), "type {ct}");
            }
        }
    }
}

#[test]
fn unipotent_and_nilpotent_lattices_agree() {
    for n in 1..=6 {
        for ct in partitions_of(n).filter(|c| c.lengths().iter().all(|l| l.is_power_of_two())) {
            let sigma = Permutation::of_type(&ct);
            let nilpotent = enum_subspaces(n)
                .unwrap()
                .into_iter()
                .filter(|u| u.basis().iter().all(|&v| u.contains(sigma.apply(v) ^ v)))
                .count();
            assert_eq!(BigUint::from(nilpotent), invariant_count(&sigma).unwrap(), "type {ct}");
        }
    }
}

#[test]
fn minimal_polynomial_matches_components() {
    for n in 1..=12 {
        for ct in partitions_of(n) {
            let minpoly = minimal_polynomial(&Permutation::of_type(&ct)).unwrap();
            let comps = primary_components(&ct);
            assert_eq!(minpoly.factors.len(), comps.len(), "type {ct}");
            for (f, c) in minpoly.factors.iter().zip(&comps) {
                assert_eq!(f.irreducible, c.irreducible, "type {ct}");
                assert_eq!(f.mu, c.mu(), "type {ct}");
                assert_eq!(f.kernel_dim, c.dim(), "type {ct}");
            }
        }
    }
}

#[test]
fn orbit_classification_matches_census() {
    for n in 1..=5 {
        let report = classify(n).unwrap();
        let row = count_codes(n).unwrap();
        assert_eq!(BigUint::from(report.b), row.b, "n = {n}");
        let by_dim: Vec<BigUint> = report.by_dim.iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(by_dim, row.by_dim, "n = {n}");
        assert_eq!(report.orbits.len(), report.b);
    }
}

#[test]
fn submodule_formula_small_modules() {
    for m in 1..=5 {
        for lambda in partitions_of(m).map(|c| Partition::new(c.lengths())) {
            for q in [2u8, 4] {
                let brute = submodule_type_counts(&lambda, q);
                for mu in subpartitions(&lambda) {
                    let formula = count_submodules_by_type(&lambda, &mu, &BigUint::from(q));
                    assert_eq!(formula, BigUint::from(*brute.get(&mu).unwrap_or(&0)), "{lambda} > {mu}, q = {q}");
                }
                assert!(brute.keys().all(|mu| mu.is_contained_in(&lambda)));
            }
        }
    }
}

fn cycle_type_strategy() -> impl Strategy<Value = CycleType> {
    prop::collection::vec(1usize..12, 1..6).prop_map(|v| CycleType::from_lengths(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dim_poly_is_palindromic(ct in cycle_type_strategy()) {
        // the permutation module is self-dual, so U -> U^perp reverses the lattice
        let poly = lattice_dim_poly(&ct);
        let c = poly.coefficients();
        prop_assert_eq!(c.len(), ct.n() + 1);
        prop_assert!(c.iter().eq(c.iter().rev()));
        prop_assert_eq!(poly.total(), lattice_size(&ct));
        prop_assert_eq!(&c[0], &BigUint::from(1u32));
    }

    #[test]
    fn appending_fixed_points_never_shrinks(ct in cycle_type_strategy()) {
        let mut lengths = ct.lengths();
        lengths.push(1);
        prop_assert!(lattice_size(&CycleType::from_lengths(&lengths).unwrap()) >= lattice_size(&ct));
    }
}
