use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

use bincensus::qarith::{g2, gauss_binomial, gauss_total, lemma1_tail_product, scaled_u, FieldSize};
use bincensus::real::HighPrecisionReal;

#[test]
fn binomial_row_sums_to_total() {
    for q in [2u64, 4] {
        let field = FieldSize::new(q).unwrap();
        for n in 0..=120u32 {
            let sum: BigUint = (0..=n as i64).map(|d| field.gauss_binomial(n, d)).sum();
            assert_eq!(sum, field.gauss_total(n), "n = {n}, q = {q}");
        }
    }
}

#[test]
fn three_term_recurrence() {
    // G_{n+1} = 2 G_n + (2^n - 1) G_{n-1}, checked against the product-formula route
    let total = |n: u32| -> BigUint { (0..=n as i64).map(|d| gauss_binomial(n, d, 2).unwrap()).sum() };
    let mut prev = total(0);
    let mut cur = total(1);
    for n in 1..=199u32 {
        let next = gauss_total(n + 1, 2).unwrap();
        assert_eq!(next, (&cur << 1u32) + ((BigUint::one() << n) - 1u32) * &prev, "n = {n}");
        prev = cur;
        cur = next;
    }
}

#[test]
fn gauss_coefficient_bounds() {
    for n in 1..=100usize {
        for d in 1..=n {
            let g = gauss_binomial(n as u32, d as i64, 2).unwrap();
            let lower = BigUint::one() << (n * d - d * d);
            assert!(lower <= g && g <= &lower << 2u32, "n = {n}, d = {d}");
        }
    }
}

#[test]
fn scaled_u_between_one_and_twenty_three() {
    let one = HighPrecisionReal::from_i64(1, 60);
    let cap = HighPrecisionReal::from_i64(23, 60);
    for n in (0..=500u32).step_by(7).chain([499, 500]) {
        let u = scaled_u(n, 2, 60).unwrap();
        // u_0 = 1 exactly; the fixed-point value may sit one ulp below
        assert!(&u + &HighPrecisionReal::pow2(-180, 60) >= one && u <= cap, "n = {n}");
    }
    // exact form of the lower bound: G^4 >= 2^{n^2}
    for n in 0..=500usize {
        assert!(g2(n).pow(4) >= BigUint::one() << (n * n));
    }
}

#[test]
fn scaled_u_limits() {
    let tol = HighPrecisionReal::from_ratio(&1.into(), &100_000.into(), 60);
    let even = HighPrecisionReal::from_ratio(&7_371_969.into(), &1_000_000.into(), 60);
    let odd = HighPrecisionReal::from_ratio(&7_371_949.into(), &1_000_000.into(), 60);
    assert!((&scaled_u(200, 2, 60).unwrap() - &even).abs() < tol);
    assert!((&scaled_u(201, 2, 60).unwrap() - &odd).abs() < tol);
    assert!(scaled_u(10, 6, 60).is_err());
}

#[test]
fn tail_product_converged() {
    let a = lemma1_tail_product(1000, 60);
    let b = lemma1_tail_product(2000, 60);
    assert!(b >= a);
    assert!(&b - &a < HighPrecisionReal::pow2(-180, 60));
    assert!(a < HighPrecisionReal::from_i64(23, 60));
    assert!(a.to_decimal_string(6).starts_with("22.12"));
}

proptest! {
    #[test]
    fn binomial_symmetry(n in 0u32..60, d in 0i64..60, q in prop::sample::select(vec![2u64, 3, 4, 5, 8])) {
        let d = d % (n as i64 + 1);
        prop_assert_eq!(
            gauss_binomial(n, d, q).unwrap(),
            gauss_binomial(n, n as i64 - d, q).unwrap()
        );
    }

    #[test]
    fn binomial_pascal(n in 1u32..50, d in 1i64..50) {
        // [n, d] = [n-1, d-1] + q^d [n-1, d]
        let d = d % (n as i64) + 1;
        let lhs = gauss_binomial(n, d, 2).unwrap();
        let rhs = gauss_binomial(n - 1, d - 1, 2).unwrap()
            + (BigUint::one() << d as u64) * gauss_binomial(n - 1, d, 2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
