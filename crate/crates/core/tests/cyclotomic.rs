use num_bigint::BigInt;
use proptest::prelude::*;
use subsum::cyclotomic::{
    binomial_cyclo_divides, divisors, min_exponents, phi, phi_at_minus_one, phi_at_one,
    to_cyclo_exponents, FactoredBinomialProduct,
};
use subsum::intpoly::{gcd_primitive, IntPoly};

const M_MAX: usize = 200;

/// Euler's totient for every m <= limit, by a sieve over primes.
fn totient_sieve(limit: usize) -> Vec<usize> {
    let mut phi: Vec<usize> = (0..=limit).collect();
    for p in 2..=limit {
        if phi[p] == p {
            for k in (p..=limit).step_by(p) {
                phi[k] -= phi[k] / p;
            }
        }
    }
    phi
}

#[test]
fn phi_is_monic_with_totient_degree() {
    let tot = totient_sieve(M_MAX);
    for m in 1..=M_MAX {
        let p = phi(m);
        assert!(p.is_monic(), "m={m}");
        assert_eq!(p.degree(), Some(tot[m]), "m={m}");
    }
}

#[test]
fn divisor_product_is_x_m_minus_one() {
    for m in 1..=M_MAX {
        let prod = divisors(m).into_iter().fold(IntPoly::one(), |acc, d| &acc * &*phi(d));
        let target = &IntPoly::monomial(BigInt::from(1), m) - &IntPoly::one();
        assert_eq!(prod, target, "m={m}");
    }
}

#[test]
fn binomial_divisibility_predicate_matches_remainders() {
    for d in 1..=40 {
        let m = phi(2 * d);
        for i in 1..=40 {
            let (q, r) = IntPoly::binomial(i).div_rem_monic(&m).unwrap();
            assert_eq!(binomial_cyclo_divides(d, i), r.is_zero(), "d={d} i={i}");
            if r.is_zero() {
                assert!(!q.remainder_mod_monic(&m).unwrap().is_zero(), "Phi_{} twice in 1+x^{i}", 2 * d);
            }
        }
    }
}

#[test]
fn values_at_plus_and_minus_one() {
    for m in 2..=M_MAX {
        assert_eq!(phi_at_one(m), phi(m).eval_at_int(1), "m={m}");
        assert_eq!(phi_at_minus_one(m), phi(m).eval_at_int(-1), "m={m}");
    }
    assert_eq!(phi_at_one(9), BigInt::from(3));
    assert_eq!(phi_at_minus_one(6), BigInt::from(3));
    assert_eq!(phi_at_one(6), BigInt::from(1));
}

fn factored() -> impl Strategy<Value = FactoredBinomialProduct> {
    prop::collection::vec((1usize..=8, 1usize..=3), 0..=5).prop_map(|v| v.into_iter().collect())
}

proptest! {
    #[test]
    fn min_exponents_is_the_gcd(fs in prop::collection::vec(factored(), 1..=5)) {
        let via_exponents = min_exponents(fs.iter()).unwrap().expand();
        let folded = fs
            .iter()
            .map(|f| f.expand())
            .reduce(|a, b| gcd_primitive(&a, &b))
            .unwrap();
        prop_assert_eq!(via_exponents, folded);
    }

    #[test]
    fn cyclotomic_form_reconstructs(f in factored()) {
        prop_assert_eq!(to_cyclo_exponents(&f).expand(), f.expand());
    }
}

#[test]
fn min_exponents_of_nothing_is_an_error() {
    let none: Vec<FactoredBinomialProduct> = Vec::new();
    assert!(min_exponents(none.iter()).is_err());
}
