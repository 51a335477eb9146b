use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use subsum::cyclotomic::phi;
use subsum::intpoly::{gcd_primitive, log_concavity, IntPoly, LogConcavity};

fn small_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-20i64..=20, 0..7).prop_map(|c| IntPoly::from_i64s(&c))
}

fn big_coeff() -> impl Strategy<Value = BigInt> {
    (any::<u128>(), any::<bool>()).prop_map(|(m, neg)| {
        let b = BigInt::from(m);
        if neg {
            -b
        } else {
            b
        }
    })
}

fn big_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(big_coeff(), 0..6).prop_map(IntPoly::from_coeffs)
}

fn nonzero(p: impl Strategy<Value = IntPoly>) -> impl Strategy<Value = IntPoly> {
    p.prop_filter("nonzero", |p| !p.is_zero())
}

fn monic() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-9i64..=9, 0..5).prop_map(|mut c| {
        c.push(1);
        IntPoly::from_i64s(&c)
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, IntPoly::zero());
        prop_assert_eq!(&a * &IntPoly::one(), a.clone());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn exact_div_inverts_mul(a in big_poly(), b in nonzero(big_poly())) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn remainder_reconstructs(a in big_poly(), m in monic()) {
        let (q, r) = a.div_rem_monic(&m).unwrap();
        prop_assert_eq!(&(&m * &q) + &r, a.clone());
        if let Some(dr) = r.degree() {
            prop_assert!(dr < m.degree().unwrap());
        }
        prop_assert_eq!(a.remainder_mod_monic(&m).unwrap(), r);
    }

    #[test]
    fn even_odd_split_partitions_terms(a in big_poly()) {
        let (e, o) = a.even_odd_split();
        prop_assert_eq!(&e + &o, a);
        for (k, c) in e.coeffs().iter().enumerate() {
            prop_assert!(k % 2 == 0 || c.is_zero());
            prop_assert!(o.coeff(k).is_zero() || c.is_zero());
        }
        for (k, c) in o.coeffs().iter().enumerate() {
            prop_assert!(k % 2 == 1 || c.is_zero());
        }
    }

    #[test]
    fn log_concavity_index_is_literal(seq in prop::collection::vec(0u32..50, 0..10)) {
        let seq: Vec<BigInt> = seq.into_iter().map(BigInt::from).collect();
        match log_concavity(&seq).unwrap() {
            LogConcavity::FailsAt { index } => {
                prop_assert!(index >= 1 && index + 1 < seq.len());
                prop_assert!(&seq[index] * &seq[index] < &seq[index - 1] * &seq[index + 1]);
                for j in 1..index {
                    prop_assert!(&seq[j] * &seq[j] >= &seq[j - 1] * &seq[j + 1]);
                }
            }
            LogConcavity::Holds => {
                for j in 1..seq.len().saturating_sub(1) {
                    prop_assert!(&seq[j] * &seq[j] >= &seq[j - 1] * &seq[j + 1]);
                }
            }
        }
    }

    /// Inputs are products of cyclotomic polynomials, so the gcd is known in
    /// closed form: the product with entrywise minimum exponents.
    #[test]
    fn gcd_matches_factored_oracle(
        ea in prop::collection::vec(0usize..3, 8),
        eb in prop::collection::vec(0usize..3, 8),
        scale_a in 1i64..5,
        scale_b in 1i64..5,
    ) {
        let build = |es: &[usize]| {
            es.iter().enumerate().fold(IntPoly::one(), |acc, (k, &e)| &acc * &phi(k + 1).pow(e as u64))
        };
        let a = build(&ea).scale(&BigInt::from(scale_a));
        let b = build(&eb).scale(&BigInt::from(scale_b));
        let min: Vec<usize> = ea.iter().zip(&eb).map(|(x, y)| *x.min(y)).collect();
        let g = gcd_primitive(&a, &b);
        let content = num_integer::Integer::gcd(&scale_a, &scale_b);
        prop_assert_eq!(g.clone(), build(&min).scale(&BigInt::from(content)));
        prop_assert!(a.exact_div(&g).is_ok());
        prop_assert!(b.exact_div(&g).is_ok());
    }
}

#[test]
fn gcd_of_zero_and_zero() {
    assert!(gcd_primitive(&IntPoly::zero(), &IntPoly::zero()).is_zero());
    let p = IntPoly::from_i64s(&[-2, 0, -4]);
    assert_eq!(gcd_primitive(&p, &IntPoly::zero()), IntPoly::from_i64s(&[2, 0, 4]));
    assert_eq!(gcd_primitive(&IntPoly::one(), &p), IntPoly::one());
}
