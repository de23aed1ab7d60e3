use proptest::prelude::*;

use sumfree_core::characters::{gauss_sum, Character};
use sumfree_core::discrepancy::{coset_profile, delta_table, dilation_average};
use sumfree_core::fourier::{dft, idft, DensityFunction};
use sumfree_core::modp::{is_prime, Interval};
use sumfree_core::sumfree::{sf_dilation_bound, sf_exact};
use sumfree_core::{PrimeContext, SubgroupContext};

const PRIMES: [u64; 10] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.to_vec())
}

fn prime_and_set() -> impl Strategy<Value = (u64, Vec<u32>)> {
    prime().prop_flat_map(|p| (Just(p), prop::collection::btree_set(1..p as u32, 1..(p as usize).min(14))))
        .prop_map(|(p, s)| (p, s.into_iter().collect()))
}

proptest! {
    #[test]
    fn dlog_inverts_powers(p in prime(), k in 0u64..1000) {
        let ctx = PrimeContext::new(p).unwrap();
        let x = ctx.pow_g(k);
        prop_assert_eq!(ctx.dlog(x) as u64, k % (p - 1));
    }

    #[test]
    fn characters_are_multiplicative(p in prime(), t in 0u64..100, a in 1i64..1000, b in 1i64..1000) {
        let ctx = PrimeContext::new(p).unwrap();
        prop_assume!(a % p as i64 != 0 && b % p as i64 != 0);
        let chi = Character::new(&ctx, t);
        let lhs = chi.eval(a * b);
        let rhs = chi.eval(a) * chi.eval(b);
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn gauss_sums_have_modulus_sqrt_p(p in prime(), t in 1u64..100) {
        let ctx = PrimeContext::new(p).unwrap();
        prop_assume!(t % (p - 1) != 0);
        let g = gauss_sum(&Character::new(&ctx, t));
        prop_assert!((g.norm() - (p as f64).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn discrepancies_sum_to_zero(p in prime(), n in 1u32..13) {
        prop_assume!((p as u32 - 1).is_multiple_of(n));
        let ctx = PrimeContext::new(p).unwrap();
        let sub = SubgroupContext::new(&ctx, n).unwrap();
        for interval in [Interval::thirds(p as u32), Interval::eighths(p as u32)] {
            let t = delta_table(&sub, &interval);
            prop_assert_eq!(t.scaled().iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn dilation_average_is_exact((p, set) in prime_and_set(), n in 1u32..7) {
        prop_assume!((p as u32 - 1).is_multiple_of(n));
        let ctx = PrimeContext::new(p).unwrap();
        let sub = SubgroupContext::new(&ctx, n).unwrap();
        let profile = coset_profile(&set, &sub).unwrap();
        prop_assert_eq!(profile.scaled().iter().sum::<i64>(), 0);
        for alpha in 0..n {
            let (l, r) = dilation_average(&set, &sub, alpha, &Interval::thirds(p as u32)).unwrap();
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn dft_round_trips(values in prop::collection::vec(-1.0f64..1.0, 2..60)) {
        let f = DensityFunction::from_real(&values);
        let back = idft(&dft(&f));
        for (x, y) in back.values().iter().zip(f.values()) {
            prop_assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn exact_value_is_bracketed((p, set) in prime_and_set(), k in 2u32..4) {
        let ctx = PrimeContext::new(p).unwrap();
        let exact = sf_exact(&ctx, &set, k, 64).unwrap();
        let interval = sumfree_core::sumfree::interval_for_arity(p as u32, k).unwrap();
        let lower = sf_dilation_bound(&ctx, &set, &interval).unwrap().value;
        prop_assert!(lower <= exact.value && exact.value <= set.len());
        prop_assert!(exact.value >= 1);
    }

    #[test]
    fn primality_matches_trial_division(n in 0u64..100_000) {
        let trial = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime(n), trial);
    }
}
