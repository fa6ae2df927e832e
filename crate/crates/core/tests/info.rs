use approx::assert_relative_eq;
use num_bigint::BigInt;
use primeinfo::info::{cross_entropy, entropy, entropy_decomposition_sum, kl_divergence};
use primeinfo::{DiscreteDist, Geometric, LogBase, PrimeTable, Rational, ValuationDist};
use proptest::prelude::*;

#[test]
fn max_entropy_dominance_and_identities() {
    let table = PrimeTable::sieve(1_000).unwrap();
    for n in [100u64, 10_000, 1_000_000] {
        for p in table.iter() {
            let exact = ValuationDist::exact(p, n).unwrap();
            let model = Geometric::from_mean(&exact.mean()).unwrap();
            let exact_dist = DiscreteDist::from(&exact);
            let h_exact = entropy(&exact_dist, LogBase::E);
            let h_geo = entropy(&model.clone().into(), LogBase::E);
            assert!(h_geo >= h_exact, "p = {p}, N = {n}: {h_geo} < {h_exact}");
            assert_relative_eq!(exact.entropy(LogBase::E), h_exact, max_relative = 1e-12);

            let kl = kl_divergence(&exact_dist, &model, LogBase::E).unwrap();
            let ce = cross_entropy(&exact_dist, &model, LogBase::E).unwrap();
            assert!(kl >= 0.0);
            if p <= n {
                assert!(kl > 0.0, "p = {p}, N = {n}");
            } else {
                assert_eq!(kl, 0.0);
            }
            assert!(
                (h_exact + kl - ce).abs() <= 1e-10 * ce.max(f64::MIN_POSITIVE),
                "p = {p}, N = {n}"
            );

            let h2 = entropy(&exact_dist, LogBase::Two);
            assert!(
                (h2 - h_exact / std::f64::consts::LN_2).abs() <= 1e-10 * h2.max(f64::MIN_POSITIVE)
            );
        }
    }
}

#[test]
fn decomposition_never_below_log_n() {
    let table = PrimeTable::sieve(3_000).unwrap();
    for n in 1..=3_000 {
        let d = entropy_decomposition_sum(n, &table, LogBase::E).unwrap();
        assert!(d.gap >= -1e-9, "N = {n}: gap {}", d.gap);
    }
}

#[test]
fn decomposition_is_thread_independent() {
    let table = PrimeTable::sieve(1_000_000).unwrap();
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let four = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = one.install(|| entropy_decomposition_sum(1_000_000, &table, LogBase::E).unwrap());
    let b = four.install(|| entropy_decomposition_sum(1_000_000, &table, LogBase::E).unwrap());
    assert_eq!(a, b);
}

fn rational(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #[test]
    fn gibbs_inequality(weights in prop::collection::vec(0u64..50, 1..8), qn in 1u64..99) {
        prop_assume!(weights.iter().any(|&w| w > 0));
        let total: u64 = weights.iter().sum();
        let pmf: Vec<Rational> = weights.iter().map(|&w| rational(w, total)).collect();
        let exact = DiscreteDist::finite(pmf).unwrap();
        let model = Geometric::new(rational(qn, 100)).unwrap();
        let kl = kl_divergence(&exact, &model, LogBase::E).unwrap();
        prop_assert!(kl > 0.0);
        let h = entropy(&exact, LogBase::E);
        let ce = cross_entropy(&exact, &model, LogBase::E).unwrap();
        prop_assert!((h + kl - ce).abs() <= 1e-10 * ce);
    }

    #[test]
    fn geometric_kl_zero_iff_equal(a in 0u64..99, b in 0u64..99) {
        let ga = Geometric::new(rational(a, 100)).unwrap();
        let gb = Geometric::new(rational(b, 100)).unwrap();
        let kl = kl_divergence(&ga.clone().into(), &gb, LogBase::E);
        if b == 0 && a > 0 {
            prop_assert!(kl.is_err());
        } else if a == b {
            prop_assert_eq!(kl.unwrap(), 0.0);
        } else {
            prop_assert!(kl.unwrap() > 0.0);
        }
    }
}
