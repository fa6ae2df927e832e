use num_bigint::BigInt;
use num_traits::One;
use primeinfo::valuation::{divisibility_prob, sample_uniform_valuations};
use primeinfo::{PrimeTable, Rational, ValuationDist};
use proptest::prelude::*;

fn r(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// For every N <= 10^4 and prime p <= N, compare N·pmf with counts obtained by
/// factorizing each Z in [1, N] by trial division, accumulated incrementally.
#[test]
fn oracle_equivalence_to_1e4() {
    const LIMIT: u64 = 10_000;
    let table = PrimeTable::sieve(LIMIT).unwrap();
    // counts[i][k]: integers Z <= N with v_p(Z) = k >= 1, p = primes[i]
    let primes: Vec<u64> = table.iter().collect();
    let mut counts: Vec<Vec<u64>> = vec![Vec::new(); primes.len()];
    for n in 1..=LIMIT {
        let mut z = n;
        for (i, &p) in primes.iter().enumerate() {
            if z % p == 0 {
                let mut k = 0;
                while z % p == 0 {
                    z /= p;
                    k += 1;
                }
                if counts[i].len() <= k {
                    counts[i].resize(k + 1, 0);
                }
                counts[i][k] += 1;
            }
            if z == 1 {
                break;
            }
        }
        for (i, &p) in primes.iter().take_while(|&&p| p <= n).enumerate() {
            let dist = ValuationDist::exact(p, n).unwrap();
            let divisible: u64 = counts[i].iter().sum();
            let mut expected = counts[i].clone();
            expected[0] = n - divisible;
            let got: Vec<u64> = dist.counts().collect();
            assert_eq!(got, expected, "p = {p}, N = {n}");
        }
    }
}

#[test]
fn mean_bounds() {
    for n in (1..=3_000u64).step_by(7) {
        for p in [2u64, 3, 5, 7, 11, 101, 997, 2_999, 3_001] {
            let mean = ValuationDist::exact(p, n).unwrap().mean();
            assert!(mean > r(1, p) - r(1, n), "lower bound, p = {p}, N = {n}");
            assert!(mean <= r(1, p - 1), "upper bound, p = {p}, N = {n}");
        }
    }
}

#[test]
fn mean_approaches_one_over_p_minus_one() {
    let devs: Vec<Rational> = [100u64, 10_000, 1_000_000]
        .iter()
        .map(|&n| Rational::one() - ValuationDist::exact(2, n).unwrap().mean())
        .collect();
    assert!(devs.windows(2).all(|w| w[1] <= w[0]), "{devs:?}");
    assert_eq!(devs[0], r(3, 100));
}

#[test]
fn divisibility_is_the_first_tail() {
    for n in [1u64, 2, 9, 10, 97, 1_000] {
        for p in [2u64, 3, 7, 11, 97] {
            let d = divisibility_prob(p, n).unwrap();
            assert_eq!(d.divisible, ValuationDist::exact(p, n).unwrap().tail(1));
            assert_eq!(&d.divisible + &d.not_divisible, Rational::one());
        }
    }
}

/// Monte Carlo counts at N = 10^6 against the exact pmf. Cells with expected
/// count below 5 are pooled into one tail cell; each cell must sit within
/// 3 standard deviations of its expectation.
#[test]
fn monte_carlo_within_three_sigma() {
    const N: u64 = 1_000_000;
    const SAMPLES: u64 = 100_000;
    let mc = sample_uniform_valuations(N, &[2, 3, 5], SAMPLES, 20_251_016).unwrap();
    for pc in &mc.per_prime {
        let dist = ValuationDist::exact(pc.prime, N).unwrap();
        let mut k = 0;
        loop {
            let prob = dist.count(k) as f64 / N as f64;
            let tail = dist.tail_count(k) as f64 / N as f64;
            let pooled = (SAMPLES as f64 * dist.tail_count(k + 1) as f64 / N as f64) < 5.0;
            let (p, observed) = if pooled {
                (tail, pc.at_least(k))
            } else {
                (prob, pc.count(k))
            };
            let expected = SAMPLES as f64 * p;
            let sigma = (SAMPLES as f64 * p * (1.0 - p)).sqrt();
            assert!(
                (observed as f64 - expected).abs() <= 3.0 * sigma,
                "p = {}, k = {k}: observed {observed}, expected {expected:.1} ± {sigma:.1}",
                pc.prime
            );
            if pooled {
                break;
            }
            k += 1;
        }
    }
}

proptest! {
    #[test]
    fn pmf_sums_to_one_and_tails_match(p in 2u64..200, n in 1u64..1_000_000) {
        let d = ValuationDist::exact(p, n).unwrap();
        let pmf = d.pmf_vec();
        prop_assert_eq!(pmf.iter().sum::<Rational>(), Rational::one());
        for k in 0..=d.kmax() + 1 {
            prop_assert_eq!(pmf.iter().skip(k).sum::<Rational>(), d.tail(k));
            if k > 0 {
                prop_assert!(d.tail(k) <= d.tail(k - 1));
            }
        }
        prop_assert_eq!(d.mean(), (1..=d.kmax()).map(|k| d.tail(k)).sum::<Rational>());
    }
}
