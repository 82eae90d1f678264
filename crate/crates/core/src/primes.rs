//! Prime sieving and the prime pools that modular rounds draw from.

use rand::Rng;
use serde::{Deserialize, Serialize};

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in the half-open interval `(lo, hi]`, ascending.
pub fn sieve_primes(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi <= lo {
        return Vec::new();
    }
    let hi = hi as usize;
    let mut composite = vec![false; hi + 1];
    composite[0] = true;
    composite[1] = true;
    let mut i = 2;
    while i * i <= hi {
        if !composite[i] {
            let mut j = i * i;
            while j <= hi {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    let start = lo as usize + 1;
    (start..=hi)
        .filter(|&k| !composite[k])
        .map(|k| k as u64)
        .collect()
}

/// The set of primes a randomized round samples its modulus from.
///
/// Every prime exceeds the sample bound `n` (so coordinates drawn from
/// `[1, n]` stay distinct modulo `p`), and there are strictly more than
/// `required` of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePool {
    pub sample_bound: u64,
    pub required: usize,
    pub primes: Vec<u64>,
}

impl PrimePool {
    /// Sieves `(n, ceil(8 n ln 4n)]`, doubling the upper end until more than
    /// `required` primes are found.
    pub fn build(required: usize, n: u64) -> Self {
        let n = n.max(2);
        let mut hi = (8.0 * n as f64 * (4.0 * n as f64).ln()).ceil() as u64;
        hi = hi.max(n + 1);
        loop {
            let primes = sieve_primes(n, hi);
            if primes.len() > required {
                return PrimePool {
                    sample_bound: n,
                    required,
                    primes,
                };
            }
            hi *= 2;
        }
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn choose<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.primes[rng.random_range(0..self.primes.len())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|q| q * q <= n)
                .all(|q| !n.is_multiple_of(q))
    }

    #[test]
    fn sieve_small_ranges() {
        assert_eq!(sieve_primes(10, 20), vec![11, 13, 17, 19]);
        assert_eq!(sieve_primes(1, 2), vec![2]);
        assert!(sieve_primes(20, 20).is_empty());
        assert!(sieve_primes(24, 28).is_empty());
    }

    #[test]
    fn sieve_96_200_matches_trial_division() {
        let got = sieve_primes(96, 200);
        let want: Vec<u64> = (97..=200).filter(|&k| trial_division(k)).collect();
        assert_eq!(got, want);
        assert_eq!(got.len(), 22); // pi(200) - pi(96) = 46 - 24
        assert_eq!(&got[..2], &[97, 101]);
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn pool_for_local_and_global_parameters() {
        // local: t = 5, N = 4t = 20
        let local = PrimePool::build(20, 20);
        assert!(local.len() > 20);
        assert!(local.primes.iter().all(|&p| p > 20));
        // global: v = 4, e = 6, N = 4ve = 96
        let global = PrimePool::build(96, 96);
        assert!(global.len() > 96);
        assert!(global.primes.iter().all(|&p| p > 96));
    }

    #[test]
    fn tiny_pool_contains_three() {
        let pool = PrimePool::build(1, 2);
        assert!(pool.primes.contains(&3));
        assert!(pool.len() > 1);
    }

    #[test]
    fn pool_doubles_when_initial_bound_is_short() {
        let pool = PrimePool::build(5000, 10);
        assert!(pool.len() > 5000);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = pool.choose(&mut rng);
            assert!(p > 10 && trial_division(p));
        }
    }

    #[test]
    fn pool_is_deterministic() {
        assert_eq!(PrimePool::build(40, 40), PrimePool::build(40, 40));
    }
}
