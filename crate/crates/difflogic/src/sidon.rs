//! Sidon sets: sets of naturals whose pairwise sums are distinct.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// Smallest prime `>= n`, by trial division.
pub fn next_prime(n: u64) -> u64 {
    let is_prime = |p: u64| p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    (n.max(2)..).find(|&p| is_prime(p)).expect("primes are unbounded")
}

/// `{ 2 p a + (a^2 mod p) : 0 <= a < n }` for the smallest odd prime
/// `p >= n`; ascending, with maximum below `2 p n <= 8 n^2`.
pub fn sidon_set(n: usize) -> Vec<u64> {
    let p = next_prime((n as u64).max(3));
    (0..n as u64).map(|a| 2 * p * a + (a * a) % p).collect()
}

/// True if all sums `a + b` (`a <= b`) are distinct.
pub fn is_sidon(s: &[u64]) -> bool {
    let mut elems: Vec<u64> = s.to_vec();
    elems.sort_unstable();
    if elems.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let mut sums = BTreeSet::new();
    for (i, &a) in elems.iter().enumerate() {
        for &b in &elems[i..] {
            if !sums.insert(a + b) {
                return false;
            }
        }
    }
    true
}
