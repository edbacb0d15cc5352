//! The integer box scan behind enumeration over Q.
//!
//! Canonical representatives of points with Ht <= B are exactly the
//! integral triples in the Northcott box |x0| <= B^2, 0 <= x1 <= B^3,
//! |x2| <= B^4 that no prime scales down. Only primes p <= B can possibly
//! scale a box triple (p^2 | x0 needs p^2 <= B^2 on a nonzero x0, and the
//! other coordinates force even more), so the minimality sieve is a fixed
//! short prime list.

use crate::fields::factor;

/// Box limits floor(B^2), floor(B^3), floor(B^4) plus the sieve primes.
#[derive(Clone, Debug)]
pub(crate) struct RationalScan {
    pub x0_max: i64,
    pub x1_max: i64,
    pub x2_max: i64,
    pub primes: Vec<i64>,
}

impl RationalScan {
    /// `pow_floor(w)` values for w = 2, 3, 4 and the primes p <= floor(B).
    pub fn new(x0_max: i64, x1_max: i64, x2_max: i64, b_floor: i64) -> Self {
        let primes = (2..=b_floor.max(1))
            .filter(|&p| factor::is_prime_u64(p as u64))
            .collect();
        RationalScan { x0_max, x1_max, x2_max, primes }
    }

    pub fn n_chunks(&self) -> usize {
        if self.x0_max < 0 {
            // Empty box (B < 1): no chunks at all.
            return 0;
        }
        (2 * self.x2_max + 1) as usize
    }

    /// Visits every canonical triple with the chunk's x2 value, ascending
    /// in (x0, x1).
    pub fn scan_chunk<F: FnMut(i64, i64, i64)>(&self, chunk: usize, mut f: F) {
        let x2 = chunk as i64 - self.x2_max;
        for x0 in -self.x0_max..=self.x0_max {
            for x1 in 0..=self.x1_max {
                if x0 == 0 && x1 == 0 && x2 == 0 {
                    continue;
                }
                if self.is_minimal(x0, x1, x2) {
                    f(x0, x1, x2);
                }
            }
        }
    }

    /// No sieve prime divides the triple in the pattern (p^2, p^3, p^4);
    /// zero coordinates pass every divisibility vacuously.
    #[inline]
    pub fn is_minimal(&self, x0: i64, x1: i64, x2: i64) -> bool {
        for &p in &self.primes {
            let p2 = p * p;
            if x0 % p2 == 0 {
                let p3 = p2 * p;
                if x1 % p3 == 0 && x2 % (p3 * p) == 0 {
                    return false;
                }
            }
        }
        true
    }
}
