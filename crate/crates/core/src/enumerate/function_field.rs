//! The coefficient-vector scan behind enumeration over F_q(t).
//!
//! For the bound q^d the Northcott box is deg x_i <= w_i d. Coefficient
//! vectors are walked as base-q odometers, which realizes the documented
//! total order: each polynomial is ranked by its integer code sum(c_i q^i),
//! and triples are visited lexicographically in (x2, x0, x1) codes. A
//! triple is emitted when it is the code-least element of its unit orbit
//! and no monic irreducible of degree <= d scales it down.

use crate::fields::poly::{self, Poly};

#[derive(Clone, Debug)]
pub(crate) struct FunctionFieldScan {
    pub q: u64,
    /// Coefficient slots per coordinate: w_i * d + 1.
    pub len: [usize; 3],
    /// For each monic irreducible pi with deg pi <= d: (pi^2, pi^3, pi^4).
    pub irreducible_powers: Vec<[Poly; 3]>,
}

impl FunctionFieldScan {
    pub fn new(q: u64, d: u32) -> Self {
        let irreducible_powers = poly::monic_irreducibles(q, d as usize)
            .into_iter()
            .map(|pi| [pi.pow(2), pi.pow(3), pi.pow(4)])
            .collect();
        FunctionFieldScan {
            q,
            len: [(2 * d + 1) as usize, (3 * d + 1) as usize, (4 * d + 1) as usize],
            irreducible_powers,
        }
    }

    /// One chunk per x2 coefficient vector (code order).
    pub fn n_chunks(&self) -> usize {
        (self.q as u128).pow(self.len[2] as u32) as usize
    }

    /// Visits every canonical triple whose x2 has the chunk's code,
    /// ascending in (x0 code, x1 code).
    pub fn scan_chunk<F: FnMut(&Poly, &Poly, &Poly)>(&self, chunk: usize, mut f: F) {
        let c2 = decode(chunk as u128, self.q, self.len[2]);
        let x2_zero = is_zero(&c2);
        let mut c0 = vec![0u64; self.len[0]];
        loop {
            let mut c1 = vec![0u64; self.len[1]];
            loop {
                let all_zero = x2_zero && is_zero(&c0) && is_zero(&c1);
                if !all_zero && self.unit_least(&c0, &c1, &c2) {
                    let p0 = Poly::from_coeffs(self.q, &c0);
                    let p1 = Poly::from_coeffs(self.q, &c1);
                    let p2 = Poly::from_coeffs(self.q, &c2);
                    if self.is_minimal(&p0, &p1, &p2) {
                        f(&p0, &p1, &p2);
                    }
                }
                if !advance(&mut c1, self.q) {
                    break;
                }
            }
            if !advance(&mut c0, self.q) {
                break;
            }
        }
    }

    /// True iff no constant unit strictly lowers the triple's code tuple
    /// (x0, then x1, then x2); computed without allocating scaled copies.
    fn unit_least(&self, c0: &[u64], c1: &[u64], c2: &[u64]) -> bool {
        use std::cmp::Ordering;
        for lam in 2..self.q {
            let l2 = poly::fq_pow(self.q, lam, 2);
            let l3 = poly::fq_pow(self.q, lam, 3);
            let l4 = poly::fq_pow(self.q, lam, 4);
            let ord = cmp_scaled(self.q, c0, l2)
                .then_with(|| cmp_scaled(self.q, c1, l3))
                .then_with(|| cmp_scaled(self.q, c2, l4));
            if ord == Ordering::Less {
                return false;
            }
        }
        true
    }

    /// No irreducible divides the triple in the pattern (pi^2, pi^3, pi^4);
    /// zero coordinates pass vacuously.
    fn is_minimal(&self, p0: &Poly, p1: &Poly, p2: &Poly) -> bool {
        for [pi2, pi3, pi4] in &self.irreducible_powers {
            if (p0.is_zero() || pi2.divides(p0))
                && (p1.is_zero() || pi3.divides(p1))
                && (p2.is_zero() || pi4.divides(p2))
            {
                return false;
            }
        }
        true
    }
}

/// Compares lam^w * c against c in code order (top coefficient first).
fn cmp_scaled(q: u64, c: &[u64], lam_pow: u64) -> std::cmp::Ordering {
    for i in (0..c.len()).rev() {
        let scaled = poly::fq_mul(q, lam_pow, c[i]);
        match scaled.cmp(&c[i]) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

fn is_zero(c: &[u64]) -> bool {
    c.iter().all(|&x| x == 0)
}

/// Base-q little-endian digits of `code`, exactly `len` slots.
fn decode(code: u128, q: u64, len: usize) -> Vec<u64> {
    let mut digits = vec![0u64; len];
    let mut rest = code;
    for slot in digits.iter_mut() {
        *slot = (rest % q as u128) as u64;
        rest /= q as u128;
    }
    debug_assert_eq!(rest, 0);
    digits
}

/// Base-q +1 with carry; false when the odometer wraps to all zeros.
fn advance(c: &mut [u64], q: u64) -> bool {
    for digit in c.iter_mut() {
        *digit += 1;
        if *digit < q {
            return true;
        }
        *digit = 0;
    }
    false
}
