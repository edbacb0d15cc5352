//! Dense univariate polynomials over the prime field F_q.
//!
//! Coefficients are stored in ascending degree order as a `Vec<u64>`, reduced
//! mod q. The representation is canonical: the vector is empty for the zero
//! polynomial and the last element is nonzero otherwise, so structural
//! equality is polynomial equality.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Addition in F_q.
#[inline]
pub(crate) fn fq_add(q: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

/// Subtraction in F_q.
#[inline]
pub(crate) fn fq_sub(q: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + q - b
    }
}

/// Multiplication in F_q via a u128 intermediate.
#[inline]
pub(crate) fn fq_mul(q: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

/// Negation in F_q.
#[inline]
pub(crate) fn fq_neg(q: u64, a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

pub(crate) fn fq_pow(q: u64, mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fq_mul(q, acc, base);
        }
        base = fq_mul(q, base, base);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse in F_q (q prime). Panics on zero.
#[inline]
pub(crate) fn fq_inv(q: u64, a: u64) -> u64 {
    assert!(a % q != 0, "inverse of zero in F_{}", q);
    fq_pow(q, a, q - 2)
}

/// A dense polynomial in F_q[t].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    q: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero(q: u64) -> Self {
        Poly { q, coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one(q: u64) -> Self {
        Poly { q, coeffs: vec![1] }
    }

    /// A constant polynomial (zero polynomial when `c ≡ 0`).
    pub fn constant(q: u64, c: u64) -> Self {
        Poly::from_coeffs(q, &[c])
    }

    /// The variable t.
    pub fn var(q: u64) -> Self {
        Poly { q, coeffs: vec![0, 1] }
    }

    /// Builds a polynomial from ascending coefficients, reducing mod q and
    /// trimming trailing zeros.
    pub fn from_coeffs(q: u64, coeffs: &[u64]) -> Self {
        let mut v: Vec<u64> = coeffs.iter().map(|&c| c % q).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Poly { q, coeffs: v }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    #[inline]
    fn check_q(&self, other: &Poly) {
        assert_eq!(self.q, other.q, "mixed constant fields F_{} and F_{}", self.q, other.q);
    }

    /// Horner evaluation at a point of F_q.
    pub fn eval(&self, a: u64) -> u64 {
        let a = a % self.q;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = fq_add(self.q, fq_mul(self.q, acc, a), c);
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_q(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            v.push(fq_add(self.q, a, b));
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        Poly { q: self.q, coeffs: v }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check_q(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            v.push(fq_sub(self.q, a, b));
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        Poly { q: self.q, coeffs: v }
    }

    pub fn neg(&self) -> Poly {
        let v = self.coeffs.iter().map(|&c| fq_neg(self.q, c)).collect();
        Poly { q: self.q, coeffs: v }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_q(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.q);
        }
        let mut v = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = fq_add(self.q, v[i + j], fq_mul(self.q, a, b));
            }
        }
        Poly { q: self.q, coeffs: v }
    }

    pub fn mul_scalar(&self, c: u64) -> Poly {
        let c = c % self.q;
        if c == 0 {
            return Poly::zero(self.q);
        }
        let v = self.coeffs.iter().map(|&a| fq_mul(self.q, a, c)).collect();
        Poly { q: self.q, coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.q);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `deg r < deg d`. Rejects a zero divisor.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_q(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero { what: "polynomial" });
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Poly::zero(self.q), self.clone()));
        }
        let q = self.q;
        let lead_inv = fq_inv(q, *d.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = fq_mul(q, rem[k], lead_inv);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] = fq_sub(q, rem[k - dd + j], fq_mul(q, c, dc));
            }
        }
        rem.truncate(dd);
        while rem.last() == Some(&0) {
            rem.pop();
        }
        while quot.last() == Some(&0) {
            quot.pop();
        }
        Ok((Poly { q, coeffs: quot }, Poly { q, coeffs: rem }))
    }

    /// True when `self` divides `f` exactly.
    pub fn divides(&self, f: &Poly) -> bool {
        match f.divmod(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        a.check_q(b);
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.divmod(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        x.make_monic()
    }

    /// Scales by the inverse leading coefficient; zero stays zero.
    pub fn make_monic(&self) -> Poly {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(l) => self.mul_scalar(fq_inv(self.q, l)),
        }
    }

    /// Multiplicity of the monic irreducible `pi` in `self` (zero input
    /// rejected by callers; returns 0 for coprime inputs).
    pub fn multiplicity_of(&self, pi: &Poly) -> u32 {
        assert!(!self.is_zero(), "multiplicity of a factor in the zero polynomial");
        let mut m = 0;
        let mut cur = self.clone();
        loop {
            let (quot, rem) = cur.divmod(pi).expect("nonzero divisor");
            if !rem.is_zero() {
                return m;
            }
            m += 1;
            cur = quot;
        }
    }

    /// Irreducibility over F_q by absence of monic divisors of degree
    /// `1..=deg/2`. Constants (including zero) are not irreducible.
    pub fn is_irreducible(&self) -> bool {
        let deg = match self.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        if deg == 1 {
            return true;
        }
        for d in 1..=deg / 2 {
            for cand in monic_polys(self.q, d) {
                if cand.divides(self) {
                    return false;
                }
            }
        }
        true
    }

    /// Monic irreducible factors with multiplicities, by trial division in
    /// degree order; the unit leading coefficient is dropped. Factors are
    /// emitted in `code_cmp` order. Rejects the zero polynomial.
    pub fn factor(&self) -> Result<Vec<(Poly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroInput { op: "polynomial factorization" });
        }
        let mut out = Vec::new();
        let mut rest = self.make_monic();
        let mut d = 1;
        while rest.degree().unwrap_or(0) >= 1 {
            let deg = rest.degree().unwrap();
            if d > deg / 2 {
                // what is left is irreducible
                out.push((rest.clone(), 1));
                break;
            }
            let mut found = false;
            for cand in monic_polys(self.q, d) {
                if cand.divides(&rest) {
                    let m = rest.multiplicity_of(&cand);
                    for _ in 0..m {
                        let (quot, _) = rest.divmod(&cand).unwrap();
                        rest = quot;
                    }
                    out.push((cand, m));
                    found = true;
                    if rest.is_constant() {
                        break;
                    }
                }
            }
            if !found || rest.is_constant() {
                if rest.is_constant() {
                    break;
                }
                d += 1;
            } else {
                d += 1;
            }
        }
        Ok(out)
    }

    /// Total order used for canonical unit choices and enumeration:
    /// by degree first, then coefficients from the highest degree down.
    /// This matches ascending order of the base-q integer code Σ cᵢ qⁱ.
    pub fn code_cmp(a: &Poly, b: &Poly) -> Ordering {
        a.check_q(b);
        match a.coeffs.len().cmp(&b.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..a.coeffs.len()).rev() {
            match a.coeffs[i].cmp(&b.coeffs[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Parses the ascending coefficient list format `[c0,c1,...,cn]`.
    /// Coefficients must satisfy `0 <= c < q`.
    pub fn parse(q: u64, s: &str) -> Result<Poly> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [c0,c1,...] coefficient list, got {s:?}")))?;
        let inner = inner.trim();
        let mut coeffs = Vec::new();
        if !inner.is_empty() {
            for part in inner.split(',') {
                let c: u64 = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {:?}", part.trim())))?;
                if c >= q {
                    return Err(Error::Parse(format!("coefficient {c} is not reduced mod {q}")));
                }
                coeffs.push(c);
            }
        }
        Ok(Poly::from_coeffs(q, &coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, c) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[t]{}", self.q, self)
    }
}

/// Iterates the monic polynomials of exact degree `deg` in `code_cmp` order.
pub fn monic_polys(q: u64, deg: usize) -> impl Iterator<Item = Poly> {
    MonicIter { q, deg, lower: vec![0; deg], done: false }
}

struct MonicIter {
    q: u64,
    deg: usize,
    lower: Vec<u64>,
    done: bool,
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.done {
            return None;
        }
        let mut coeffs = self.lower.clone();
        coeffs.push(1);
        let out = Poly { q: self.q, coeffs };
        // odometer increment on the lower coefficients
        let mut i = 0;
        loop {
            if i == self.deg {
                self.done = true;
                break;
            }
            self.lower[i] += 1;
            if self.lower[i] < self.q {
                break;
            }
            self.lower[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// All monic irreducibles of degree `1..=max_deg`, in `code_cmp` order.
pub fn monic_irreducibles(q: u64, max_deg: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    for d in 1..=max_deg {
        for cand in monic_polys(q, d) {
            if cand.is_irreducible() {
                out.push(cand);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5(coeffs: &[u64]) -> Poly {
        Poly::from_coeffs(5, coeffs)
    }

    #[test]
    fn canonical_trimming() {
        assert!(Poly::from_coeffs(5, &[0, 0, 0]).is_zero());
        assert_eq!(p5(&[1, 2, 0, 0]).coeffs(), &[1, 2]);
        assert_eq!(p5(&[6, 7]).coeffs(), &[1, 2]);
    }

    #[test]
    fn gcd_is_monic_generator() {
        // gcd(t^2 - 1, t - 1) = t - 1 = t + 4 over F_5
        let a = p5(&[4, 0, 1]);
        let b = p5(&[4, 1]);
        let g = Poly::gcd(&a, &b);
        assert_eq!(g, p5(&[4, 1]));
        assert!(g.is_monic());
    }

    #[test]
    fn divmod_monomials() {
        let (quot, rem) = p5(&[0, 0, 0, 1]).divmod(&p5(&[0, 1])).unwrap();
        assert_eq!(quot, p5(&[0, 0, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn divmod_rejects_zero() {
        assert!(p5(&[1]).divmod(&Poly::zero(5)).is_err());
    }

    #[test]
    fn irreducible_t2_plus_2_over_f5() {
        // oracle: a quadratic is reducible over F_q iff it has a root
        let f = p5(&[2, 0, 1]);
        let has_root = (0..5).any(|a| f.eval(a) == 0);
        assert!(!has_root);
        assert!(f.is_irreducible());
        // and a control with a root: t^2 - 1
        let g = p5(&[4, 0, 1]);
        assert!((0..5).any(|a| g.eval(a) == 0));
        assert!(!g.is_irreducible());
    }

    #[test]
    fn factor_t2_minus_1() {
        // t^2 - 1 = (t - 1)(t + 1) over F_5
        let f = p5(&[4, 0, 1]);
        let factors = f.factor().unwrap();
        assert_eq!(factors, vec![(p5(&[1, 1]), 1), (p5(&[4, 1]), 1)]);
    }

    #[test]
    fn factor_with_multiplicity() {
        let t = Poly::var(5);
        let f = t.pow(3).mul(&p5(&[1, 1]).pow(2)).mul_scalar(3);
        let factors = f.factor().unwrap();
        assert_eq!(factors, vec![(t.clone(), 3), (p5(&[1, 1]), 2)]);
        // multiplicities recombine to the monic original
        let mut rebuilt = Poly::one(5);
        for (pi, m) in &factors {
            rebuilt = rebuilt.mul(&pi.pow(*m));
        }
        assert_eq!(rebuilt, f.make_monic());
    }

    #[test]
    fn monic_iteration_counts() {
        assert_eq!(monic_polys(5, 1).count(), 5);
        assert_eq!(monic_polys(5, 2).count(), 25);
        // number of monic irreducible quadratics over F_q is (q^2 - q) / 2
        let irr2 = monic_irreducibles(5, 2).iter().filter(|p| p.degree() == Some(2)).count();
        assert_eq!(irr2, 10);
    }

    #[test]
    fn code_order_matches_base_q_codes() {
        let code = |p: &Poly| p.coeffs().iter().rev().fold(0u64, |acc, &c| acc * 5 + c);
        let mut polys: Vec<Poly> = (0..30u64)
            .map(|n| {
                let mut digits = Vec::new();
                let mut n = n;
                while n > 0 {
                    digits.push(n % 5);
                    n /= 5;
                }
                Poly::from_coeffs(5, &digits)
            })
            .collect();
        polys.sort_by(|a, b| Poly::code_cmp(a, b));
        for w in polys.windows(2) {
            assert!(code(&w[0]) < code(&w[1]));
        }
    }

    #[test]
    fn display_parse_round_trip() {
        let f = p5(&[2, 0, 1]);
        assert_eq!(f.to_string(), "[2,0,1]");
        assert_eq!(Poly::parse(5, "[2,0,1]").unwrap(), f);
        assert_eq!(Poly::parse(5, "[0]").unwrap(), Poly::zero(5));
        assert!(Poly::parse(5, "[7]").is_err());
        assert!(Poly::parse(5, "2,0,1").is_err());
    }
}
