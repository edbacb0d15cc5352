//! Elements of F_q(t) as ratios of polynomials in canonical form:
//! numerator and denominator coprime, denominator monic, zero is 0/1.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::poly::{fq_inv, Poly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num/den` in canonical form. Rejects a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero { what: "denominator" });
        }
        if num.is_zero() {
            return Ok(RatFunc { num: Poly::zero(den.q()), den: Poly::one(den.q()) });
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.divmod(&g).expect("gcd divides");
        let (den, _) = den.divmod(&g).expect("gcd divides");
        let lead = den.leading().expect("nonzero denominator");
        if lead == 1 {
            Ok(RatFunc { num, den })
        } else {
            let inv = fq_inv(den.q(), lead);
            Ok(RatFunc { num: num.mul_scalar(inv), den: den.mul_scalar(inv) })
        }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let q = p.q();
        RatFunc { num: p, den: Poly::one(q) }
    }

    pub fn zero(q: u64) -> RatFunc {
        RatFunc { num: Poly::zero(q), den: Poly::one(q) }
    }

    pub fn one(q: u64) -> RatFunc {
        RatFunc { num: Poly::one(q), den: Poly::one(q) }
    }

    pub fn q(&self) -> u64 {
        self.den.q()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Poly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero { what: "rational function" });
        }
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::one(self.q()).div(self)
    }

    /// Order of vanishing at the degree place: `deg den - deg num`.
    /// Rejects zero.
    pub fn degree_valuation(&self) -> Result<i64> {
        let dn = self.num.degree().ok_or(Error::ZeroInput { op: "valuation" })? as i64;
        let dd = self.den.degree().expect("nonzero denominator") as i64;
        Ok(dd - dn)
    }

    /// Parses `num` or `num/den` where each side is a `[c0,c1,...]` list.
    pub fn parse(q: u64, s: &str) -> Result<RatFunc> {
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(RatFunc::from_poly(Poly::parse(q, s)?)),
            Some((n, d)) => RatFunc::new(Poly::parse(q, n)?, Poly::parse(q, d)?),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}(t) {}", self.q(), self)
    }
}
