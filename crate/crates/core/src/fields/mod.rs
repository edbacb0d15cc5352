//! Exact arithmetic over the two supported global fields, Q and F_q(t) with
//! q a prime other than 2 and 3, together with their places, valuations and
//! absolute values.
//!
//! Elements are kept in a unique canonical form (lowest terms with positive
//! denominator over Q; coprime with monic denominator over F_q(t)), so
//! structural equality is field equality and values hash as dedup keys.
//! Everything here is immutable and freely shareable across threads.

pub mod factor;
pub mod poly;
pub mod ratfunc;

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// Which global field coordinates live in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GlobalFieldCtx {
    Rationals,
    FunctionField { q: u64 },
}

impl GlobalFieldCtx {
    pub fn rationals() -> Self {
        GlobalFieldCtx::Rationals
    }

    /// The rational function field F_q(t). The constant field cardinality
    /// must be a prime other than 2 and 3.
    pub fn function_field(q: u64) -> Result<Self> {
        if q == 2 || q == 3 || !factor::is_prime_u64(q) {
            return Err(Error::UnsupportedCardinality { q });
        }
        Ok(GlobalFieldCtx::FunctionField { q })
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, GlobalFieldCtx::Rationals)
    }

    pub fn q(&self) -> Option<u64> {
        match self {
            GlobalFieldCtx::Rationals => None,
            GlobalFieldCtx::FunctionField { q } => Some(*q),
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            GlobalFieldCtx::Rationals => FieldElem::Rat(BigRational::zero()),
            GlobalFieldCtx::FunctionField { q } => FieldElem::FuncField(RatFunc::zero(*q)),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            GlobalFieldCtx::Rationals => FieldElem::Rat(BigRational::one()),
            GlobalFieldCtx::FunctionField { q } => FieldElem::FuncField(RatFunc::one(*q)),
        }
    }

    /// Embeds a small integer (the image of n under Z -> K).
    pub fn from_integer(&self, n: i64) -> FieldElem {
        match self {
            GlobalFieldCtx::Rationals => FieldElem::Rat(BigRational::from(BigInt::from(n))),
            GlobalFieldCtx::FunctionField { q } => {
                let c = n.rem_euclid(*q as i64) as u64;
                FieldElem::FuncField(RatFunc::from_poly(Poly::constant(*q, c)))
            }
        }
    }

    /// True when `x` belongs to this context.
    pub fn owns(&self, x: &FieldElem) -> bool {
        match (self, x) {
            (GlobalFieldCtx::Rationals, FieldElem::Rat(_)) => true,
            (GlobalFieldCtx::FunctionField { q }, FieldElem::FuncField(r)) => r.q() == *q,
            _ => false,
        }
    }

    /// Parses the element text format: `n` or `n/d` in base 10 over Q;
    /// `[c0,c1,...]` or `[..]/[..]` over F_q(t).
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        match self {
            GlobalFieldCtx::Rationals => {
                let s = s.trim();
                let (num, den) = match s.split_once('/') {
                    None => (s, "1"),
                    Some((n, d)) => (n, d),
                };
                let num: BigInt = num
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer {:?}", num.trim())))?;
                let den: BigInt = den
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer {:?}", den.trim())))?;
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(FieldElem::Rat(BigRational::new(num, den)))
            }
            GlobalFieldCtx::FunctionField { q } => Ok(FieldElem::FuncField(RatFunc::parse(*q, s)?)),
        }
    }
}

impl fmt::Display for GlobalFieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlobalFieldCtx::Rationals => write!(f, "Q"),
            GlobalFieldCtx::FunctionField { q } => write!(f, "F{}(t)", q),
        }
    }
}

/// An element of the context field, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(BigRational),
    FuncField(RatFunc),
}

impl FieldElem {
    pub fn from_rational(r: BigRational) -> Self {
        FieldElem::Rat(r)
    }

    pub fn from_rat_func(r: RatFunc) -> Self {
        FieldElem::FuncField(r)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::FuncField(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_one(),
            FieldElem::FuncField(r) => r == &RatFunc::one(r.q()),
        }
    }

    /// True for elements of the ring of integers used by the integral
    /// models: Z over Q, F_q[t] over F_q(t).
    pub fn is_integral(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.denom().is_one(),
            FieldElem::FuncField(r) => r.is_polynomial(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_rat_func(&self) -> Option<&RatFunc> {
        match self {
            FieldElem::FuncField(r) => Some(r),
            _ => None,
        }
    }

    fn pair<'a>(&'a self, other: &'a FieldElem, op: &'static str) -> PairRef<'a> {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => PairRef::Rat(a, b),
            (FieldElem::FuncField(a), FieldElem::FuncField(b)) if a.q() == b.q() => {
                PairRef::FuncField(a, b)
            }
            _ => panic!("{op} on elements of different fields"),
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        match self.pair(other, "add") {
            PairRef::Rat(a, b) => FieldElem::Rat(a + b),
            PairRef::FuncField(a, b) => FieldElem::FuncField(a.add(b)),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        match self.pair(other, "sub") {
            PairRef::Rat(a, b) => FieldElem::Rat(a - b),
            PairRef::FuncField(a, b) => FieldElem::FuncField(a.sub(b)),
        }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        match self.pair(other, "mul") {
            PairRef::Rat(a, b) => FieldElem::Rat(a * b),
            PairRef::FuncField(a, b) => FieldElem::FuncField(a.mul(b)),
        }
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        if other.is_zero() {
            return Err(Error::DivisionByZero { what: "field element" });
        }
        Ok(match self.pair(other, "div") {
            PairRef::Rat(a, b) => FieldElem::Rat(a / b),
            PairRef::FuncField(a, b) => FieldElem::FuncField(a.div(b)?),
        })
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rat(r) => FieldElem::Rat(-r),
            FieldElem::FuncField(r) => FieldElem::FuncField(r.neg()),
        }
    }

    pub fn square(&self) -> FieldElem {
        self.mul(self)
    }

    pub fn pow_u(&self, e: u32) -> FieldElem {
        match self {
            FieldElem::Rat(r) => {
                FieldElem::Rat(BigRational::new_raw(r.numer().pow(e), r.denom().pow(e)))
            }
            FieldElem::FuncField(r) => {
                let mut acc = RatFunc::one(r.q());
                for _ in 0..e {
                    acc = acc.mul(r);
                }
                FieldElem::FuncField(acc)
            }
        }
    }
}

enum PairRef<'a> {
    Rat(&'a BigRational, &'a BigRational),
    FuncField(&'a RatFunc, &'a RatFunc),
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(r) => write!(f, "{r}"),
            FieldElem::FuncField(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A place of the context field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    /// A finite place of Q, i.e. a prime number.
    FinitePrime(BigUint),
    /// The real place of Q.
    Archimedean,
    /// A finite place of F_q(t), i.e. a monic irreducible polynomial.
    FiniteIrreducible(Poly),
    /// The place at infinity of F_q(t), with uniformizer 1/t.
    DegreePlace,
}

impl Place {
    /// A finite place of Q; verifies primality.
    pub fn finite_prime(p: BigUint) -> Result<Place> {
        if !factor::is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Place::FinitePrime(p))
    }

    /// A finite place of F_q(t); verifies the polynomial is monic irreducible.
    pub fn finite_irreducible(pi: Poly) -> Result<Place> {
        if !pi.is_monic() || !pi.is_irreducible() {
            return Err(Error::NotIrreducible(pi.to_string()));
        }
        Ok(Place::FiniteIrreducible(pi))
    }

    pub fn is_nonarchimedean(&self) -> bool {
        !matches!(self, Place::Archimedean)
    }

    /// Residue degree over the constant field: deg(pi) at finite places of
    /// F_q(t), 1 at the degree place and at finite places of Q.
    pub fn degree(&self) -> usize {
        match self {
            Place::FiniteIrreducible(pi) => pi.degree().unwrap_or(1),
            _ => 1,
        }
    }

    /// The residue cardinality q_v; needs the context over the degree place.
    pub fn residue_size(&self, ctx: &GlobalFieldCtx) -> Result<BigUint> {
        match (self, ctx) {
            (Place::FinitePrime(p), GlobalFieldCtx::Rationals) => Ok(p.clone()),
            (Place::FiniteIrreducible(pi), GlobalFieldCtx::FunctionField { q }) => {
                let d = pi.degree().unwrap_or(0) as u32;
                Ok(BigUint::from(*q).pow(d))
            }
            (Place::DegreePlace, GlobalFieldCtx::FunctionField { q }) => Ok(BigUint::from(*q)),
            (Place::Archimedean, GlobalFieldCtx::Rationals) => {
                Err(Error::ArchimedeanValuation)
            }
            _ => Err(Error::PlaceMismatch),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::FinitePrime(p) => write!(f, "{p}"),
            Place::Archimedean => write!(f, "oo"),
            Place::FiniteIrreducible(pi) => write!(f, "{pi}"),
            Place::DegreePlace => write!(f, "deg"),
        }
    }
}

/// A normalized valuation value; `Infinite` occurs exactly for zero input.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

fn biguint_multiplicity(n: &BigUint, p: &BigUint) -> i64 {
    use num_integer::Integer;
    let mut m = 0i64;
    let mut cur = n.clone();
    loop {
        let (q, r) = cur.div_rem(p);
        if !r.is_zero() {
            return m;
        }
        m += 1;
        cur = q;
    }
}

/// Normalized valuation of `x` at a nonarchimedean place, with v(pi_v) = 1.
/// Returns `Infinite` iff x = 0; rejects the archimedean place.
pub fn valuation(x: &FieldElem, v: &Place) -> Result<Valuation> {
    match (x, v) {
        (_, Place::Archimedean) => Err(Error::ArchimedeanValuation),
        (FieldElem::Rat(r), Place::FinitePrime(p)) => {
            if r.is_zero() {
                return Ok(Valuation::Infinite);
            }
            let num = r.numer().magnitude();
            let den = r.denom().magnitude();
            Ok(Valuation::Finite(
                biguint_multiplicity(num, p) - biguint_multiplicity(den, p),
            ))
        }
        (FieldElem::FuncField(r), Place::FiniteIrreducible(pi)) => {
            if pi.q() != r.q() {
                return Err(Error::PlaceMismatch);
            }
            if r.is_zero() {
                return Ok(Valuation::Infinite);
            }
            Ok(Valuation::Finite(
                r.numerator().multiplicity_of(pi) as i64 - r.denominator().multiplicity_of(pi) as i64,
            ))
        }
        (FieldElem::FuncField(r), Place::DegreePlace) => {
            if r.is_zero() {
                return Ok(Valuation::Infinite);
            }
            Ok(Valuation::Finite(r.degree_valuation()?))
        }
        _ => Err(Error::PlaceMismatch),
    }
}

/// An exact absolute value |x|_v.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AbsValue {
    /// The value q_v^exp, stored as the pair (q_v, exp) with exp = -v(x).
    NonArchimedean { base: BigUint, exp: i64 },
    /// |x| at the real place of Q, as an exact rational.
    Archimedean(BigRational),
}

impl AbsValue {
    /// Expands to an exact positive rational.
    pub fn to_rational(&self) -> BigRational {
        match self {
            AbsValue::Archimedean(r) => r.clone(),
            AbsValue::NonArchimedean { base, exp } => {
                let mag = BigInt::from_biguint(Sign::Plus, base.pow(exp.unsigned_abs() as u32));
                if *exp >= 0 {
                    BigRational::from(mag)
                } else {
                    BigRational::new(BigInt::one(), mag)
                }
            }
        }
    }
}

impl fmt::Display for AbsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsValue::Archimedean(r) => write!(f, "{r}"),
            AbsValue::NonArchimedean { base, exp } => write!(f, "{base}^{exp}"),
        }
    }
}

/// |x|_v for nonzero x: the pair (q_v, -v(x)) at nonarchimedean places, the
/// exact rational |x| at the real place of Q.
pub fn abs_value_exact(x: &FieldElem, v: &Place) -> Result<AbsValue> {
    if x.is_zero() {
        return Err(Error::ZeroInput { op: "abs_value_exact" });
    }
    match (x, v) {
        (FieldElem::Rat(r), Place::Archimedean) => Ok(AbsValue::Archimedean(r.abs())),
        (FieldElem::Rat(_), Place::FinitePrime(p)) => {
            let val = valuation(x, v)?.finite().expect("nonzero");
            Ok(AbsValue::NonArchimedean { base: p.clone(), exp: -val })
        }
        (FieldElem::FuncField(r), Place::FiniteIrreducible(_))
        | (FieldElem::FuncField(r), Place::DegreePlace) => {
            let val = valuation(x, v)?.finite().expect("nonzero");
            let ctx = GlobalFieldCtx::FunctionField { q: r.q() };
            Ok(AbsValue::NonArchimedean { base: v.residue_size(&ctx)?, exp: -val })
        }
        _ => Err(Error::PlaceMismatch),
    }
}

/// The finite places where x has nonzero valuation, in a fixed ascending
/// order. Rejects zero.
pub fn support(x: &FieldElem) -> Result<Vec<Place>> {
    if x.is_zero() {
        return Err(Error::ZeroInput { op: "support" });
    }
    match x {
        FieldElem::Rat(r) => {
            let mut primes: Vec<BigUint> = Vec::new();
            for part in [r.numer().magnitude(), r.denom().magnitude()] {
                if part.is_one() {
                    continue;
                }
                for p in factor::factor(part).expect("nonzero").into_keys() {
                    primes.push(p);
                }
            }
            primes.sort();
            primes.dedup();
            Ok(primes.into_iter().map(Place::FinitePrime).collect())
        }
        FieldElem::FuncField(r) => {
            let mut irreducibles: Vec<Poly> = Vec::new();
            for part in [r.numerator(), r.denominator()] {
                if part.is_constant() {
                    continue;
                }
                for (pi, _) in part.factor()? {
                    irreducibles.push(pi);
                }
            }
            irreducibles.sort_by(Poly::code_cmp);
            irreducibles.dedup();
            Ok(irreducibles.into_iter().map(Place::FiniteIrreducible).collect())
        }
    }
}
