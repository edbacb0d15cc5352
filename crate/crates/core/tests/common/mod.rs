//! Shared oracles for the integration tests.
//!
//! Everything here recomputes quantities through routes that are
//! deliberately different from the production fast paths: heights as
//! literal per-place products assembled from the public valuation API,
//! enumeration as a full box scan with dedup, and torsion as successive
//! additions through the validated group law with no shortcuts.

#![allow(dead_code)] // each integration test binary uses its own subset

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use p234::curves::{discriminant, ec_add, MarkedCurve, TorsionClass};
use p234::fields::{
    support, valuation, FieldElem, GlobalFieldCtx, Place, Poly, RatFunc, Valuation,
};
use p234::heights::{normalize, WeightedTriple, WEIGHTS};

fn rat_pow(r: &BigRational, k: u32) -> BigRational {
    BigRational::new(r.numer().pow(k), r.denom().pow(k))
}

fn finite_valuation(x: &FieldElem, place: &Place) -> i64 {
    match valuation(x, place).expect("nonarchimedean place") {
        Valuation::Finite(v) => v,
        Valuation::Infinite => panic!("valuation of zero requested"),
    }
}

/// e_v = min over nonzero coordinates of floor(v(x_i) / w_i), computed
/// from the public valuation API alone.
fn literal_local_exp(t: &WeightedTriple, place: &Place) -> i64 {
    let mut e: Option<i64> = None;
    for (i, c) in t.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let f = finite_valuation(c, place).div_euclid(WEIGHTS[i] as i64);
        e = Some(e.map_or(f, |cur| cur.min(f)));
    }
    e.expect("triple has a nonzero coordinate")
}

/// The height over Q as the literal product: (prod over support places
/// of p^{-e_v})^12 times max(|x0|^6, |x1|^4, |x2|^3). No normalization,
/// no fast path.
pub fn literal_height12_rational(t: &WeightedTriple) -> BigRational {
    assert_eq!(t.ctx(), GlobalFieldCtx::Rationals);
    let mut primes = BTreeSet::new();
    for c in t.coords() {
        if c.is_zero() {
            continue;
        }
        for place in support(c).expect("rational element") {
            if let Place::FinitePrime(p) = place {
                primes.insert(p);
            }
        }
    }
    let mut acc = BigRational::one();
    for p in primes {
        let place = Place::finite_prime(p.clone()).expect("support yields primes");
        let e = literal_local_exp(t, &place);
        let pk = |k: u32| BigRational::from(BigInt::from(p.clone()).pow(k));
        if e >= 0 {
            acc /= pk(12 * e as u32);
        } else {
            acc *= pk(12 * (-e) as u32);
        }
    }
    let mut arch = BigRational::zero();
    for (i, c) in t.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let absolute = c.as_rational().expect("rational context").abs();
        let powed = rat_pow(&absolute, 12 / WEIGHTS[i]);
        if powed > arch {
            arch = powed;
        }
    }
    acc * arch
}

fn factor_primes_u64(mut n: u64, primes: &mut BTreeSet<u64>) {
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            primes.insert(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.insert(n);
    }
}

fn multiplicity_u64(mut n: u64, p: u64) -> u32 {
    let mut m = 0;
    while n % p == 0 {
        n /= p;
        m += 1;
    }
    m
}

/// Integer-specialized literal height product, for large sweeps: same
/// quantity as [`literal_height12_rational`] on integral triples.
pub fn literal_height12_int(x0: i64, x1: i64, x2: i64) -> BigRational {
    assert!((x0, x1, x2) != (0, 0, 0));
    let coords = [x0, x1, x2];
    let mut primes = BTreeSet::new();
    for &c in &coords {
        if c != 0 {
            factor_primes_u64(c.unsigned_abs(), &mut primes);
        }
    }
    let mut den: u128 = 1;
    for p in primes {
        let mut e = i64::MAX;
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                let m = multiplicity_u64(c.unsigned_abs(), p) as i64;
                e = e.min(m / WEIGHTS[i] as i64);
            }
        }
        den *= (p as u128).pow(12 * e as u32);
    }
    let mut arch: u128 = 0;
    for (i, &c) in coords.iter().enumerate() {
        if c != 0 {
            arch = arch.max((c.unsigned_abs() as u128).pow(12 / WEIGHTS[i]));
        }
    }
    BigRational::new(BigInt::from(arch), BigInt::from(den))
}

/// The height exponent m (so Ht = q^m) over F_q(t) as the literal sum
/// over all places, including the place at infinity:
/// m = sum of (-e_v) deg(v).
pub fn literal_height_exponent_func(t: &WeightedTriple) -> i64 {
    let mut irreducibles: Vec<Poly> = Vec::new();
    for c in t.coords() {
        if c.is_zero() {
            continue;
        }
        for place in support(c).expect("function-field element") {
            if let Place::FiniteIrreducible(pi) = place {
                if !irreducibles.contains(&pi) {
                    irreducibles.push(pi);
                }
            }
        }
    }
    let mut m = 0i64;
    for pi in irreducibles {
        let place = Place::finite_irreducible(pi).expect("support yields irreducibles");
        let deg = place.degree() as i64;
        m += -literal_local_exp(t, &place) * deg;
    }
    m += -literal_local_exp(t, &Place::DegreePlace);
    m
}

/// Torsion by successive additions through the public validated group
/// law — no Lutz-Nagell prefilter, no integrality early exit, no
/// integer specialization.
pub fn multiples_only_class(curve: &MarkedCurve, cap: u32) -> TorsionClass {
    assert!(cap >= 1);
    if discriminant(curve).is_zero() {
        return TorsionClass::Singular;
    }
    let p = curve.marked_point();
    let mut acc = p.clone();
    for n in 2..=cap {
        acc = ec_add(curve, &acc, &p).expect("points stay on the curve");
        if acc.is_identity() {
            return TorsionClass::Order(n);
        }
    }
    TorsionClass::NonTorsion
}

/// Every canonical representative of height at most b, the slow way:
/// scan the whole coordinate box (negative and non-minimal triples
/// included), normalize each, and dedup as a set.
pub fn naive_canonical_set(b: i64) -> HashSet<WeightedTriple> {
    let ctx = GlobalFieldCtx::rationals();
    let (m0, m1, m2) = (b * b, b * b * b, b * b * b * b);
    let mut set = HashSet::new();
    for x0 in -m0..=m0 {
        for x1 in -m1..=m1 {
            for x2 in -m2..=m2 {
                if (x0, x1, x2) == (0, 0, 0) {
                    continue;
                }
                let t = WeightedTriple::from_integers(&ctx, [x0, x1, x2]).unwrap();
                set.insert(normalize(&t));
            }
        }
    }
    set
}

/// Random exact rational with numerator and denominator up to `mag`.
pub fn rand_rational(rng: &mut (impl Rng + ?Sized), mag: i64) -> BigRational {
    let numer = rng.gen_range(-mag..=mag);
    let denom = rng.gen_range(1..=mag);
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rand_nonzero_rational(rng: &mut (impl Rng + ?Sized), mag: i64) -> BigRational {
    loop {
        let r = rand_rational(rng, mag);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random valid triple over Q with small rational coordinates (zeros
/// allowed, but never all three).
pub fn rand_triple_rational(rng: &mut impl Rng) -> WeightedTriple {
    let ctx = GlobalFieldCtx::rationals();
    loop {
        let coord = |rng: &mut dyn rand::RngCore| {
            if rng.gen_range(0..4) == 0 {
                ctx.zero()
            } else {
                FieldElem::Rat(rand_rational(rng, 12))
            }
        };
        let t = WeightedTriple::new(coord(rng), coord(rng), coord(rng));
        if let Ok(t) = t {
            return t;
        }
    }
}

pub fn rand_poly(rng: &mut (impl Rng + ?Sized), q: u64, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..q)).collect();
    Poly::from_coeffs(q, &coeffs)
}

pub fn rand_nonzero_poly(rng: &mut (impl Rng + ?Sized), q: u64, max_deg: usize) -> Poly {
    loop {
        let p = rand_poly(rng, q, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn rand_ratfunc(rng: &mut (impl Rng + ?Sized), q: u64, max_deg: usize) -> RatFunc {
    let num = rand_poly(rng, q, max_deg);
    let den = rand_nonzero_poly(rng, q, max_deg);
    RatFunc::new(num, den).expect("nonzero denominator")
}

pub fn rand_nonzero_ratfunc(rng: &mut (impl Rng + ?Sized), q: u64, max_deg: usize) -> RatFunc {
    loop {
        let f = rand_ratfunc(rng, q, max_deg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random valid triple over F_q(t) with small rational-function
/// coordinates (zeros allowed, but never all three).
pub fn rand_triple_func(rng: &mut impl Rng, q: u64) -> WeightedTriple {
    loop {
        let coord = |rng: &mut dyn rand::RngCore| {
            if rng.gen_range(0..4) == 0 {
                FieldElem::FuncField(RatFunc::zero(q))
            } else {
                FieldElem::FuncField(rand_ratfunc(rng, q, 2))
            }
        };
        let t = WeightedTriple::new(coord(rng), coord(rng), coord(rng));
        if let Ok(t) = t {
            return t;
        }
    }
}
