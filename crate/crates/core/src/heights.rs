//! The exact height on the weighted projective stack P(2,3,4).
//!
//! A point is a class [x0 : x1 : x2] of nonzero triples under the weighted
//! scaling lambda . (x0, x1, x2) = (lambda^2 x0, lambda^3 x1, lambda^4 x2).
//! Its height is a product of local sizes over the places of the field: at a
//! nonarchimedean place v the local factor is q_v^{-e_v} with
//! e_v = min over nonzero i of floor(v(x_i) / w_i), and over Q the real
//! place contributes max(|x0|^{1/2}, |x1|^{1/3}, |x2|^{1/4}).
//!
//! Fractional exponents never materialize: we work with the 12th power of
//! the height (12 = lcm(2,3,4)), which is an exact rational over Q and an
//! exact power of q over F_q(t).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fields::{
    factor, poly, valuation, FieldElem, GlobalFieldCtx, Place, Poly, RatFunc, Valuation,
};

/// The fixed weight vector of the stack.
pub const WEIGHTS: [u32; 3] = [2, 3, 4];

/// A coordinate triple (x0, x1, x2) != (0, 0, 0) representing the point
/// [x0 : x1 : x2]. Equality and hashing are on the representative, not the
/// orbit; use [`normalize`] or [`equivalent`] for point-level identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightedTriple {
    coords: [FieldElem; 3],
}

impl WeightedTriple {
    pub fn new(x0: FieldElem, x1: FieldElem, x2: FieldElem) -> Result<Self> {
        let coords = [x0, x1, x2];
        let ctx = match &coords[0] {
            FieldElem::Rat(_) => GlobalFieldCtx::Rationals,
            FieldElem::FuncField(r) => GlobalFieldCtx::FunctionField { q: r.q() },
        };
        if !coords.iter().all(|c| ctx.owns(c)) {
            return Err(Error::MixedContexts);
        }
        if coords.iter().all(FieldElem::is_zero) {
            return Err(Error::ZeroTriple);
        }
        Ok(WeightedTriple { coords })
    }

    /// Convenience constructor from integers via the embedding Z -> K.
    pub fn from_integers(ctx: &GlobalFieldCtx, coords: [i64; 3]) -> Result<Self> {
        let [a, b, c] = coords;
        WeightedTriple::new(
            ctx.from_integer(a),
            ctx.from_integer(b),
            ctx.from_integer(c),
        )
    }

    pub fn coords(&self) -> &[FieldElem; 3] {
        &self.coords
    }

    pub fn x0(&self) -> &FieldElem {
        &self.coords[0]
    }

    pub fn x1(&self) -> &FieldElem {
        &self.coords[1]
    }

    pub fn x2(&self) -> &FieldElem {
        &self.coords[2]
    }

    pub fn ctx(&self) -> GlobalFieldCtx {
        match &self.coords[0] {
            FieldElem::Rat(_) => GlobalFieldCtx::Rationals,
            FieldElem::FuncField(r) => GlobalFieldCtx::FunctionField { q: r.q() },
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(FieldElem::is_integral)
    }

    /// Parses `"x0,x1,x2"` where each part uses the element syntax of the
    /// context field. Commas inside `[...]` polynomial literals do not split.
    pub fn parse(ctx: &GlobalFieldCtx, s: &str) -> Result<Self> {
        let parts = split_triple(s)?;
        let mut elems = parts.into_iter().map(|p| ctx.parse_elem(p.trim()));
        let x0 = elems.next().unwrap()?;
        let x1 = elems.next().unwrap()?;
        let x2 = elems.next().unwrap()?;
        WeightedTriple::new(x0, x1, x2)
    }
}

impl std::fmt::Display for WeightedTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{},{}", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// Splits on top-level commas only (brackets may nest commas).
fn split_triple(s: &str) -> Result<[&str; 3]> {
    let mut parts = Vec::with_capacity(3);
    let mut depth: i32 = 0;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced ']' in {s:?}")));
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced '[' in {s:?}")));
    }
    parts.push(&s[start..]);
    <[&str; 3]>::try_from(parts)
        .map_err(|v: Vec<&str>| Error::Parse(format!("expected 3 coordinates, got {}", v.len())))
}

/// The exact 12th power of the height. Over Q this is a positive rational
/// (a positive integer on canonical representatives); over F_q(t) the height
/// is q^exp and the 12th power is q^(12 exp).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Height12 {
    Rational(BigRational),
    FunctionField { q: u64, exp: i64 },
}

impl Height12 {
    /// The exact value Ht^12 over Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Height12::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// The exponent m with Ht = q^m over F_q(t).
    pub fn q_exponent(&self) -> Option<i64> {
        match self {
            Height12::FunctionField { exp, .. } => Some(*exp),
            _ => None,
        }
    }

    /// Expands Ht^12 to a rational in either case (exact, possibly large).
    pub fn to_rational_pow12(&self) -> BigRational {
        match self {
            Height12::Rational(r) => r.clone(),
            Height12::FunctionField { q, exp } => {
                let mag = BigInt::from(*q).pow(12 * exp.unsigned_abs() as u32);
                if *exp >= 0 {
                    BigRational::from(mag)
                } else {
                    BigRational::new(BigInt::one(), mag)
                }
            }
        }
    }
}

impl std::fmt::Display for Height12 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Height12::Rational(r) => write!(f, "{r}"),
            Height12::FunctionField { q, exp } => write!(f, "{}^{}", q, 12 * exp),
        }
    }
}

/// The local size exponent e_v = min over nonzero i of floor(v(x_i) / w_i),
/// so that the local height factor is q_v^{-e_v}. Floors round toward
/// negative infinity (floor(-1/2) = -1). Rejects the archimedean place.
pub fn local_size_exp(x: &WeightedTriple, v: &Place) -> Result<i64> {
    if !v.is_nonarchimedean() {
        return Err(Error::ArchimedeanValuation);
    }
    let mut e: Option<i64> = None;
    for (xi, w) in x.coords.iter().zip(WEIGHTS) {
        match valuation(xi, v)? {
            Valuation::Infinite => continue,
            Valuation::Finite(val) => {
                let floored = val.div_euclid(w as i64);
                e = Some(match e {
                    None => floored,
                    Some(prev) => prev.min(floored),
                });
            }
        }
    }
    // The constructor guarantees a nonzero coordinate.
    Ok(e.expect("valid triple has a nonzero coordinate"))
}

/// The exact 12th power of the height of the point [x0 : x1 : x2].
///
/// Computed through the canonical representative: after [`normalize`] every
/// finite local factor is 1, so over Q the height collapses to the real
/// factor max(|x0|^6, |x1|^4, |x2|^3) and over F_q(t) to the degree-place
/// factor q^max(ceil(deg x_i / w_i)). Zero coordinates drop out of the max.
/// Scaling-invariant by construction.
pub fn height12(x: &WeightedTriple) -> Height12 {
    let n = normalize(x);
    match n.ctx() {
        GlobalFieldCtx::Rationals => {
            let mut best = BigRational::zero();
            for (xi, w) in n.coords.iter().zip(WEIGHTS) {
                let r = xi.as_rational().expect("rational context");
                if r.is_zero() {
                    continue;
                }
                let term = r.abs();
                let term = FieldElem::Rat(term).pow_u(12 / w);
                let term = match term {
                    FieldElem::Rat(t) => t,
                    _ => unreachable!(),
                };
                if term > best {
                    best = term;
                }
            }
            Height12::Rational(best)
        }
        GlobalFieldCtx::FunctionField { q } => {
            let mut m = 0i64;
            for (xi, w) in n.coords.iter().zip(WEIGHTS) {
                let r = xi.as_rat_func().expect("function-field context");
                if let Some(d) = r.as_polynomial().and_then(|p| p.degree()) {
                    // ceil(d / w) for d >= 0
                    let c = (d as i64 + w as i64 - 1).div_euclid(w as i64);
                    m = m.max(c);
                }
            }
            Height12::FunctionField { q, exp: m }
        }
    }
}

/// True iff the integral triple cannot be scaled down: no prime or monic
/// irreducible pi with pi^{w_i} dividing x_i for every nonzero coordinate.
/// Zero coordinates impose no constraint. Rejects non-integral input.
pub fn is_minimal(x: &WeightedTriple) -> Result<bool> {
    if !x.is_integral() {
        return Err(Error::NonIntegral { op: "is_minimal" });
    }
    match x.ctx() {
        GlobalFieldCtx::Rationals => {
            let ints: Vec<BigInt> = x
                .coords
                .iter()
                .map(|c| c.as_rational().expect("rational context").numer().clone())
                .collect();
            let mut g = BigUint::zero();
            for n in &ints {
                if !n.is_zero() {
                    g = g.gcd(n.magnitude());
                }
            }
            if g.is_one() {
                return Ok(true);
            }
            for p in factor::factor(&g).expect("nonzero gcd").into_keys() {
                if min_floor_rat(&ints, &p) >= 1 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        GlobalFieldCtx::FunctionField { q } => {
            let polys: Vec<Poly> = x
                .coords
                .iter()
                .map(|c| {
                    c.as_rat_func()
                        .expect("function-field context")
                        .as_polynomial()
                        .expect("integral")
                        .clone()
                })
                .collect();
            let mut g = Poly::zero(q);
            for p in &polys {
                if !p.is_zero() {
                    g = Poly::gcd(&g, p);
                }
            }
            if g.is_constant() {
                return Ok(true);
            }
            for (pi, _) in g.factor()? {
                if min_floor_poly(&polys, &pi) >= 1 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// min over nonzero entries of floor(v_p(n_i) / w_i) for integer entries.
fn min_floor_rat(ints: &[BigInt], p: &BigUint) -> i64 {
    let mut e: Option<i64> = None;
    for (n, w) in ints.iter().zip(WEIGHTS) {
        if n.is_zero() {
            continue;
        }
        let val = biguint_multiplicity(n.magnitude(), p);
        let floored = val.div_euclid(w as i64);
        e = Some(e.map_or(floored, |prev| prev.min(floored)));
    }
    e.expect("valid triple")
}

fn min_floor_poly(polys: &[Poly], pi: &Poly) -> i64 {
    let mut e: Option<i64> = None;
    for (p, w) in polys.iter().zip(WEIGHTS) {
        if p.is_zero() {
            continue;
        }
        let val = p.multiplicity_of(pi) as i64;
        let floored = val.div_euclid(w as i64);
        e = Some(e.map_or(floored, |prev| prev.min(floored)));
    }
    e.expect("valid triple")
}

fn biguint_multiplicity(n: &BigUint, p: &BigUint) -> i64 {
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

/// Applies the weighted scaling lambda . x = (l^2 x0, l^3 x1, l^4 x2).
/// Rejects lambda = 0 (not a group element).
pub fn scale(x: &WeightedTriple, lambda: &FieldElem) -> Result<WeightedTriple> {
    if lambda.is_zero() {
        return Err(Error::ZeroInput { op: "scale" });
    }
    let [x0, x1, x2] = &x.coords;
    WeightedTriple::new(
        lambda.pow_u(2).mul(x0),
        lambda.pow_u(3).mul(x1),
        lambda.pow_u(4).mul(x2),
    )
}

/// The unique canonical representative of the orbit of `x`: integral,
/// minimal, and unit-fixed (over Q the sign of x1 is nonnegative; over
/// F_q(t) the constant unit giving the least coefficient encoding is
/// chosen). Idempotent, and constant on scaling orbits.
pub fn normalize(x: &WeightedTriple) -> WeightedTriple {
    match x.ctx() {
        GlobalFieldCtx::Rationals => normalize_rat(x),
        GlobalFieldCtx::FunctionField { q } => normalize_func(x, q),
    }
}

fn normalize_rat(x: &WeightedTriple) -> WeightedTriple {
    // Clear denominators with lambda = lcm of the denominators: each
    // denominator divides lambda, hence divides lambda^{w_i}.
    let rats: Vec<&BigRational> = x
        .coords
        .iter()
        .map(|c| c.as_rational().expect("rational context"))
        .collect();
    let mut lambda = BigInt::one();
    for r in &rats {
        lambda = lambda.lcm(r.denom());
    }
    let mut ints: Vec<BigInt> = rats
        .iter()
        .zip(WEIGHTS)
        .map(|(r, w)| (*r * BigRational::from(lambda.pow(w))).to_integer())
        .collect();

    // Strip every prime with min-floor >= 1.
    let mut g = BigUint::zero();
    for n in &ints {
        if !n.is_zero() {
            g = g.gcd(n.magnitude());
        }
    }
    if !g.is_one() {
        for p in factor::factor(&g).expect("nonzero gcd").into_keys() {
            let k = min_floor_rat(&ints, &p);
            if k >= 1 {
                let p = BigInt::from(p);
                for (n, w) in ints.iter_mut().zip(WEIGHTS) {
                    *n /= p.pow(k as u32 * w);
                }
            }
        }
    }

    // Unit fix: lambda = -1 flips only the odd-weight coordinate x1.
    if ints[1].is_negative() {
        ints[1] = -ints[1].clone();
    }

    let mut elems = ints
        .into_iter()
        .map(|n| FieldElem::Rat(BigRational::from(n)));
    WeightedTriple::new(
        elems.next().unwrap(),
        elems.next().unwrap(),
        elems.next().unwrap(),
    )
    .expect("orbit of a valid triple")
}

fn normalize_func(x: &WeightedTriple, q: u64) -> WeightedTriple {
    // Clear denominators with lambda = lcm of the denominators.
    let funcs: Vec<&RatFunc> = x
        .coords
        .iter()
        .map(|c| c.as_rat_func().expect("function-field context"))
        .collect();
    let mut lambda = Poly::one(q);
    for r in &funcs {
        let den = r.denominator();
        let g = Poly::gcd(&lambda, den);
        lambda = lambda.mul(den).divmod(&g).expect("nonzero gcd").0.make_monic();
    }
    let mut polys: Vec<Poly> = funcs
        .iter()
        .zip(WEIGHTS)
        .map(|(r, w)| {
            r.mul(&RatFunc::from_poly(lambda.pow(w)))
                .as_polynomial()
                .expect("denominators cleared")
                .clone()
        })
        .collect();

    // Strip every monic irreducible with min-floor >= 1.
    let mut g = Poly::zero(q);
    for p in &polys {
        if !p.is_zero() {
            g = Poly::gcd(&g, p);
        }
    }
    if !g.is_constant() {
        for (pi, _) in g.factor().expect("nonzero gcd") {
            let k = min_floor_poly(&polys, &pi);
            if k >= 1 {
                let step = pi.pow(k as u32);
                for (p, w) in polys.iter_mut().zip(WEIGHTS) {
                    *p = p.divmod(&step.pow(w)).expect("divisible").0;
                }
            }
        }
    }

    // Unit fix: scan lambda over F_q^* and keep the representative whose
    // coefficient encoding (x0, then x1, then x2, each by degree then
    // coefficients from the top) is least.
    let mut best: Option<[Poly; 3]> = None;
    for lam in 1..q {
        let l2 = poly::fq_pow(q, lam, 2);
        let l3 = poly::fq_pow(q, lam, 3);
        let l4 = poly::fq_pow(q, lam, 4);
        let cand = [
            polys[0].mul_scalar(l2),
            polys[1].mul_scalar(l3),
            polys[2].mul_scalar(l4),
        ];
        let better = match &best {
            None => true,
            Some(cur) => triple_code_lt(&cand, cur),
        };
        if better {
            best = Some(cand);
        }
    }
    let best = best.expect("q >= 5");

    let mut elems = best.into_iter().map(|p| FieldElem::FuncField(RatFunc::from_poly(p)));
    WeightedTriple::new(
        elems.next().unwrap(),
        elems.next().unwrap(),
        elems.next().unwrap(),
    )
    .expect("orbit of a valid triple")
}

fn triple_code_lt(a: &[Poly; 3], b: &[Poly; 3]) -> bool {
    for (pa, pb) in a.iter().zip(b.iter()) {
        match Poly::code_cmp(pa, pb) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

/// True iff `a` and `b` represent the same point, i.e. differ by a weighted
/// scaling. Rejects triples over different fields.
pub fn equivalent(a: &WeightedTriple, b: &WeightedTriple) -> Result<bool> {
    if a.ctx() != b.ctx() {
        return Err(Error::MixedContexts);
    }
    Ok(normalize(a) == normalize(b))
}
