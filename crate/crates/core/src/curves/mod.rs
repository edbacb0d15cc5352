//! From points of P(2,3,4) to marked elliptic curves and torsion orders.
//!
//! The chart sends a triple (x0, x1, x2) to the short Weierstrass curve
//! E: y^2 = x^3 + a4 x + a6 with a4 = x2, marked point P = (x0, x1), and a6
//! forced by the on-curve condition. The weighted scaling on triples matches
//! the standard Weierstrass rescaling exactly, so points of P(2,3,4) become
//! isomorphism classes of marked curves (E, P).
//!
//! The marked point's order is decided by exact successive multiples under
//! the chord-tangent group law (valid since the field characteristic is
//! never 2 or 3 here), with two sound shortcuts on integral models over Q:
//! a torsion point has integral multiples, and its y-coordinate squared
//! divides the discriminant.

pub mod classify;

use crate::error::{Error, Result};
use crate::fields::{FieldElem, GlobalFieldCtx};
use crate::heights::WeightedTriple;

/// A short Weierstrass curve y^2 = x^3 + a4 x + a6 with a marked affine
/// point (px, py) lying on it exactly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MarkedCurve {
    a4: FieldElem,
    a6: FieldElem,
    px: FieldElem,
    py: FieldElem,
}

impl MarkedCurve {
    /// Builds a marked curve, verifying the on-curve identity
    /// py^2 = px^3 + a4 px + a6 exactly.
    pub fn new(a4: FieldElem, a6: FieldElem, px: FieldElem, py: FieldElem) -> Result<Self> {
        let ctx = match &a4 {
            FieldElem::Rat(_) => GlobalFieldCtx::Rationals,
            FieldElem::FuncField(r) => GlobalFieldCtx::FunctionField { q: r.q() },
        };
        if ![&a6, &px, &py].into_iter().all(|e| ctx.owns(e)) {
            return Err(Error::MixedContexts);
        }
        let c = MarkedCurve { a4, a6, px, py };
        if !is_on_curve(&c, &c.marked_point()) {
            return Err(Error::OffCurve);
        }
        Ok(c)
    }

    pub fn a4(&self) -> &FieldElem {
        &self.a4
    }

    pub fn a6(&self) -> &FieldElem {
        &self.a6
    }

    pub fn marked_point(&self) -> CurvePoint {
        CurvePoint::Affine { x: self.px.clone(), y: self.py.clone() }
    }

    pub fn ctx(&self) -> GlobalFieldCtx {
        match &self.a4 {
            FieldElem::Rat(_) => GlobalFieldCtx::Rationals,
            FieldElem::FuncField(r) => GlobalFieldCtx::FunctionField { q: r.q() },
        }
    }

    /// True when all defining data lies in the ring of integers (Z or
    /// F_q[t]); canonical triples always produce integral models.
    pub fn is_integral_model(&self) -> bool {
        [&self.a4, &self.a6, &self.px, &self.py]
            .into_iter()
            .all(FieldElem::is_integral)
    }
}

/// A point of the curve's group of rational points.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CurvePoint {
    Affine { x: FieldElem, y: FieldElem },
    Identity,
}

impl CurvePoint {
    pub fn is_identity(&self) -> bool {
        matches!(self, CurvePoint::Identity)
    }

    /// The inverse -(x, y) = (x, -y).
    pub fn negate(&self) -> CurvePoint {
        match self {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.clone(), y: y.neg() },
        }
    }
}

/// The classification of a marked point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TorsionClass {
    /// n P = O and m P != O for 0 < m < n.
    Order(u32),
    /// No multiple up to the decision cap vanishes; over Q with cap >= 12
    /// this is exact (no larger rational torsion order exists).
    NonTorsion,
    /// The triple lies outside the elliptic locus (discriminant zero).
    Singular,
}

impl std::fmt::Display for TorsionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TorsionClass::Order(n) => write!(f, "order {n}"),
            TorsionClass::NonTorsion => write!(f, "nontorsion"),
            TorsionClass::Singular => write!(f, "singular"),
        }
    }
}

/// The moduli chart: a4 = x2, P = (x0, x1), and a6 = x1^2 - x0^3 - x2 x0 so
/// that P lies on y^2 = x^3 + a4 x + a6 by construction. Equivariant: the
/// weighted scaling by lambda induces (a4, a6, x, y) -> (l^4 a4, l^6 a6,
/// l^2 x, l^3 y). Singularity is not an error here; it is classified
/// downstream.
pub fn to_marked_curve(t: &WeightedTriple) -> MarkedCurve {
    let [x0, x1, x2] = t.coords();
    let a6 = x1.square().sub(&x0.pow_u(3)).sub(&x2.mul(x0));
    MarkedCurve { a4: x2.clone(), a6, px: x0.clone(), py: x1.clone() }
}

/// The discriminant -16 (4 a4^3 + 27 a6^2) of the short Weierstrass model.
/// Zero exactly on the cuspidal/nodal locus outside the moduli of elliptic
/// curves; as a function of the triple it is weighted-homogeneous of degree
/// 12, so "discriminant != 0" descends to points.
pub fn discriminant(c: &MarkedCurve) -> FieldElem {
    let ctx = c.ctx();
    let four = ctx.from_integer(4);
    let twenty_seven = ctx.from_integer(27);
    let inner = four.mul(&c.a4.pow_u(3)).add(&twenty_seven.mul(&c.a6.square()));
    ctx.from_integer(-16).mul(&inner)
}

/// Exact membership test for the curve equation.
pub fn is_on_curve(c: &MarkedCurve, p: &CurvePoint) -> bool {
    match p {
        CurvePoint::Identity => true,
        CurvePoint::Affine { x, y } => {
            y.square() == x.pow_u(3).add(&c.a4.mul(x)).add(&c.a6)
        }
    }
}

/// Chord-tangent addition on a nonsingular curve. Inputs are revalidated;
/// use this at API boundaries and the census paths internally.
pub fn ec_add(c: &MarkedCurve, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
    if discriminant(c).is_zero() {
        return Err(Error::SingularCurve);
    }
    if !is_on_curve(c, p) || !is_on_curve(c, q) {
        return Err(Error::OffCurve);
    }
    Ok(add_unchecked(c, p, q))
}

/// n-th multiple by double-and-add; ec_mul(c, 0, p) is the identity.
pub fn ec_mul(c: &MarkedCurve, n: u64, p: &CurvePoint) -> Result<CurvePoint> {
    if discriminant(c).is_zero() {
        return Err(Error::SingularCurve);
    }
    if !is_on_curve(c, p) {
        return Err(Error::OffCurve);
    }
    let mut acc = CurvePoint::Identity;
    let mut base = p.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = add_unchecked(c, &acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = add_unchecked(c, &base, &base);
        }
    }
    Ok(acc)
}

/// Group law without input validation (callers guarantee on-curve points
/// and a nonzero discriminant).
fn add_unchecked(c: &MarkedCurve, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
    let (x1, y1) = match p {
        CurvePoint::Identity => return q.clone(),
        CurvePoint::Affine { x, y } => (x, y),
    };
    let (x2, y2) = match q {
        CurvePoint::Identity => return p.clone(),
        CurvePoint::Affine { x, y } => (x, y),
    };
    let lambda = if x1 == x2 {
        if *y2 == y1.neg() {
            // Vertical chord (or tangent at a 2-torsion point).
            return CurvePoint::Identity;
        }
        // Tangent: y1 = y2 != 0.
        let ctx = c.ctx();
        let three = ctx.from_integer(3);
        let two = ctx.from_integer(2);
        three
            .mul(&x1.square())
            .add(&c.a4)
            .div(&two.mul(y1))
            .expect("tangent denominator nonzero")
    } else {
        y2.sub(y1).div(&x2.sub(x1)).expect("chord denominator nonzero")
    };
    let x3 = lambda.square().sub(x1).sub(x2);
    let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
    CurvePoint::Affine { x: x3, y: y3 }
}

/// Decides the order of the marked point by successive multiples
/// P, 2P, ..., cap P, returning at the first vanishing multiple.
///
/// Over Q on an integral model two sound shortcuts apply before and during
/// the loop: if py != 0 and py^2 does not divide the discriminant the point
/// is non-torsion (Lutz-Nagell direction "torsion => y^2 | disc"), and if
/// any multiple acquires a non-integral coordinate the point is non-torsion
/// (torsion points of integral models stay integral). Over Q a cap of 12 is
/// exhaustive; over F_q(t) the result is relative to the supplied cap.
pub fn torsion_order(c: &MarkedCurve, cap: u32) -> Result<TorsionClass> {
    if cap < 1 {
        return Err(Error::InvalidCap);
    }
    let delta = discriminant(c);
    if delta.is_zero() {
        return Ok(TorsionClass::Singular);
    }
    let integral_rat = c.ctx().is_rationals() && c.is_integral_model();
    if integral_rat && !c.py.is_zero() {
        let py2 = c.py.square();
        let py2 = py2.as_rational().expect("rational context").numer();
        let delta_int = delta.as_rational().expect("rational context").numer();
        use num_integer::Integer;
        if !delta_int.is_multiple_of(py2) {
            return Ok(TorsionClass::NonTorsion);
        }
    }
    let p = c.marked_point();
    let mut acc = p.clone();
    for n in 2..=cap {
        acc = add_unchecked(c, &acc, &p);
        match &acc {
            CurvePoint::Identity => return Ok(TorsionClass::Order(n)),
            CurvePoint::Affine { x, y } => {
                if integral_rat && (!x.is_integral() || !y.is_integral()) {
                    return Ok(TorsionClass::NonTorsion);
                }
            }
        }
    }
    Ok(TorsionClass::NonTorsion)
}
