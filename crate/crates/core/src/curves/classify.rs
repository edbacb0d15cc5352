//! Machine-integer classification of census points over Q.
//!
//! The census classifies tens of millions of integral triples; building
//! big-rational curve data for each would dominate the runtime. This path
//! mirrors [`torsion_order`] exactly on i128 arithmetic — same discriminant
//! test, same Lutz-Nagell prefilter, same integral multiples chain with the
//! same early exits — and falls back to the exact big-number route on any
//! intermediate overflow, so its answers are identical by construction and
//! verified against the generic route in tests.

use super::{to_marked_curve, torsion_order, TorsionClass};
use crate::fields::GlobalFieldCtx;
use crate::heights::WeightedTriple;

/// Classifies the marked point of the chart image of an integer triple.
/// `cap` must be >= 1; pass 12 for an exhaustive decision over Q. The
/// triple must not be (0, 0, 0).
pub fn classify_rational(x0: i64, x1: i64, x2: i64, cap: u32) -> TorsionClass {
    debug_assert!((x0, x1, x2) != (0, 0, 0));
    debug_assert!(cap >= 1);
    match classify_i128(x0 as i128, x1 as i128, x2 as i128, cap) {
        Some(class) => class,
        None => {
            let t = WeightedTriple::from_integers(&GlobalFieldCtx::Rationals, [x0, x1, x2])
                .expect("nonzero triple");
            torsion_order(&to_marked_curve(&t), cap).expect("cap validated")
        }
    }
}

/// The machine-width route; `None` signals overflow somewhere and defers to
/// the exact route.
fn classify_i128(p: i128, s: i128, a: i128, cap: u32) -> Option<TorsionClass> {
    let p2 = p.checked_mul(p)?;
    let p3 = p2.checked_mul(p)?;
    let s2 = s.checked_mul(s)?;
    let b = s2.checked_sub(p3)?.checked_sub(a.checked_mul(p)?)?;
    let a3 = a.checked_mul(a)?.checked_mul(a)?;
    let b2 = b.checked_mul(b)?;
    let delta = a3
        .checked_mul(4)?
        .checked_add(b2.checked_mul(27)?)?
        .checked_mul(-16)?;
    if delta == 0 {
        return Some(TorsionClass::Singular);
    }
    if s == 0 {
        // y = 0 is exactly the 2-torsion condition.
        return Some(if cap >= 2 { TorsionClass::Order(2) } else { TorsionClass::NonTorsion });
    }
    if delta % s2 != 0 {
        // Lutz-Nagell: torsion would force s^2 | delta.
        return Some(TorsionClass::NonTorsion);
    }
    if cap < 2 {
        return Some(TorsionClass::NonTorsion);
    }

    // Double once: 2P = (x2, y2) with the tangent slope (3p^2 + a) / (2s).
    // A non-integral multiple proves non-torsion (integral model), and an
    // integral x forces an integral y, so only x needs the divisibility
    // check at each step.
    let num = p2.checked_mul(3)?.checked_add(a)?;
    let den4 = s2.checked_mul(4)?;
    let dnum = num
        .checked_mul(num)?
        .checked_sub(p.checked_mul(s2)?.checked_mul(8)?)?;
    if dnum % den4 != 0 {
        return Some(TorsionClass::NonTorsion);
    }
    let mut u = dnum / den4;
    let f = num.checked_mul(p.checked_sub(u)?)?;
    let den2 = 2 * s;
    debug_assert_eq!(f % den2, 0);
    let mut v = (f / den2).checked_sub(s)?;

    // Walk nP for n = 2.. by adding the base point with chord slopes.
    let mut n = 2u32;
    while n < cap {
        if u == p {
            // On a curve, equal x means v = +/- s; v = s would say
            // (n-1)P = O, which an earlier step would have caught.
            debug_assert_eq!(v, -s);
            return Some(TorsionClass::Order(n + 1));
        }
        let d = u.checked_sub(p)?;
        let e = v.checked_sub(s)?;
        let d2 = d.checked_mul(d)?;
        let dnum = e
            .checked_mul(e)?
            .checked_sub(u.checked_add(p)?.checked_mul(d2)?)?;
        if dnum % d2 != 0 {
            return Some(TorsionClass::NonTorsion);
        }
        let x3 = dnum / d2;
        let f = e.checked_mul(p.checked_sub(x3)?)?;
        debug_assert_eq!(f % d, 0);
        let y3 = (f / d).checked_sub(s)?;
        u = x3;
        v = y3;
        n += 1;
    }
    Some(TorsionClass::NonTorsion)
}
