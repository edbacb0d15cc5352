//! Enumeration of all points of P(2,3,4) with height at most a bound.
//!
//! Over Q the bound is a positive rational B; over F_q(t) it is q^d for a
//! nonnegative integer d. Because canonical representatives fill the
//! Northcott box exactly (see the heights module), enumeration is a box
//! scan plus a minimality sieve and a unit-canonicity filter — no height is
//! ever computed in the inner loop. Output order is the documented total
//! order: ascending (x2, x0, x1), with polynomials ranked by their base-q
//! coefficient codes. The scan parallelizes over the outer coordinate while
//! consuming chunk results in order, so listings and counts are identical
//! for every worker count.

mod driver;
pub(crate) mod function_field;
pub(crate) mod rational;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::fields::{FieldElem, GlobalFieldCtx, Poly, RatFunc};
use crate::heights::{scale, WeightedTriple};

pub(crate) use driver::{resolve_workers, run_chunked};
use function_field::FunctionFieldScan;
use rational::RationalScan;

/// Largest accepted rational bound; keeps every box coordinate and the
/// sieve arithmetic comfortably inside i64 (B^4 <= 10^8).
const MAX_RATIONAL_BOUND: i64 = 100;
/// Largest accepted function-field degree bound (the d = 2 box is already
/// beyond desk scale for q = 5).
const MAX_DEGREE_BOUND: u32 = 8;

/// A height cutoff Ht <= B.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HeightBound {
    Rationals { bound: BigRational },
    FunctionField { q: u64, d: u32 },
}

impl HeightBound {
    /// A positive rational bound B (points exist iff B >= 1).
    pub fn rational(bound: BigRational) -> Result<Self> {
        if !bound.is_positive() {
            return Err(Error::BoundRange(format!("bound {bound} is not positive")));
        }
        if bound > BigRational::from(BigInt::from(MAX_RATIONAL_BOUND)) {
            return Err(Error::BoundRange(format!(
                "bound {bound} exceeds the supported maximum {MAX_RATIONAL_BOUND}"
            )));
        }
        Ok(HeightBound::Rationals { bound })
    }

    /// The bound q^d over F_q(t).
    pub fn function_field(q: u64, d: u32) -> Result<Self> {
        let ctx = GlobalFieldCtx::function_field(q)?;
        if d > MAX_DEGREE_BOUND {
            return Err(Error::BoundRange(format!(
                "degree bound {d} exceeds the supported maximum {MAX_DEGREE_BOUND}"
            )));
        }
        let _ = ctx;
        Ok(HeightBound::FunctionField { q, d })
    }

    pub fn ctx(&self) -> GlobalFieldCtx {
        match self {
            HeightBound::Rationals { .. } => GlobalFieldCtx::Rationals,
            HeightBound::FunctionField { q, .. } => GlobalFieldCtx::FunctionField { q: *q },
        }
    }

    /// The bound as a floating-point number (B, or q^d), for diagnostics
    /// such as log-log growth fits.
    pub fn approx(&self) -> f64 {
        match self {
            HeightBound::Rationals { bound } => bound.to_f64().expect("bounded magnitude"),
            HeightBound::FunctionField { q, d } => (*q as f64).powi(*d as i32),
        }
    }

    /// floor(B^w): the box limit for a weight-w coordinate.
    fn pow_floor(bound: &BigRational, w: u32) -> i64 {
        let num = bound.numer().pow(w);
        let den = bound.denom().pow(w);
        (num / den).to_i64().expect("bound magnitude validated")
    }

    pub(crate) fn plan(&self) -> ScanPlan {
        match self {
            HeightBound::Rationals { bound } => {
                let b_floor = Self::pow_floor(bound, 1);
                ScanPlan::Rationals(RationalScan::new(
                    Self::pow_floor(bound, 2),
                    Self::pow_floor(bound, 3),
                    Self::pow_floor(bound, 4),
                    b_floor,
                ))
            }
            HeightBound::FunctionField { q, d } => {
                ScanPlan::FunctionField(FunctionFieldScan::new(*q, *d))
            }
        }
    }
}

impl std::fmt::Display for HeightBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HeightBound::Rationals { bound } => write!(f, "{bound}"),
            HeightBound::FunctionField { q, d } => write!(f, "{q}^{d}"),
        }
    }
}

pub(crate) enum ScanPlan {
    Rationals(RationalScan),
    FunctionField(FunctionFieldScan),
}

impl ScanPlan {
    pub(crate) fn n_chunks(&self) -> usize {
        match self {
            ScanPlan::Rationals(s) => s.n_chunks(),
            ScanPlan::FunctionField(s) => s.n_chunks(),
        }
    }
}

/// A scaling-invariant boolean property of points, i.e. a predicate on
/// triples that the caller guarantees constant on orbits; enumeration
/// spot-checks the guarantee on sampled orbits and reports violations.
pub struct SubstackPredicate<'a> {
    f: Box<dyn Fn(&WeightedTriple) -> bool + Sync + 'a>,
}

impl<'a> SubstackPredicate<'a> {
    pub fn new(f: impl Fn(&WeightedTriple) -> bool + Sync + 'a) -> Self {
        SubstackPredicate { f: Box::new(f) }
    }

    pub fn eval(&self, t: &WeightedTriple) -> bool {
        (self.f)(t)
    }
}

/// Visits every point with Ht <= bound exactly once, as its canonical
/// representative, in the documented order, for any worker count
/// (`workers = 0` means all available cores; the listing is identical
/// either way).
pub fn enumerate_points<F: FnMut(WeightedTriple)>(
    bound: &HeightBound,
    workers: usize,
    mut visitor: F,
) -> Result<()> {
    let plan = bound.plan();
    run_chunked(
        plan.n_chunks(),
        resolve_workers(workers),
        |chunk| {
            let mut triples = Vec::new();
            visit_chunk_triples(&plan, chunk, |t| triples.push(t));
            triples
        },
        |_, triples| {
            for t in triples {
                visitor(t);
            }
        },
    );
    Ok(())
}

/// N(bound): the number of points with Ht <= bound.
pub fn count_points(bound: &HeightBound, workers: usize) -> Result<u64> {
    let plan = bound.plan();
    let mut total = 0u64;
    run_chunked(
        plan.n_chunks(),
        resolve_workers(workers),
        |chunk| {
            let mut n = 0u64;
            match &plan {
                ScanPlan::Rationals(s) => s.scan_chunk(chunk, |_, _, _| n += 1),
                ScanPlan::FunctionField(s) => s.scan_chunk(chunk, |_, _, _| n += 1),
            }
            n
        },
        |_, n| total += n,
    );
    Ok(total)
}

/// Counts points satisfying the predicate alongside the total, in one
/// pass. The first point of each chunk doubles as an orbit spot check:
/// the predicate must give the same answer on a scaled representative,
/// otherwise the declared scaling invariance is broken and the count is
/// aborted with an error.
pub fn count_with_predicate(
    bound: &HeightBound,
    workers: usize,
    pred: &SubstackPredicate<'_>,
) -> Result<(u64, u64)> {
    struct Acc {
        n_pred: u64,
        n_total: u64,
        violation: Option<(String, String)>,
    }
    let plan = bound.plan();
    let ctx = bound.ctx();
    let lambdas = spot_check_lambdas(&ctx);
    let map = |chunk: usize| {
        let mut acc = Acc { n_pred: 0, n_total: 0, violation: None };
        visit_chunk_triples(&plan, chunk, |t| {
            let value = pred.eval(&t);
            if acc.n_total == 0 && acc.violation.is_none() {
                let lam = &lambdas[chunk % lambdas.len()];
                let scaled = scale(&t, lam).expect("nonzero lambda");
                if pred.eval(&scaled) != value {
                    acc.violation = Some((t.to_string(), lam.to_string()));
                }
            }
            acc.n_total += 1;
            if value {
                acc.n_pred += 1;
            }
        });
        acc
    };
    let mut n_pred = 0u64;
    let mut n_total = 0u64;
    let mut violation = None;
    run_chunked(plan.n_chunks(), resolve_workers(workers), map, |_, acc| {
        n_pred += acc.n_pred;
        n_total += acc.n_total;
        if violation.is_none() {
            violation = acc.violation;
        }
    });
    if let Some((triple, lambda)) = violation {
        return Err(Error::PredicateNotInvariant { triple, lambda });
    }
    Ok((n_pred, n_total))
}

/// Fixed scaling samples for the invariance spot check.
fn spot_check_lambdas(ctx: &GlobalFieldCtx) -> Vec<FieldElem> {
    match ctx {
        GlobalFieldCtx::Rationals => {
            let rat = |n: i64, d: i64| {
                FieldElem::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
            };
            vec![rat(-1, 1), rat(2, 1), rat(1, 2), rat(-3, 2), rat(5, 1)]
        }
        GlobalFieldCtx::FunctionField { q } => {
            let q = *q;
            let mut lams: Vec<FieldElem> =
                (2..q.min(6)).map(|c| ctx.from_integer(c as i64)).collect();
            lams.push(FieldElem::FuncField(RatFunc::from_poly(Poly::var(q))));
            lams.push(ctx.from_integer(-1));
            lams
        }
    }
}

/// Visits one chunk's canonical triples as field-element triples.
pub(crate) fn visit_chunk_triples<F: FnMut(WeightedTriple)>(
    plan: &ScanPlan,
    chunk: usize,
    mut f: F,
) {
    match plan {
        ScanPlan::Rationals(s) => s.scan_chunk(chunk, |x0, x1, x2| {
            let t = WeightedTriple::from_integers(&GlobalFieldCtx::Rationals, [x0, x1, x2])
                .expect("scan emits nonzero triples");
            f(t);
        }),
        ScanPlan::FunctionField(s) => s.scan_chunk(chunk, |p0, p1, p2| {
            let elem = |p: &Poly| FieldElem::FuncField(RatFunc::from_poly(p.clone()));
            let t = WeightedTriple::new(elem(p0), elem(p1), elem(p2))
                .expect("scan emits nonzero triples");
            f(t);
        }),
    }
}
