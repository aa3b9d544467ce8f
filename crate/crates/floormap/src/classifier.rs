//! Closed-form answers: limit sets, fixed-point sets, and the case-table
//! oracle.
//!
//! The planar map's long-run behaviour decomposes coordinatewise (see
//! [`crate::dynamics`]), so the heart of this module is
//! [`parity_limits_analytic`] — a per-regime formula for the even/odd tail
//! limits of one scalar orbit — and the assembly rule that turns two such
//! answers into the limit set of a planar orbit.
//!
//! [`theorem_omega`] is a second, deliberately independent route to the same
//! answer: a literal transcription of the closed-form case table for the
//! three parameter families (case ids `T1.*` for `lambda < 0`, `T2.*` for
//! `0 < lambda < 1`, `T3.*` for `lambda >= 1`). It is kept region-by-region,
//! quirks included, so the verifier can compare it against both the analytic
//! formulas and raw simulation rather than have all three collapse into one
//! code path.

use crate::dynamics::{
    parity_limits_simulated, step, step_lattice, BudgetError, LatticePoint, ParityLimits,
    Point,
};
use crate::numeric::{classify_lambda, floor_scale, ExtInt, ParamClass, Rational};
use num::bigint::BigInt;
use num::{Signed, Zero};
use std::fmt;

/// A lattice point with coordinates extended by the two infinities — the
/// points limit sets are made of.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtLatticePoint {
    pub x: ExtInt,
    pub y: ExtInt,
}

impl ExtLatticePoint {
    pub fn new(x: impl Into<ExtInt>, y: impl Into<ExtInt>) -> Self {
        ExtLatticePoint { x: x.into(), y: y.into() }
    }

    pub fn from_lattice(p: &LatticePoint) -> Self {
        ExtLatticePoint::new(p.x.clone(), p.y.clone())
    }
}

impl fmt::Display for ExtLatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// The limit set of a planar orbit: one or two extended lattice points, kept
/// in canonical form (sorted lexicographically, duplicates merged). Its
/// `Display` rendering — e.g. `{(-1,0),(0,-1)}` — doubles as the canonical
/// class key for region maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaSet {
    points: Vec<ExtLatticePoint>,
}

impl OmegaSet {
    pub fn singleton(p: ExtLatticePoint) -> Self {
        OmegaSet { points: vec![p] }
    }

    pub fn from_pair(a: ExtLatticePoint, b: ExtLatticePoint) -> Self {
        if a == b {
            OmegaSet { points: vec![a] }
        } else if a < b {
            OmegaSet { points: vec![a, b] }
        } else {
            OmegaSet { points: vec![b, a] }
        }
    }

    pub fn points(&self) -> &[ExtLatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a limit set always holds one or two points
    }

    pub fn contains(&self, p: &ExtLatticePoint) -> bool {
        self.points.iter().any(|q| q == p)
    }
}

impl fmt::Display for OmegaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Which route computes a limit set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Per-regime closed formulas; total and instant.
    Analytic,
    /// Orbit simulation with certified stopping rules.
    Simulate,
}

/// The set of fixed points of the planar map, which is finite except at the
/// two parameters where an entire lattice line freezes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixSet {
    /// Finitely many fixed points, listed in ascending order.
    Finite(Vec<LatticePoint>),
    /// `lambda = 1`: every diagonal lattice point `(n, n)`.
    AllDiagonal,
    /// `lambda = -1`: every antidiagonal lattice point `(n, -n)`.
    AllAntiDiagonal,
}

impl fmt::Display for FixSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixSet::Finite(points) => {
                f.write_str("{")?;
                for (i, p) in points.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "({},{})", p.x, p.y)?;
                }
                f.write_str("}")
            }
            FixSet::AllDiagonal => f.write_str("diagonal lattice {(m,m) | m in Z}"),
            FixSet::AllAntiDiagonal => f.write_str("antidiagonal lattice {(m,-m) | m in Z}"),
        }
    }
}

/// Answer of the case-table oracle for one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoremVerdict {
    /// Some printed region contains the point; carries the region's stated
    /// limit set and the case id of the first match in printed order.
    Covered { omega: OmegaSet, case_id: &'static str },
    /// No printed region applies (`lambda = 0` has no table; the
    /// `lambda < -1` table leaves gaps, see [`theorem_cases`]).
    Uncovered,
}

/// Even/odd tail limits of the scalar orbit of `t`, by closed formula.
///
/// Chasing a couple of exact comparisons replaces the whole simulation:
/// `fv = floor(lambda*t)` pins the ladder rung for the contracting regimes,
/// and sign information decides the escaping ones.
pub fn parity_limits_analytic(lambda: &Rational, t: &Rational) -> ParityLimits {
    match classify_lambda(lambda) {
        ParamClass::Zero => ParityLimits::both(BigInt::zero()),
        ParamClass::One => ParityLimits::both(t.floor().to_integer()),
        ParamClass::NegShallow => ParityLimits::both(BigInt::zero()),
        ParamClass::NegOne => {
            // The doubled map is the ceiling, so the even tail settles on
            // ceil(t) and the odd tail on its negative.
            let c = t.ceil().to_integer();
            ParityLimits::new(ExtInt::Finite(c.clone()), ExtInt::Finite(-c))
        }
        ParamClass::NegSteep => {
            let fv = floor_scale(lambda, t);
            if fv.is_zero() {
                // t in (1/lambda, 0]: one step lands on the fixed point 0
                ParityLimits::both(BigInt::zero())
            } else if t.is_positive() {
                ParityLimits::new(ExtInt::PlusInf, ExtInt::MinusInf)
            } else {
                ParityLimits::new(ExtInt::MinusInf, ExtInt::PlusInf)
            }
        }
        ParamClass::PosShallow(m) => {
            if !t.is_negative() {
                return ParityLimits::both(BigInt::zero());
            }
            let fv = floor_scale(lambda, t); // <= -1 here
            let bottom = -m;
            ParityLimits::both(if fv >= bottom { fv } else { bottom })
        }
        ParamClass::PosSteep(m) => {
            if t.is_negative() {
                return ParityLimits::new(ExtInt::MinusInf, ExtInt::MinusInf);
            }
            let fv = floor_scale(lambda, t); // >= 0 here
            if fv < m {
                ParityLimits::both(fv)
            } else {
                ParityLimits::new(ExtInt::PlusInf, ExtInt::PlusInf)
            }
        }
    }
}

/// Assembles a planar limit set from the two coordinatewise tail answers.
///
/// Even planar iterates converge to `(even_x, even_y)`; odd iterates swap the
/// coordinates, so they converge to `(odd_y, odd_x)`. The limit set is those
/// two points, merged when they coincide.
pub fn assemble_omega(x_limits: &ParityLimits, y_limits: &ParityLimits) -> OmegaSet {
    OmegaSet::from_pair(
        ExtLatticePoint::new(x_limits.even.clone(), y_limits.even.clone()),
        ExtLatticePoint::new(y_limits.odd.clone(), x_limits.odd.clone()),
    )
}

/// The limit set of the orbit of `z`, by the chosen method with the default
/// step budget. Only `Method::Simulate` can fail, and only if the budget is
/// somehow insufficient.
pub fn omega(lambda: &Rational, z: &Point, method: Method) -> Result<OmegaSet, BudgetError> {
    omega_with_budget(lambda, z, method, crate::dynamics::default_max_steps(lambda, z))
}

/// [`omega`] with an explicit simulation budget (ignored by the analytic
/// method, which needs none).
pub fn omega_with_budget(
    lambda: &Rational,
    z: &Point,
    method: Method,
    max_steps: usize,
) -> Result<OmegaSet, BudgetError> {
    let (lx, ly) = match method {
        Method::Analytic => (
            parity_limits_analytic(lambda, &z.x),
            parity_limits_analytic(lambda, &z.y),
        ),
        Method::Simulate => (
            parity_limits_simulated(lambda, &z.x, max_steps)?,
            parity_limits_simulated(lambda, &z.y, max_steps)?,
        ),
    };
    Ok(assemble_omega(&lx, &ly))
}

/// All fixed points of the planar map. Any fixed point has floor values for
/// coordinates, hence lives on the lattice; off the two special parameters
/// the set is the diagonal ladder of scalar fixed points.
pub fn fixed_points(lambda: &Rational) -> FixSet {
    let diag = |n: BigInt| LatticePoint { x: n.clone(), y: n };
    match classify_lambda(lambda) {
        ParamClass::NegOne => FixSet::AllAntiDiagonal,
        ParamClass::One => FixSet::AllDiagonal,
        ParamClass::Zero | ParamClass::NegSteep | ParamClass::NegShallow => {
            FixSet::Finite(vec![diag(BigInt::zero())])
        }
        ParamClass::PosShallow(m) => {
            let mut points = Vec::new();
            let mut k = -m;
            while !k.is_positive() {
                points.push(diag(k.clone()));
                k += 1u8;
            }
            FixSet::Finite(points)
        }
        ParamClass::PosSteep(m) => {
            let mut points = Vec::new();
            let mut k = BigInt::zero();
            while k < m {
                points.push(diag(k.clone()));
                k += 1u8;
            }
            FixSet::Finite(points)
        }
    }
}

/// The case-table oracle: the first printed region containing `z`, with its
/// stated limit set, or `Uncovered` when no region applies.
///
/// One entry is transcribed as stated even though it overclaims:
/// `"T1.3-mixed"` (mixed-sign quadrants for `lambda < -1`) states a two-point
/// limit set, while orbits there realize exactly one of the two points. It is
/// kept verbatim so the verifier can surface the difference as a known
/// discrepancy instead of silently papering over it.
pub fn theorem_omega(lambda: &Rational, z: &Point) -> TheoremVerdict {
    match theorem_cases(lambda, z).into_iter().next() {
        Some((case_id, omega)) => TheoremVerdict::Covered { omega, case_id },
        None => TheoremVerdict::Uncovered,
    }
}

/// Every printed region of the case table containing `z`, in printed order.
/// [`theorem_omega`] takes the first; the verifier's disjointness scan counts
/// them all (a few regions of the `T2` table genuinely overlap where their
/// conclusions agree).
pub fn theorem_cases(lambda: &Rational, z: &Point) -> Vec<(&'static str, OmegaSet)> {
    match classify_lambda(lambda) {
        ParamClass::Zero => Vec::new(),
        ParamClass::NegShallow => {
            vec![("T1.1", OmegaSet::singleton(ExtLatticePoint::new(0, 0)))]
        }
        ParamClass::NegOne => {
            // Integer points orbit within {z, image(z)}; everything else is
            // absorbed into that pair after one step.
            let first = step(lambda, z);
            let set = if z.x.is_integer() && z.y.is_integer() {
                OmegaSet::from_pair(
                    ExtLatticePoint::new(z.x.to_integer(), z.y.to_integer()),
                    ExtLatticePoint::from_lattice(&first),
                )
            } else {
                let second = step_lattice(lambda, &first);
                OmegaSet::from_pair(
                    ExtLatticePoint::from_lattice(&first),
                    ExtLatticePoint::from_lattice(&second),
                )
            };
            vec![("T1.2", set)]
        }
        ParamClass::NegSteep => neg_steep_cases(lambda, z),
        ParamClass::PosShallow(m) => pos_shallow_cases(lambda, z, &m),
        ParamClass::One => {
            let fx = z.x.floor().to_integer();
            let fy = z.y.floor().to_integer();
            vec![(
                "T3.0",
                OmegaSet::from_pair(
                    ExtLatticePoint::new(fx.clone(), fy.clone()),
                    ExtLatticePoint::new(fy, fx),
                ),
            )]
        }
        ParamClass::PosSteep(m) => pos_steep_cases(lambda, z, &m),
    }
}

/// `lambda < -1`. The table splits the plane by the trap box
/// `U = (1/lambda, 0] x (1/lambda, 0]` and the four strict quadrants. The
/// escape claims assume each coordinate individually lies outside the trap
/// interval, so a point with exactly one coordinate inside it falls through
/// every region and comes back `Uncovered` (its orbit mixes one frozen and
/// one escaping coordinate — a shape the table never states).
fn neg_steep_cases(lambda: &Rational, z: &Point) -> Vec<(&'static str, OmegaSet)> {
    // t in (1/lambda, 0] <=> floor(lambda*t) = 0
    let trapped_x = floor_scale(lambda, &z.x).is_zero();
    let trapped_y = floor_scale(lambda, &z.y).is_zero();
    let mut cases = Vec::new();
    if trapped_x && trapped_y {
        cases.push(("T1.3-box", OmegaSet::singleton(ExtLatticePoint::new(0, 0))));
    }
    if !trapped_x && !trapped_y {
        let (px, py) = (z.x.is_positive(), z.y.is_positive());
        let (nx, ny) = (z.x.is_negative(), z.y.is_negative());
        if (px && py) || (nx && ny) {
            cases.push((
                "T1.3",
                OmegaSet::from_pair(
                    ExtLatticePoint::new(ExtInt::PlusInf, ExtInt::PlusInf),
                    ExtLatticePoint::new(ExtInt::MinusInf, ExtInt::MinusInf),
                ),
            ));
        } else if (px && ny) || (nx && py) {
            cases.push((
                "T1.3-mixed",
                OmegaSet::from_pair(
                    ExtLatticePoint::new(ExtInt::PlusInf, ExtInt::MinusInf),
                    ExtLatticePoint::new(ExtInt::MinusInf, ExtInt::PlusInf),
                ),
            ));
        }
        // an axis point outside the box matches no quadrant: uncovered
    }
    cases
}

/// `0 < lambda < 1` with ladder index `m`: six printed regions built from the
/// rung intervals `[k/lambda, (k+1)/lambda)`, `k = -1, ..., -m`, which tile
/// `[-m/lambda, 0)`, plus the half-line below them and the nonnegatives.
fn pos_shallow_cases(lambda: &Rational, z: &Point, m: &BigInt) -> Vec<(&'static str, OmegaSet)> {
    let bottom = -m.clone();
    // Some(k) when t sits in rung k's interval, i.e. floor(lambda*t) = k >= -m
    let rung = |t: &Rational| -> Option<BigInt> {
        if t.is_negative() {
            let fv = floor_scale(lambda, t);
            (fv >= bottom).then_some(fv)
        } else {
            None
        }
    };
    // t < (-m+1)/lambda <=> floor(lambda*t) <= -m
    let at_or_below_bottom = |t: &Rational| floor_scale(lambda, t) <= bottom;
    // t < -m/lambda <=> floor(lambda*t) < -m
    let below_ladder = |t: &Rational| floor_scale(lambda, t) < bottom;
    let nonneg = |t: &Rational| !t.is_negative();

    let zero = || ExtInt::finite(0);
    let fin = |n: &BigInt| ExtInt::Finite(n.clone());
    let swap_pair = |a: ExtInt, b: ExtInt| {
        OmegaSet::from_pair(
            ExtLatticePoint::new(a.clone(), b.clone()),
            ExtLatticePoint::new(b, a),
        )
    };

    let (rx, ry) = (rung(&z.x), rung(&z.y));
    let mut cases = Vec::new();

    // (1) both coordinates nonnegative: everything contracts to the origin
    if nonneg(&z.x) && nonneg(&z.y) {
        cases.push(("T2.1", OmegaSet::singleton(ExtLatticePoint::new(0, 0))));
    }
    // (2) one coordinate on a rung, the other nonnegative
    if let (Some(k), true) = (&rx, nonneg(&z.y)) {
        cases.push(("T2.2", swap_pair(fin(k), zero())));
    } else if let (true, Some(k)) = (nonneg(&z.x), &ry) {
        cases.push(("T2.2", swap_pair(fin(k), zero())));
    }
    // (3) one coordinate below the ladder, the other nonnegative
    if (below_ladder(&z.x) && nonneg(&z.y)) || (below_ladder(&z.y) && nonneg(&z.x)) {
        cases.push(("T2.3", swap_pair(fin(&bottom), zero())));
    }
    // (4) both at or below the bottom rung: the orbit climbs to (-m, -m)
    if at_or_below_bottom(&z.x) && at_or_below_bottom(&z.y) {
        cases.push((
            "T2.4",
            OmegaSet::singleton(ExtLatticePoint::new(fin(&bottom), fin(&bottom))),
        ));
    }
    // (5) both on rungs
    if let (Some(k), Some(p)) = (&rx, &ry) {
        cases.push(("T2.5", swap_pair(fin(k), fin(p))));
    }
    // (6) one at or below the bottom rung, the other on a rung
    if let (true, Some(k)) = (at_or_below_bottom(&z.x), &ry) {
        cases.push(("T2.6", swap_pair(fin(k), fin(&bottom))));
    } else if let (Some(k), true) = (&rx, at_or_below_bottom(&z.y)) {
        cases.push(("T2.6", swap_pair(fin(k), fin(&bottom))));
    }
    cases
}

/// `lambda > 1` with ladder index `m`: six printed regions from the rung
/// intervals `[k/lambda, (k+1)/lambda)`, `k = 0, ..., m-1` (tiling
/// `[0, m/lambda)`), the escape half-line above them, and the negatives.
/// Unlike the other families this table covers the whole plane.
fn pos_steep_cases(lambda: &Rational, z: &Point, m: &BigInt) -> Vec<(&'static str, OmegaSet)> {
    let rung = |t: &Rational| -> Option<BigInt> {
        if t.is_negative() {
            None
        } else {
            let fv = floor_scale(lambda, t);
            (fv < *m).then_some(fv)
        }
    };
    // t >= m/lambda <=> floor(lambda*t) >= m
    let high = |t: &Rational| !t.is_negative() && floor_scale(lambda, t) >= *m;
    let neg = |t: &Rational| t.is_negative();

    let fin = |n: &BigInt| ExtInt::Finite(n.clone());
    let swap_pair = |a: ExtInt, b: ExtInt| {
        OmegaSet::from_pair(
            ExtLatticePoint::new(a.clone(), b.clone()),
            ExtLatticePoint::new(b, a),
        )
    };

    let (rx, ry) = (rung(&z.x), rung(&z.y));
    let mut cases = Vec::new();

    // (1) one coordinate on a rung, the other negative (escaping down)
    if let (Some(k), true) = (&rx, neg(&z.y)) {
        cases.push(("T3.1", swap_pair(fin(k), ExtInt::MinusInf)));
    } else if let (true, Some(k)) = (neg(&z.x), &ry) {
        cases.push(("T3.1", swap_pair(fin(k), ExtInt::MinusInf)));
    }
    // (2) one negative, one high: opposite escapes
    if (neg(&z.x) && high(&z.y)) || (neg(&z.y) && high(&z.x)) {
        cases.push(("T3.2", swap_pair(ExtInt::PlusInf, ExtInt::MinusInf)));
    }
    // (3) both on rungs
    if let (Some(k), Some(p)) = (&rx, &ry) {
        cases.push(("T3.3", swap_pair(fin(k), fin(p))));
    }
    // (4) one on a rung, one high
    if let (Some(k), true) = (&rx, high(&z.y)) {
        cases.push(("T3.4", swap_pair(fin(k), ExtInt::PlusInf)));
    } else if let (true, Some(k)) = (high(&z.x), &ry) {
        cases.push(("T3.4", swap_pair(fin(k), ExtInt::PlusInf)));
    }
    // (5) both negative
    if neg(&z.x) && neg(&z.y) {
        cases.push((
            "T3.5",
            OmegaSet::singleton(ExtLatticePoint::new(ExtInt::MinusInf, ExtInt::MinusInf)),
        ));
    }
    // (6) both high
    if high(&z.x) && high(&z.y) {
        cases.push((
            "T3.6",
            OmegaSet::singleton(ExtLatticePoint::new(ExtInt::PlusInf, ExtInt::PlusInf)),
        ));
    }
    cases
}
