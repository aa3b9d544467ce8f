//! Exact orbit iteration for the planar map `(x, y) -> (floor(lambda*y), floor(lambda*x))`.
//!
//! One application of the map lands on the integer lattice, and squaring it
//! decouples the plane into two independent scalar orbits: the even iterates
//! of the planar map carry `(f^s(x0), f^s(y0))` and the odd iterates carry the
//! swapped pair, where `f(t) = floor(lambda*t)`. Everything in this module
//! leans on that decoupling: orbits are tracked as two scalar sequences, and
//! long-run behaviour is certified per coordinate by finite-time rules rather
//! than by watching the orbit "long enough".

use crate::numeric::{
    classify_lambda, floor_scale, floor_scale_int, ExtInt, ParamClass, Rational,
};
use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

/// A rational point in the plane — a starting state for the planar map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An integer point — where every orbit lives from step 1 on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticePoint {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        LatticePoint { x: x.into(), y: y.into() }
    }

    pub fn to_point(&self) -> Point {
        Point::new(
            Rational::from_integer(self.x.clone()),
            Rational::from_integer(self.y.clone()),
        )
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Limits of the even- and odd-indexed tails of one scalar orbit, counted
/// from the start (step 0 is the starting value, so `even` is the limit of
/// steps 0, 2, 4, ...). The tails either both converge to lattice values or
/// both escape; a finite/infinite mix cannot occur.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityLimits {
    pub even: ExtInt,
    pub odd: ExtInt,
}

impl ParityLimits {
    pub fn new(even: ExtInt, odd: ExtInt) -> Self {
        debug_assert_eq!(even.is_finite(), odd.is_finite());
        ParityLimits { even, odd }
    }

    /// Both tails converge to the same value — the orbit hit a fixed point.
    pub fn both(value: BigInt) -> Self {
        ParityLimits { even: ExtInt::Finite(value.clone()), odd: ExtInt::Finite(value) }
    }

    pub fn is_finite(&self) -> bool {
        self.even.is_finite()
    }
}

impl fmt::Display for ParityLimits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(even {}, odd {})", self.even, self.odd)
    }
}

/// How an orbit resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TerminalVerdict {
    /// The orbit reached `point` at step `entry_step` and stays there.
    FixedPoint { point: LatticePoint, entry_step: usize },
    /// From `entry_step` on the orbit alternates `first -> second -> first`.
    /// `first` is the iterate at `entry_step` and `second` its image.
    TwoCycle { first: LatticePoint, second: LatticePoint, entry_step: usize },
    /// At least one coordinate escapes. Carries the even/odd tail limits of
    /// both coordinates (the non-escaping one, if any, has finite limits).
    Divergent { x_limits: ParityLimits, y_limits: ParityLimits },
    /// The step budget ran out before any rule fired. Unreachable with the
    /// default budget; possible with a small caller-chosen one.
    BudgetExhausted,
}

impl fmt::Display for TerminalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TerminalVerdict::FixedPoint { point, entry_step } => {
                write!(f, "fixed point {point} reached at step {entry_step}")
            }
            TerminalVerdict::TwoCycle { first, second, entry_step } => {
                write!(f, "2-cycle between {first} and {second} from step {entry_step}")
            }
            TerminalVerdict::Divergent { x_limits, y_limits } => {
                write!(f, "divergent; x tails {x_limits}, y tails {y_limits}")
            }
            TerminalVerdict::BudgetExhausted => f.write_str("undecided (budget exhausted)"),
        }
    }
}

/// An exact orbit prefix plus its certified verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTrace {
    /// The rational starting point (step 0). Kept apart from `steps` because
    /// it is the only iterate that may live off the lattice.
    pub start: Point,
    /// `steps[j]` is the iterate at step `j + 1`.
    pub steps: Vec<LatticePoint>,
    pub verdict: TerminalVerdict,
    /// Applications of the planar map performed, including the one that
    /// certified the verdict (which is not appended to `steps` when it merely
    /// re-visits a listed point).
    pub steps_used: usize,
}

/// One application of the planar map: `(x, y) -> (floor(lambda*y), floor(lambda*x))`.
pub fn step(lambda: &Rational, z: &Point) -> LatticePoint {
    LatticePoint::new(floor_scale(lambda, &z.y), floor_scale(lambda, &z.x))
}

/// The planar map restricted to the lattice.
pub fn step_lattice(lambda: &Rational, p: &LatticePoint) -> LatticePoint {
    LatticePoint::new(floor_scale_int(lambda, &p.y), floor_scale_int(lambda, &p.x))
}

/// The scalar orbit did not resolve within the step budget. Carries the
/// lattice values seen so far (steps 1 onward). With the default budget this
/// signals a defect, not a slow orbit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("scalar orbit did not resolve within {budget} steps")]
pub struct BudgetError {
    pub budget: usize,
    pub partial: Vec<BigInt>,
}

/// Incremental certifier for the even/odd tail limits of one scalar orbit.
///
/// Feed it the lattice values `f(x0), f^2(x0), ...` in order; it resolves as
/// soon as one of the finite-time rules fires:
///
/// * a repeated value is a fixed point (the map is deterministic, so one
///   repeat pins the whole tail);
/// * a value equal to the one two steps back closes a genuine 2-cycle;
/// * for `lambda < -1`, any nonzero value certifies alternating escape — the
///   sign flips every step and the magnitude grows every two steps, so the
///   sign at the current step parity decides both tails;
/// * for `lambda > 1` with ladder index `m`, a value `>= m` escapes upward
///   (`floor(lambda*n) >= n+1` there) and a negative value escapes downward
///   (`floor(lambda*n) <= n-1`).
struct ParityProbe {
    class: ParamClass,
    prev: Option<BigInt>,
    prev2: Option<BigInt>,
    resolved: Option<ParityLimits>,
}

impl ParityProbe {
    fn new(class: ParamClass) -> Self {
        ParityProbe { class, prev: None, prev2: None, resolved: None }
    }

    fn resolved(&self) -> Option<&ParityLimits> {
        self.resolved.as_ref()
    }

    /// Observe the scalar iterate at `step` (1-based, counted from the
    /// starting value at step 0).
    fn observe(&mut self, step: usize, value: &BigInt) {
        if self.resolved.is_some() {
            return;
        }
        let even_step = step % 2 == 0;
        match &self.class {
            ParamClass::NegSteep => {
                if !value.is_zero() {
                    let positive_on_even = value.is_positive() == even_step;
                    self.resolved = Some(if positive_on_even {
                        ParityLimits::new(ExtInt::PlusInf, ExtInt::MinusInf)
                    } else {
                        ParityLimits::new(ExtInt::MinusInf, ExtInt::PlusInf)
                    });
                    return;
                }
            }
            ParamClass::PosSteep(m) => {
                if value >= m {
                    self.resolved =
                        Some(ParityLimits::new(ExtInt::PlusInf, ExtInt::PlusInf));
                    return;
                }
                if value.is_negative() {
                    self.resolved =
                        Some(ParityLimits::new(ExtInt::MinusInf, ExtInt::MinusInf));
                    return;
                }
            }
            _ => {}
        }
        if self.prev.as_ref() == Some(value) {
            self.resolved = Some(ParityLimits::both(value.clone()));
        } else if self.prev2.as_ref() == Some(value) {
            // value sits on steps of the current parity, prev on the other
            let here = ExtInt::Finite(value.clone());
            let there = ExtInt::Finite(self.prev.clone().expect("prev2 implies prev"));
            self.resolved = Some(if even_step {
                ParityLimits::new(here, there)
            } else {
                ParityLimits::new(there, here)
            });
        }
        self.prev2 = self.prev.take();
        self.prev = Some(value.clone());
    }
}

/// Even/odd tail limits of the scalar orbit `x0, f(x0), f^2(x0), ...` under
/// `f(t) = floor(lambda*t)`, certified by simulation with finite-time rules.
pub fn parity_limits_simulated(
    lambda: &Rational,
    x0: &Rational,
    max_steps: usize,
) -> Result<ParityLimits, BudgetError> {
    let mut probe = ParityProbe::new(classify_lambda(lambda));
    let mut trail = Vec::new();
    if max_steps == 0 {
        return Err(BudgetError { budget: 0, partial: trail });
    }
    let mut value = floor_scale(lambda, x0);
    for s in 1..=max_steps {
        probe.observe(s, &value);
        if let Some(limits) = probe.resolved() {
            return Ok(limits.clone());
        }
        trail.push(value.clone());
        if s < max_steps {
            value = floor_scale_int(lambda, &value);
        }
    }
    Err(BudgetError { budget: max_steps, partial: trail })
}

/// Iterates the planar map from `start` until a verdict is certified or
/// `max_steps` applications have been spent. The returned trace prefix is
/// exact; the verdict is proven, never guessed from "it looks settled".
pub fn iterate_orbit(lambda: &Rational, start: &Point, max_steps: usize) -> OrbitTrace {
    let class = classify_lambda(lambda);
    let mut probe_x = ParityProbe::new(class.clone());
    let mut probe_y = ParityProbe::new(class);
    // Scalar iterates of the two starting coordinates; the planar iterate at
    // step s is (v, u) for odd s and (u, v) for even s.
    let mut u = floor_scale(lambda, &start.x);
    let mut v = floor_scale(lambda, &start.y);
    let mut steps: Vec<LatticePoint> = Vec::new();
    let mut verdict = TerminalVerdict::BudgetExhausted;
    let mut used = 0;
    for s in 1..=max_steps {
        used = s;
        let current = if s % 2 == 1 {
            LatticePoint { x: v.clone(), y: u.clone() }
        } else {
            LatticePoint { x: u.clone(), y: v.clone() }
        };
        if steps.last() == Some(&current) {
            verdict = TerminalVerdict::FixedPoint { point: current, entry_step: s - 1 };
            break;
        }
        if steps.len() >= 2 && steps[steps.len() - 2] == current {
            verdict = TerminalVerdict::TwoCycle {
                first: current,
                second: steps[steps.len() - 1].clone(),
                entry_step: s - 2,
            };
            break;
        }
        probe_x.observe(s, &u);
        probe_y.observe(s, &v);
        steps.push(current);
        if let (Some(lx), Some(ly)) = (probe_x.resolved(), probe_y.resolved()) {
            if !lx.is_finite() || !ly.is_finite() {
                verdict = TerminalVerdict::Divergent {
                    x_limits: lx.clone(),
                    y_limits: ly.clone(),
                };
                break;
            }
        }
        if s < max_steps {
            u = floor_scale_int(lambda, &u);
            v = floor_scale_int(lambda, &v);
        }
    }
    OrbitTrace { start: start.clone(), steps, verdict, steps_used: used }
}

/// Default step budget for a planar orbit: generous slack plus the bit size
/// of the start, scaled by the regime's contraction factor. Transients are
/// logarithmic in the starting magnitude, but the base of that logarithm
/// degrades as |lambda| approaches 1 from below — a parameter like 99/100
/// genuinely needs on the order of 1/(1 - |lambda|) steps per bit, so that
/// factor multiplies in.
pub fn default_max_steps(lambda: &Rational, z: &Point) -> usize {
    budget(lambda, rational_bits(&z.x) + rational_bits(&z.y))
}

/// Default step budget for one scalar orbit; same shape as [`default_max_steps`].
pub fn default_max_steps_scalar(lambda: &Rational, x0: &Rational) -> usize {
    budget(lambda, rational_bits(x0))
}

fn budget(lambda: &Rational, bits: usize) -> usize {
    64usize.saturating_add(contraction_factor(lambda).saturating_mul(bits + 2))
}

fn rational_bits(x: &Rational) -> usize {
    (x.numer().bits() + x.denom().bits()) as usize
}

/// `ceil(1/(1 - |lambda|))` for 0 < |lambda| < 1, else 1. Saturates at
/// `usize::MAX` for parameters absurdly close to 1 — the orbits are then
/// genuinely that slow.
fn contraction_factor(lambda: &Rational) -> usize {
    let a = lambda.abs();
    if a.is_zero() || a >= Rational::one() {
        return 1;
    }
    use num::Integer;
    let f = a.denom().div_ceil(&(a.denom() - a.numer()));
    f.to_usize().unwrap_or(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{int, rat};
    use proptest::prelude::*;

    fn pt(x: Rational, y: Rational) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn step_matches_worked_values() {
        assert_eq!(
            step(&int(-2), &pt(rat(-3, 10), rat(-1, 4))),
            LatticePoint::new(0, 0)
        );
        assert_eq!(
            step(&int(1), &pt(rat(5, 2), rat(-6, 5))),
            LatticePoint::new(-2, 2)
        );
        assert_eq!(step(&int(-1), &pt(int(3), int(-3))), LatticePoint::new(3, -3));
    }

    #[test]
    fn contracting_orbit_settles_on_a_fixed_point() {
        let trace = iterate_orbit(&rat(-1, 2), &pt(rat(73, 10), int(-4)), 100);
        assert_eq!(
            trace.steps,
            vec![
                LatticePoint::new(2, -4),
                LatticePoint::new(2, -1),
                LatticePoint::new(0, -1),
                LatticePoint::new(0, 0),
            ]
        );
        assert_eq!(
            trace.verdict,
            TerminalVerdict::FixedPoint { point: LatticePoint::new(0, 0), entry_step: 4 }
        );
    }

    #[test]
    fn negative_one_orbit_falls_into_a_two_cycle() {
        let trace = iterate_orbit(&int(-1), &pt(rat(23, 10), int(1)), 100);
        assert_eq!(
            trace.verdict,
            TerminalVerdict::TwoCycle {
                first: LatticePoint::new(-1, -3),
                second: LatticePoint::new(3, 1),
                entry_step: 1,
            }
        );
    }

    #[test]
    fn steep_orbit_diverges_with_certified_tails() {
        let trace = iterate_orbit(&int(2), &pt(int(-1), int(3)), 100);
        assert_eq!(
            trace.verdict,
            TerminalVerdict::Divergent {
                x_limits: ParityLimits::new(ExtInt::MinusInf, ExtInt::MinusInf),
                y_limits: ParityLimits::new(ExtInt::PlusInf, ExtInt::PlusInf),
            }
        );
        // The first planar iterate is already enough to certify both tails.
        assert_eq!(trace.steps, vec![LatticePoint::new(6, -2)]);
    }

    #[test]
    fn orbit_starting_on_a_cycle_reports_entry_at_step_one() {
        let trace = iterate_orbit(&int(-1), &pt(int(-1), int(-3)), 100);
        assert_eq!(
            trace.verdict,
            TerminalVerdict::TwoCycle {
                first: LatticePoint::new(3, 1),
                second: LatticePoint::new(-1, -3),
                entry_step: 1,
            }
        );
    }

    #[test]
    fn tiny_budget_exhausts_honestly() {
        let trace = iterate_orbit(&rat(-1, 2), &pt(int(1_000_000), int(-999_999)), 2);
        assert_eq!(trace.verdict, TerminalVerdict::BudgetExhausted);
        assert_eq!(trace.steps_used, 2);
        assert_eq!(trace.steps.len(), 2);

        let err = parity_limits_simulated(&rat(3, 4), &int(-1_000_000), 3).unwrap_err();
        assert_eq!(err.budget, 3);
        assert_eq!(err.partial.len(), 3);
        assert_eq!(err.partial[0], BigInt::from(-750_000));
    }

    #[test]
    fn parity_limits_match_worked_values() {
        assert_eq!(
            parity_limits_simulated(&int(-1), &rat(23, 10), 100).unwrap(),
            ParityLimits::new(ExtInt::finite(3), ExtInt::finite(-3))
        );
        assert_eq!(
            parity_limits_simulated(&rat(3, 4), &int(-10), 100).unwrap(),
            ParityLimits::both(BigInt::from(-3))
        );
        assert_eq!(
            parity_limits_simulated(&int(-2), &int(1), 100).unwrap(),
            ParityLimits::new(ExtInt::PlusInf, ExtInt::MinusInf)
        );
    }

    #[test]
    fn shallow_negative_transient_walks_down_as_expected() {
        // lambda = 3/4 from -10: -8, -6, -5, -4, -3, -3 (then fixed)
        let err = parity_limits_simulated(&rat(3, 4), &int(-10), 5).unwrap_err();
        let expect: Vec<BigInt> =
            [-8, -6, -5, -4, -3].iter().map(|&n| BigInt::from(n)).collect();
        assert_eq!(err.partial, expect);
        assert_eq!(
            parity_limits_simulated(&rat(3, 4), &int(-10), 6).unwrap(),
            ParityLimits::both(BigInt::from(-3))
        );
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-2_000i64..2_000, 1i64..200).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_lambda() -> impl Strategy<Value = Rational> {
        prop_oneof![
            (-30i64..30, 1i64..12).prop_map(|(n, d)| rat(n, d)),
            Just(int(-1)),
            Just(int(0)),
            Just(int(1)),
            Just(rat(-1, 2)),
            Just(rat(3, 4)),
            Just(int(2)),
        ]
    }

    fn scalar_orbit(lambda: &Rational, x0: &Rational, n: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return out;
        }
        let mut value = floor_scale(lambda, x0);
        out.push(value.clone());
        for _ in 1..n {
            value = floor_scale_int(lambda, &value);
            out.push(value.clone());
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        /// Squaring the planar map decouples the coordinates: even steps carry
        /// (f^s(x0), f^s(y0)), odd steps the swapped pair.
        #[test]
        fn planar_iterates_decouple_into_scalar_orbits(
            lam in arb_lambda(),
            x in arb_rational(),
            y in arb_rational(),
        ) {
            let n = 12;
            let trace = iterate_orbit(&lam, &pt(x.clone(), y.clone()), n);
            let fx = scalar_orbit(&lam, &x, trace.steps.len());
            let fy = scalar_orbit(&lam, &y, trace.steps.len());
            for (j, p) in trace.steps.iter().enumerate() {
                let s = j + 1;
                if s % 2 == 0 {
                    prop_assert_eq!(&p.x, &fx[j]);
                    prop_assert_eq!(&p.y, &fy[j]);
                } else {
                    prop_assert_eq!(&p.x, &fy[j]);
                    prop_assert_eq!(&p.y, &fx[j]);
                }
            }
        }

        /// Swapping the starting coordinates swaps every iterate.
        #[test]
        fn swapped_start_swaps_the_image(
            lam in arb_lambda(),
            x in arb_rational(),
            y in arb_rational(),
        ) {
            let a = step(&lam, &pt(x.clone(), y.clone()));
            let b = step(&lam, &pt(y, x));
            prop_assert_eq!(a.x, b.y);
            prop_assert_eq!(a.y, b.x);
        }

        /// At lambda = -1 the doubled scalar map is exactly the ceiling.
        #[test]
        fn doubled_map_at_minus_one_is_ceiling(x in arb_rational()) {
            let lam = int(-1);
            let once = floor_scale(&lam, &x);
            let twice = floor_scale_int(&lam, &once);
            prop_assert_eq!(Rational::from_integer(twice), x.ceil());
        }

        /// The even and odd tails always resolve the same way: both finite or
        /// both infinite.
        #[test]
        fn tail_limits_pair_up(lam in arb_lambda(), x in arb_rational()) {
            let budget = default_max_steps_scalar(&lam, &x);
            let limits = parity_limits_simulated(&lam, &x, budget).unwrap();
            prop_assert_eq!(limits.even.is_finite(), limits.odd.is_finite());
        }

        /// The default budget is always enough: no orbit in range exhausts it.
        #[test]
        fn default_budget_always_resolves(
            lam in arb_lambda(),
            x in arb_rational(),
            y in arb_rational(),
        ) {
            let z = pt(x, y);
            let trace = iterate_orbit(&lam, &z, default_max_steps(&lam, &z));
            prop_assert_ne!(trace.verdict, TerminalVerdict::BudgetExhausted);
        }

        /// A certified fixed point really is fixed, and a certified 2-cycle
        /// really swaps under one more application of the map.
        #[test]
        fn finite_verdicts_are_sound(
            lam in arb_lambda(),
            x in arb_rational(),
            y in arb_rational(),
        ) {
            let z = pt(x, y);
            match iterate_orbit(&lam, &z, default_max_steps(&lam, &z)).verdict {
                TerminalVerdict::FixedPoint { point, .. } => {
                    prop_assert_eq!(step_lattice(&lam, &point), point);
                }
                TerminalVerdict::TwoCycle { first, second, .. } => {
                    prop_assert_ne!(&first, &second);
                    prop_assert_eq!(step_lattice(&lam, &first), second.clone());
                    prop_assert_eq!(step_lattice(&lam, &second), first);
                }
                _ => {}
            }
        }
    }
}
