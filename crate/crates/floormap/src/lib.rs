//! Exact orbits and limit sets for the planar floor map
//! `A(x, y) = (floor(lambda*y), floor(lambda*x))` over the rationals.
//!
//! Everything is computed with exact arithmetic — arbitrary-precision
//! rationals in, lattice points (possibly with `+inf`/`-inf` coordinates)
//! out. The map's behavior decomposes coordinatewise: even iterates of `A`
//! act like the scalar map `f(t) = floor(lambda*t)` applied twice to each
//! coordinate, and odd iterates additionally swap them. That decomposition
//! shapes the crate:
//!
//! - [`numeric`]: exact `floor(lambda * x)`, parameter-regime
//!   classification, rational parsing;
//! - [`dynamics`]: orbit iteration with certified stopping rules — every
//!   verdict (fixed point, 2-cycle, divergence) is backed by a finite check;
//! - [`classifier`]: closed-form limit sets, fixed-point sets, and an
//!   independent case-table oracle kept deliberately separate so the two can
//!   be compared;
//! - [`verifier`]: exhaustive cross-checks of all routes over exact grids,
//!   with deterministic discrepancy reports;
//! - [`cli`]: the command-line front end, including limit-class region maps
//!   in CSV and PGM.
//!
//! The `examples/` directory is the guided tour: one runnable program per
//! capability (`cargo run --example orbit_trace`, etc.). The `floormap`
//! binary exposes the same functionality as subcommands.

pub mod classifier;
pub mod cli;
pub mod dynamics;
pub mod numeric;
pub mod verifier;

pub use classifier::{
    assemble_omega, fixed_points, omega, omega_with_budget, parity_limits_analytic,
    theorem_cases, theorem_omega, ExtLatticePoint, FixSet, Method, OmegaSet, TheoremVerdict,
};
pub use dynamics::{
    default_max_steps, default_max_steps_scalar, iterate_orbit, parity_limits_simulated,
    step, step_lattice, LatticePoint, OrbitTrace, ParityLimits, Point, TerminalVerdict,
};
pub use num::BigInt;
pub use numeric::{
    classify_lambda, floor_scale, floor_scale_int, parse_rational, ExtInt, ParamClass,
    ParseRationalError, Rational,
};
pub use verifier::{
    default_verify_budget, verify_fixed_points, verify_omega, verify_period2,
    DiscrepancyReport, Entry, GridError, GridSpec, Tag,
};

#[cfg(test)]
pub(crate) mod testutil {
    use crate::numeric::Rational;

    pub fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    pub fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }
}
