//! Trace a few orbits to their certified verdicts.
//!
//! Every verdict is backed by a finite check: a revisited point proves a
//! fixed point or 2-cycle, and a sign/magnitude criterion proves escape.
//! Run with `cargo run --example orbit_trace`.

use floormap::{iterate_orbit, parse_rational, Point};

fn trace(lambda: &str, x: &str, y: &str) {
    let lambda = parse_rational(lambda).unwrap();
    let z = Point::new(parse_rational(x).unwrap(), parse_rational(y).unwrap());
    let budget = floormap::default_max_steps(&lambda, &z);
    let trace = iterate_orbit(&lambda, &z, budget);

    println!("lambda = {lambda}, start {}", trace.start);
    for (j, p) in trace.steps.iter().enumerate() {
        println!("  step {}: {}", j + 1, p);
    }
    println!("  verdict: {}", trace.verdict);
    println!("  ({} map applications, budget {budget})", trace.steps_used);
    println!();
}

fn main() {
    // contraction onto the origin's ladder
    trace("1/2", "5", "-9");

    // the trap box of a steep negative parameter: one step to the origin
    trace("-2", "-3/10", "-1/4");

    // lambda = -1 sends every point into a 2-cycle (or leaves it fixed)
    trace("-1", "23/10", "-2");

    // steep growth: both coordinates escape, with alternating signs in x
    trace("2", "-1", "3");
}
