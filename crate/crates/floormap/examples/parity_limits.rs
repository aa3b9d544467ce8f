//! Even/odd tail limits of scalar orbits: closed formulas vs simulation.
//!
//! A scalar orbit under `f(t) = floor(lambda*t)` need not converge — it may
//! end up alternating between two values, or escape with alternating signs —
//! but its even- and odd-indexed tails always have limits (possibly
//! infinite). The crate computes them two independent ways; this example
//! shows both answers side by side.
//!
//! Run with `cargo run --example parity_limits`.

use floormap::{
    default_max_steps_scalar, parity_limits_analytic, parity_limits_simulated, parse_rational,
};

fn main() {
    let samples = [
        ("-1", "23/10"),  // ceiling pairs: even tail 3, odd tail -3
        ("3/4", "-10"),   // climbs the ladder to the bottom rung -3
        ("-2", "1"),      // escapes with alternating signs
        ("-2", "-1/4"),   // trap interval: one step to 0
        ("5/4", "2"),     // rung value 2 is fixed for lambda = 5/4
        ("3", "-1/5"),    // negative start under steep growth
    ];

    for (lambda, t) in samples {
        let lambda = parse_rational(lambda).unwrap();
        let t = parse_rational(t).unwrap();
        let analytic = parity_limits_analytic(&lambda, &t);
        let budget = default_max_steps_scalar(&lambda, &t);
        let simulated = parity_limits_simulated(&lambda, &t, budget).unwrap();
        assert_eq!(analytic, simulated);
        println!("lambda = {lambda:>5}, t = {t:>5}:  {analytic}");
    }
    println!("\nanalytic and simulated tails agree on all samples");
}
