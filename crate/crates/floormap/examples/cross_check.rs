//! A full verification sweep, run programmatically.
//!
//! Builds the same grid the `verify` subcommand uses, runs all three
//! limit-set routes on every cell, and prints the findings. The interesting
//! part is what it finds at steep negative parameters: the case table's
//! mixed-quadrant entry overclaims (a known discrepancy), and points with
//! exactly one coordinate in the trap interval are not covered at all.
//!
//! Run with `cargo run --example cross_check`.

use floormap::{
    default_verify_budget, parse_rational, verify_omega, verify_period2, GridSpec, Rational,
};

fn main() {
    let lambdas: Vec<Rational> = ["-2", "-1", "-1/2", "1/2", "1", "3/2", "2"]
        .iter()
        .map(|s| parse_rational(s).unwrap())
        .collect();
    let grid = GridSpec::new(
        lambdas,
        parse_rational("-5").unwrap(),
        parse_rational("5").unwrap(),
        parse_rational("1/4").unwrap(),
    )
    .unwrap();

    let budget = default_verify_budget(&grid);
    let report = verify_omega(&grid, budget);

    println!(
        "checked {} cells with budget {budget}: {} mismatches, {} known discrepancies, {} uncovered",
        report.stat("cells").unwrap(),
        report.mismatch_count(),
        report.known_discrepancy_count(),
        report.uncovered_count(),
    );
    assert!(report.is_clean(), "simulation and formulas must agree everywhere");

    // a few sample findings, straight from the report
    for entry in report.entries().iter().step_by(97).take(5) {
        println!(
            "  {} at lambda = {}, z = ({}, {}): {} vs {}",
            entry.tag, entry.lambda, entry.x, entry.y, entry.value_a, entry.value_b
        );
    }

    // the lambda = -1 involution, checked on the lattice
    let period2 = verify_period2(20);
    println!(
        "period-two check: {} points, {} fixed, {} violations",
        period2.stat("points_checked").unwrap(),
        period2.stat("fixed_points_found").unwrap(),
        period2.entries().len(),
    );
}
