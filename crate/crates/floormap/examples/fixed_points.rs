//! The fixed-point set of the map in every parameter regime, cross-checked
//! against a brute-force lattice scan.
//!
//! Run with `cargo run --example fixed_points`.

use floormap::{classify_lambda, fixed_points, parse_rational, verify_fixed_points};

fn main() {
    for lambda in ["-3", "-1", "-1/2", "0", "1/2", "3/4", "1", "3/2", "3"] {
        let lambda = parse_rational(lambda).unwrap();
        println!("lambda = {lambda}  ({})", classify_lambda(&lambda));
        println!("  fixed set: {}", fixed_points(&lambda));

        // scan every lattice point with |x|, |y| <= 40 and compare; any
        // difference in either direction would show up as report entries
        let report = verify_fixed_points(&lambda, 40);
        println!(
            "  lattice scan: {} found, {} discrepancies",
            report.stat("fixed_points_found").unwrap(),
            report.entries().len()
        );
    }
}
