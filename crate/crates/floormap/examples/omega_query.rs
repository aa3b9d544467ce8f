//! Limit sets of planar orbits, by all three routes.
//!
//! The limit set of an orbit is one or two extended lattice points: the even
//! iterates converge to one point, the odd iterates to its coordinate swap.
//! Three independent routes compute it — closed formulas, certified
//! simulation, and a case-table oracle that also names the region the point
//! falls in.
//!
//! Run with `cargo run --example omega_query`.

use floormap::{omega, parse_rational, theorem_omega, Method, Point, TheoremVerdict};

fn query(lambda: &str, x: &str, y: &str) {
    let lambda = parse_rational(lambda).unwrap();
    let z = Point::new(parse_rational(x).unwrap(), parse_rational(y).unwrap());

    let analytic = omega(&lambda, &z, Method::Analytic).unwrap();
    let simulated = omega(&lambda, &z, Method::Simulate).unwrap();
    assert_eq!(analytic, simulated, "the two computed routes always agree");

    print!("lambda = {lambda:>4}, z = {:>12}:  {analytic}", z.to_string());
    match theorem_omega(&lambda, &z) {
        TheoremVerdict::Covered { omega: stated, case_id } => {
            if stated == analytic {
                println!("  [case {case_id}]");
            } else {
                // the one region transcribed with its overclaim: it states
                // both mixed escapes, the orbit realizes exactly one
                println!("  [case {case_id} states {stated}]");
            }
        }
        TheoremVerdict::Uncovered => println!("  [no case applies]"),
    }
}

fn main() {
    query("1/2", "-3/2", "3"); // a 2-cycle between (-1,0) and (0,-1)
    query("1/2", "-30", "-30"); // deep start, same bottom rung
    query("1", "5/2", "-6/5"); // floors alternate with a swap
    query("-1", "23/10", "-2");
    query("-3", "-1", "-2"); // same-sign escape
    query("-2", "1", "-1"); // mixed quadrant: the documented overclaim
    query("-2", "1", "-1/4"); // one trapped coordinate: uncovered
    query("0", "22/7", "-5");
}
