//! The seven parameter regimes and how behavior changes across them.
//!
//! The regime of `lambda` determines everything qualitative about the map:
//! how many fixed points it has, whether orbits contract, cycle, or escape,
//! and which closed-form case table applies. For the contracting and
//! expanding families the regime carries an index `m` — the number of
//! nonzero fixed values of the scalar map — with exact rational bracket
//! bounds.
//!
//! Run with `cargo run --example parameter_regimes`.

use floormap::{classify_lambda, fixed_points, omega, parse_rational, Method, Point};

fn main() {
    let samples = [
        "-5", "-3/2", "-1", "-2/3", "-1/100", "0", "1/100", "1/2", "2/3", "3/4", "9/10", "1",
        "11/10", "3/2", "2", "100",
    ];

    println!("{:>8}  {:<26} {:<34} omega at (-4, 7/2)", "lambda", "regime", "fixed set");
    for raw in samples {
        let lambda = parse_rational(raw).unwrap();
        let z = Point::new(parse_rational("-4").unwrap(), parse_rational("7/2").unwrap());
        let w = omega(&lambda, &z, Method::Analytic).unwrap();
        println!(
            "{raw:>8}  {:<26} {:<34} {w}",
            classify_lambda(&lambda).to_string(),
            fixed_points(&lambda).to_string(),
        );
    }
}
