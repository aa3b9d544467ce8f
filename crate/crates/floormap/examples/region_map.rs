//! Rasterize the plane by limit-set class and write CSV + PGM files.
//!
//! Every sample point is an exact rational, classified analytically; class
//! ids come from sorting the canonical set renderings, so repeated runs are
//! byte-identical. Writes `region_map_demo.{csv,pgm}` and their legends to
//! the current directory.
//!
//! Run with `cargo run --example region_map`.

use floormap::cli::{render_region_map, MapFormat, RegionMapSpec};
use floormap::parse_rational;

fn main() {
    let spec = |format| {
        RegionMapSpec::new(
            parse_rational("3/4").unwrap(),
            parse_rational("-6").unwrap(),
            parse_rational("1").unwrap(),
            parse_rational("-6").unwrap(),
            parse_rational("1").unwrap(),
            60,
            60,
            format,
        )
        .unwrap()
    };

    let csv = render_region_map(&spec(MapFormat::Csv));
    std::fs::write("region_map_demo.csv", &csv.map).unwrap();
    std::fs::write("region_map_demo.legend.csv", &csv.legend).unwrap();

    let pgm = render_region_map(&spec(MapFormat::Pgm));
    std::fs::write("region_map_demo.pgm", &pgm.map).unwrap();
    std::fs::write("region_map_demo.pgm.legend.csv", &pgm.legend).unwrap();

    println!(
        "wrote region_map_demo.csv and region_map_demo.pgm ({} limit-set classes)",
        csv.classes
    );
    println!("legend:");
    for line in csv.legend.lines().skip(1) {
        println!("  {line}");
    }
}
