//! Command-line front end: orbit traces, fixed-point listings, limit-set
//! queries, verification sweeps, and limit-class region maps.
//!
//! [`run`] is the whole interface — the binary in `main.rs` only forwards
//! `std::env::args` and exits with the returned code. Keeping it a library
//! function with injected output streams makes every behavior, including
//! exit codes, testable in-process.
//!
//! Exit codes: `0` success, `1` usage or I/O error, `2` verification found a
//! genuine mismatch (known discrepancies and coverage gaps do not fail).

use crate::classifier::{omega, theorem_omega, Method, OmegaSet, TheoremVerdict};
use crate::dynamics::{default_max_steps, iterate_orbit, Point, TerminalVerdict};
use crate::numeric::{classify_lambda, parse_rational, Rational};
use crate::verifier::{
    default_verify_budget, verify_fixed_points, verify_omega, verify_period2,
    DiscrepancyReport, GridSpec,
};
use clap::{Arg, ColorChoice, Command};
use num::bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Write;

/// Parses `args` (without the program name) and executes one subcommand,
/// writing results to `stdout` and diagnostics to `stderr`. Returns the
/// process exit code.
pub fn run(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut argv = Vec::with_capacity(args.len() + 1);
    argv.push("floormap".to_string());
    argv.extend(args.iter().cloned());

    let matches = match command().try_get_matches_from(argv) {
        Ok(matches) => matches,
        Err(err) => {
            use clap::error::ErrorKind;
            let rendered = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    1
                }
            };
        }
    };

    let outcome = match matches.subcommand() {
        Some(("fixed-points", sub)) => cmd_fixed_points(sub),
        Some(("orbit", sub)) => cmd_orbit(sub),
        Some(("omega", sub)) => cmd_omega(sub),
        Some(("verify", sub)) => cmd_verify(sub),
        Some(("region-map", sub)) => cmd_region_map(sub),
        _ => unreachable!("a subcommand is required"),
    };

    match outcome {
        Ok((text, code)) => {
            if stdout.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            code
        }
        Err(message) => {
            let _ = writeln!(stderr, "error: {message}");
            1
        }
    }
}

fn command() -> Command {
    let lambda_arg = Arg::new("lambda")
        .long("lambda")
        .value_name("R")
        .required(true)
        .allow_hyphen_values(true)
        .help("parameter as an exact rational: -2, 3/4, 0.25, ...");
    let point_arg = Arg::new("point")
        .long("point")
        .value_name("X,Y")
        .required(true)
        .allow_hyphen_values(true)
        .help("starting point, two rationals separated by a comma");

    Command::new("floormap")
        .about("exact orbits, limit sets, and cross-checks for the planar map (x, y) -> (floor(lambda*y), floor(lambda*x))")
        .color(ColorChoice::Never)
        .subcommand_required(true)
        .arg_required_else_help(true)
        .subcommand(
            Command::new("fixed-points")
                .about("list the fixed points of the map for one parameter")
                .arg(lambda_arg.clone()),
        )
        .subcommand(
            Command::new("orbit")
                .about("trace one orbit until its long-run behavior is certified")
                .arg(lambda_arg.clone())
                .arg(point_arg.clone())
                .arg(
                    Arg::new("max-steps")
                        .long("max-steps")
                        .value_name("N")
                        .value_parser(clap::value_parser!(usize))
                        .help("step budget (default: sized from the input; floor of 8)"),
                )
                .arg(
                    Arg::new("format")
                        .long("format")
                        .value_parser(["text", "jsonl"])
                        .default_value("text"),
                ),
        )
        .subcommand(
            Command::new("omega")
                .about("print the limit set of one orbit")
                .arg(lambda_arg.clone())
                .arg(point_arg)
                .arg(
                    Arg::new("method")
                        .long("method")
                        .value_parser(["analytic", "simulate", "theorem"])
                        .default_value("analytic")
                        .help("closed formulas, certified simulation, or the case-table oracle"),
                ),
        )
        .subcommand(
            Command::new("verify")
                .about("cross-check all routes over an exact grid and report discrepancies")
                .arg(
                    Arg::new("lambdas")
                        .long("lambdas")
                        .value_name("L1,L2,...")
                        .required(true)
                        .allow_hyphen_values(true)
                        .help("comma-separated list of parameters"),
                )
                .arg(
                    Arg::new("window")
                        .long("window")
                        .value_name("LO:HI")
                        .required(true)
                        .allow_hyphen_values(true)
                        .help("square window for the limit-set grid, both axes"),
                )
                .arg(
                    Arg::new("step")
                        .long("step")
                        .value_name("S")
                        .required(true)
                        .allow_hyphen_values(true)
                        .help("grid spacing, a positive rational"),
                )
                .arg(
                    Arg::new("fixed-window")
                        .long("fixed-window")
                        .value_name("N")
                        .value_parser(clap::value_parser!(u32))
                        .default_value("50")
                        .help("lattice radius for the fixed-point and period-two scans"),
                )
                .arg(
                    Arg::new("max-steps")
                        .long("max-steps")
                        .value_name("N")
                        .value_parser(clap::value_parser!(usize))
                        .help("simulation budget per orbit (default: sized from the grid; floor of 8)"),
                )
                .arg(
                    Arg::new("out")
                        .long("out")
                        .value_name("FILE")
                        .help("write the report here instead of stdout"),
                ),
        )
        .subcommand(
            Command::new("region-map")
                .about("rasterize the plane by limit-set class into CSV or PGM")
                .arg(lambda_arg)
                .arg(
                    Arg::new("window")
                        .long("window")
                        .value_name("XLO:XHI,YLO:YHI")
                        .required(true)
                        .allow_hyphen_values(true),
                )
                .arg(
                    Arg::new("resolution")
                        .long("resolution")
                        .value_name("NXxNY")
                        .required(true)
                        .help("sample counts per axis, at least 2x2"),
                )
                .arg(
                    Arg::new("out")
                        .long("out")
                        .value_parser(["csv", "pgm"])
                        .required(true)
                        .help("output format; a legend sidecar is always written"),
                )
                .arg(
                    Arg::new("out-prefix")
                        .long("out-prefix")
                        .value_name("PREFIX")
                        .default_value("region_map"),
                ),
        )
}

type CmdResult = Result<(String, i32), String>;

fn flag_rational(sub: &clap::ArgMatches, id: &str) -> Result<Rational, String> {
    let raw = sub.get_one::<String>(id).expect("flag is required or defaulted");
    parse_rational(raw).map_err(|e| format!("invalid --{id} '{raw}': {e}"))
}

fn flag_point(sub: &clap::ArgMatches) -> Result<Point, String> {
    let raw = sub.get_one::<String>("point").expect("flag is required");
    let (x, y) = split_two(raw, ',')
        .ok_or_else(|| format!("invalid --point '{raw}': expected X,Y"))?;
    Ok(Point::new(
        parse_rational(x).map_err(|e| format!("invalid --point x '{x}': {e}"))?,
        parse_rational(y).map_err(|e| format!("invalid --point y '{y}': {e}"))?,
    ))
}

fn split_two(raw: &str, sep: char) -> Option<(&str, &str)> {
    let mut parts = raw.splitn(2, sep);
    let a = parts.next()?;
    let b = parts.next()?;
    (!b.contains(sep)).then_some((a, b))
}

fn cmd_fixed_points(sub: &clap::ArgMatches) -> CmdResult {
    let lambda = flag_rational(sub, "lambda")?;
    let mut text = String::new();
    let _ = writeln!(text, "{}", crate::classifier::fixed_points(&lambda));
    let _ = writeln!(text, "parameter class: {}", classify_lambda(&lambda));
    Ok((text, 0))
}

fn cmd_orbit(sub: &clap::ArgMatches) -> CmdResult {
    let lambda = flag_rational(sub, "lambda")?;
    let z = flag_point(sub)?;
    let max_steps = sub
        .get_one::<usize>("max-steps")
        .map(|n| (*n).max(8))
        .unwrap_or_else(|| default_max_steps(&lambda, &z));
    let trace = iterate_orbit(&lambda, &z, max_steps);

    let mut text = String::new();
    match sub.get_one::<String>("format").map(String::as_str) {
        Some("jsonl") => {
            for (j, p) in trace.steps.iter().enumerate() {
                let _ = writeln!(text, "{{\"step\":{},\"x\":{},\"y\":{}}}", j + 1, p.x, p.y);
            }
            let verdict = match &trace.verdict {
                TerminalVerdict::FixedPoint { point, entry_step } => format!(
                    "{{\"verdict\":\"fixed-point\",\"point\":[{},{}],\"entry_step\":{entry_step}}}",
                    point.x, point.y
                ),
                TerminalVerdict::TwoCycle { first, second, entry_step } => format!(
                    "{{\"verdict\":\"two-cycle\",\"first\":[{},{}],\"second\":[{},{}],\"entry_step\":{entry_step}}}",
                    first.x, first.y, second.x, second.y
                ),
                TerminalVerdict::Divergent { x_limits, y_limits } => format!(
                    "{{\"verdict\":\"divergent\",\"x_tails\":[\"{}\",\"{}\"],\"y_tails\":[\"{}\",\"{}\"]}}",
                    x_limits.even, x_limits.odd, y_limits.even, y_limits.odd
                ),
                TerminalVerdict::BudgetExhausted => format!(
                    "{{\"verdict\":\"budget-exhausted\",\"steps_used\":{}}}",
                    trace.steps_used
                ),
            };
            text.push_str(&verdict);
            text.push('\n');
        }
        _ => {
            let _ = writeln!(text, "start: {}", trace.start);
            for (j, p) in trace.steps.iter().enumerate() {
                let _ = writeln!(text, "step {}: {}", j + 1, p);
            }
            let _ = writeln!(text, "verdict: {}", trace.verdict);
            let _ = writeln!(text, "steps used: {}", trace.steps_used);
        }
    }
    Ok((text, 0))
}

fn cmd_omega(sub: &clap::ArgMatches) -> CmdResult {
    let lambda = flag_rational(sub, "lambda")?;
    let z = flag_point(sub)?;
    let mut text = String::new();
    match sub.get_one::<String>("method").map(String::as_str) {
        Some("theorem") => match theorem_omega(&lambda, &z) {
            TheoremVerdict::Covered { omega, case_id } => {
                let _ = writeln!(text, "{omega}");
                let _ = writeln!(text, "case: {case_id}");
            }
            TheoremVerdict::Uncovered => {
                let _ = writeln!(text, "uncovered");
            }
        },
        method => {
            let method =
                if method == Some("simulate") { Method::Simulate } else { Method::Analytic };
            let set = omega(&lambda, &z, method).map_err(|e| e.to_string())?;
            let _ = writeln!(text, "{set}");
        }
    }
    Ok((text, 0))
}

fn cmd_verify(sub: &clap::ArgMatches) -> CmdResult {
    let raw = sub.get_one::<String>("lambdas").expect("flag is required");
    let mut lambdas = Vec::new();
    for part in raw.split(',') {
        lambdas
            .push(parse_rational(part).map_err(|e| format!("invalid --lambdas '{part}': {e}"))?);
    }
    let window = sub.get_one::<String>("window").expect("flag is required");
    let (lo, hi) = split_two(window, ':')
        .ok_or_else(|| format!("invalid --window '{window}': expected LO:HI"))?;
    let lo = parse_rational(lo).map_err(|e| format!("invalid --window lo '{lo}': {e}"))?;
    let hi = parse_rational(hi).map_err(|e| format!("invalid --window hi '{hi}': {e}"))?;
    let step = flag_rational(sub, "step")?;
    let fixed_window = *sub.get_one::<u32>("fixed-window").expect("defaulted");

    let has_minus_one = lambdas.iter().any(|l| *l == Rational::from_integer(BigInt::from(-1)));
    let grid = GridSpec::new(lambdas.clone(), lo, hi, step).map_err(|e| e.to_string())?;
    let budget = sub
        .get_one::<usize>("max-steps")
        .map(|n| (*n).max(8))
        .unwrap_or_else(|| default_verify_budget(&grid));

    let mut reports = vec![verify_omega(&grid, budget)];
    for lambda in &lambdas {
        reports.push(verify_fixed_points(lambda, fixed_window));
    }
    if has_minus_one {
        reports.push(verify_period2(fixed_window));
    }

    let rendered: Vec<String> = reports.iter().map(DiscrepancyReport::render).collect();
    let full = rendered.join("\n");
    let mismatches: usize = reports.iter().map(DiscrepancyReport::mismatch_count).sum();
    let code = if mismatches > 0 { 2 } else { 0 };

    match sub.get_one::<String>("out") {
        Some(path) => {
            std::fs::write(path, &full).map_err(|e| format!("failed to write {path}: {e}"))?;
            let known: usize =
                reports.iter().map(DiscrepancyReport::known_discrepancy_count).sum();
            let uncovered: usize = reports.iter().map(DiscrepancyReport::uncovered_count).sum();
            let mut text = String::new();
            let _ = writeln!(text, "report written to {path}");
            let _ = writeln!(
                text,
                "mismatch {mismatches}, known discrepancy {known}, uncovered {uncovered}"
            );
            Ok((text, code))
        }
        None => Ok((full, code)),
    }
}

fn cmd_region_map(sub: &clap::ArgMatches) -> CmdResult {
    let lambda = flag_rational(sub, "lambda")?;
    let window = sub.get_one::<String>("window").expect("flag is required");
    let ((x_lo, x_hi), (y_lo, y_hi)) = parse_window_pair(window)?;
    let resolution = sub.get_one::<String>("resolution").expect("flag is required");
    let (nx, ny) = parse_resolution(resolution)?;
    let format = match sub.get_one::<String>("out").map(String::as_str) {
        Some("pgm") => MapFormat::Pgm,
        _ => MapFormat::Csv,
    };
    let prefix = sub.get_one::<String>("out-prefix").expect("defaulted");

    let spec = RegionMapSpec::new(lambda, x_lo, x_hi, y_lo, y_hi, nx, ny, format)
        .map_err(|e| e.to_string())?;
    let output = render_region_map(&spec);

    let map_path = format!("{prefix}.{}", output.map_ext);
    let legend_path = format!("{prefix}.legend.csv");
    std::fs::write(&map_path, &output.map)
        .map_err(|e| format!("failed to write {map_path}: {e}"))?;
    std::fs::write(&legend_path, &output.legend)
        .map_err(|e| format!("failed to write {legend_path}: {e}"))?;

    let mut text = String::new();
    let _ = writeln!(
        text,
        "wrote {map_path} and {legend_path} ({} classes)",
        output.classes
    );
    Ok((text, 0))
}

fn parse_window_pair(raw: &str) -> Result<((Rational, Rational), (Rational, Rational)), String> {
    let err = || format!("invalid --window '{raw}': expected XLO:XHI,YLO:YHI");
    let (x_part, y_part) = split_two(raw, ',').ok_or_else(err)?;
    let parse_range = |part: &str| -> Result<(Rational, Rational), String> {
        let (lo, hi) = split_two(part, ':').ok_or_else(err)?;
        Ok((
            parse_rational(lo).map_err(|e| format!("invalid --window bound '{lo}': {e}"))?,
            parse_rational(hi).map_err(|e| format!("invalid --window bound '{hi}': {e}"))?,
        ))
    };
    Ok((parse_range(x_part)?, parse_range(y_part)?))
}

fn parse_resolution(raw: &str) -> Result<(usize, usize), String> {
    let err = || format!("invalid --resolution '{raw}': expected NXxNY, e.g. 200x200");
    let (nx, ny) = split_two(raw, 'x').ok_or_else(err)?;
    let nx: usize = nx.parse().map_err(|_| err())?;
    let ny: usize = ny.parse().map_err(|_| err())?;
    Ok((nx, ny))
}

/// Output format of a region map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapFormat {
    Csv,
    Pgm,
}

/// A validated region-map request: parameter, window, resolution, format.
#[derive(Debug, Clone)]
pub struct RegionMapSpec {
    pub lambda: Rational,
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub y_lo: Rational,
    pub y_hi: Rational,
    pub nx: usize,
    pub ny: usize,
    pub format: MapFormat,
}

/// Rejected [`RegionMapSpec`] parameters.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegionMapError {
    #[error("window is empty on the {axis} axis: {lo} must be strictly below {hi}")]
    EmptyWindow { axis: &'static str, lo: Rational, hi: Rational },
    #[error("resolution must be at least 2x2, got {nx}x{ny}")]
    TooCoarse { nx: usize, ny: usize },
}

impl RegionMapSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        lambda: Rational,
        x_lo: Rational,
        x_hi: Rational,
        y_lo: Rational,
        y_hi: Rational,
        nx: usize,
        ny: usize,
        format: MapFormat,
    ) -> Result<Self, RegionMapError> {
        if x_lo >= x_hi {
            return Err(RegionMapError::EmptyWindow { axis: "x", lo: x_lo, hi: x_hi });
        }
        if y_lo >= y_hi {
            return Err(RegionMapError::EmptyWindow { axis: "y", lo: y_lo, hi: y_hi });
        }
        if nx < 2 || ny < 2 {
            return Err(RegionMapError::TooCoarse { nx, ny });
        }
        Ok(RegionMapSpec { lambda, x_lo, x_hi, y_lo, y_hi, nx, ny, format })
    }

    /// Exact sample coordinates `lo + i * (hi - lo) / (n - 1)` — rational, so
    /// boundary lines like `k/lambda` land on samples when the spacing
    /// divides the window.
    fn axis(lo: &Rational, hi: &Rational, n: usize) -> Vec<Rational> {
        let span = hi - lo;
        let denom = Rational::from_integer(BigInt::from(n as u64 - 1));
        (0..n)
            .map(|i| lo + &span * Rational::from_integer(BigInt::from(i as u64)) / &denom)
            .collect()
    }

    pub fn x_samples(&self) -> Vec<Rational> {
        Self::axis(&self.x_lo, &self.x_hi, self.nx)
    }

    pub fn y_samples(&self) -> Vec<Rational> {
        Self::axis(&self.y_lo, &self.y_hi, self.ny)
    }
}

/// Deterministic small integer ids for limit-set classes: distinct canonical
/// keys (the `Display` rendering) sorted lexicographically and numbered from
/// zero.
pub fn assign_class_ids(sets: &[OmegaSet]) -> BTreeMap<String, usize> {
    let keys: BTreeSet<String> = sets.iter().map(|s| s.to_string()).collect();
    keys.into_iter().enumerate().map(|(id, key)| (key, id)).collect()
}

/// A rendered region map plus its mandatory legend sidecar.
#[derive(Debug, Clone)]
pub struct RegionMapOutput {
    pub map: String,
    pub legend: String,
    pub map_ext: &'static str,
    pub classes: usize,
}

/// Computes the limit-set class of every sample point (analytically — no
/// budgets involved) and renders the requested format. Pure, so identical
/// specs produce byte-identical files.
pub fn render_region_map(spec: &RegionMapSpec) -> RegionMapOutput {
    let xs = spec.x_samples();
    let ys = spec.y_samples();

    // classes[i][j] is the limit set at (xs[i], ys[j])
    let classes: Vec<Vec<OmegaSet>> = xs
        .iter()
        .map(|x| {
            ys.iter()
                .map(|y| {
                    omega(&spec.lambda, &Point::new(x.clone(), y.clone()), Method::Analytic)
                        .expect("the analytic route is total")
                })
                .collect()
        })
        .collect();

    let flat: Vec<OmegaSet> = classes.iter().flatten().cloned().collect();
    let ids = assign_class_ids(&flat);
    let class_count = ids.len();

    match spec.format {
        MapFormat::Csv => {
            let mut map = String::from("i,j,x,y,class_id,class_key\n");
            for (i, x) in xs.iter().enumerate() {
                for (j, y) in ys.iter().enumerate() {
                    let key = classes[i][j].to_string();
                    let id = ids[&key];
                    let _ = writeln!(map, "{i},{j},{x},{y},{id},\"{key}\"");
                }
            }
            let mut legend = String::from("class_id,class_key\n");
            for (key, id) in &ids {
                let _ = writeln!(legend, "{id},\"{key}\"");
            }
            RegionMapOutput { map, legend, map_ext: "csv", classes: class_count }
        }
        MapFormat::Pgm => {
            let gray = |id: usize| -> usize {
                if class_count <= 1 {
                    0
                } else {
                    id * 255 / (class_count - 1)
                }
            };
            let mut map = String::from("P2\n# limit-set classes; grays in the legend sidecar\n");
            let _ = writeln!(map, "{} {}", spec.nx, spec.ny);
            map.push_str("255\n");
            // raster order: top row first, i.e. y = y_hi down to y_lo
            for jj in 0..spec.ny {
                let j = spec.ny - 1 - jj;
                let mut line = String::new();
                for (i, _) in xs.iter().enumerate() {
                    let token = gray(ids[&classes[i][j].to_string()]).to_string();
                    if line.is_empty() {
                        line.push_str(&token);
                    } else if line.len() + 1 + token.len() > 70 {
                        map.push_str(&line);
                        map.push('\n');
                        line = token;
                    } else {
                        line.push(' ');
                        line.push_str(&token);
                    }
                }
                map.push_str(&line);
                map.push('\n');
            }
            let mut legend = String::from("class_id,gray,class_key\n");
            for (key, id) in &ids {
                let _ = writeln!(legend, "{id},{},\"{key}\"", gray(*id));
            }
            RegionMapOutput { map, legend, map_ext: "pgm", classes: class_count }
        }
    }
}
