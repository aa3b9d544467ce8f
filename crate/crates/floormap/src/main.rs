use std::io::{self, Write};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = floormap::cli::run(&args, &mut io::stdout(), &mut io::stderr());
    let _ = io::stdout().flush();
    std::process::exit(code);
}
