use std::process::exit;

fn main() {
    let outcome = nashblow::cli::run(std::env::args());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    exit(outcome.exit_code);
}
