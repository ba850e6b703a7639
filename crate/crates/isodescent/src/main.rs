use clap::Parser;
use isodescent::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
