use clap::Parser;
use monocms_cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
