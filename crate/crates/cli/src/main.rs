use clap::Parser;
use norden_cli::{run, CliInvocation};

fn main() {
    let inv = CliInvocation::parse();
    std::process::exit(run(&inv));
}
