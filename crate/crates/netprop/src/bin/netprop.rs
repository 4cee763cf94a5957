use clap::Parser;
use netprop::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("netprop: {e}");
        std::process::exit(e.exit_code());
    }
}
