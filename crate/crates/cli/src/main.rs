use clap::Parser;
use crepant_cli::{render, run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{}", render(&out.document));
            std::process::exit(out.exit_code);
        }
        Err(e) => {
            eprintln!("crepant: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
