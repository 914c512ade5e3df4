mod args;
mod commands;
mod output;

use clap::Parser;

fn main() {
    let cli = match args::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(f) = commands::run(cli) {
        eprintln!("error: {}", f.message());
        std::process::exit(f.code());
    }
}
