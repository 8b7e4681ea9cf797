use clap::Parser;
use fuzzy_cesaro::cli::{self, Args};

fn main() {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            // usage errors are config errors; --help and --version are not errors
            std::process::exit(if e.use_stderr() { cli::EXIT_CONFIG } else { cli::EXIT_OK });
        }
    };
    std::process::exit(cli::run(&args));
}
