use clap::Parser;
use toroid::cli::{execute, exit_code, Args, JobConfig};

fn main() {
    let args = Args::parse();
    let code = match JobConfig::from_args(args) {
        Ok(cfg) => execute(&cfg),
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    std::process::exit(code);
}
