use std::process::ExitCode;

use clap::Parser;
use zksynth::SizeGuard;
use zksynth_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let code = match run(cli, SizeGuard::from_env(), &mut stdout) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    ExitCode::from(code as u8)
}
