use std::io::IsTerminal;
use std::process::ExitCode;

use orbifold_index::cli;

fn main() -> ExitCode {
    if let Err(e) = cli::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(cli::EXIT_USAGE as u8);
    }
    let json_default = !std::io::stdout().is_terminal();
    let code = cli::run(std::env::args_os(), json_default, &mut std::io::stdout().lock(), &mut std::io::stderr());
    ExitCode::from(code as u8)
}
