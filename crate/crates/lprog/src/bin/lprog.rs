use std::process::ExitCode;

fn main() -> ExitCode {
    lprog::cli::run()
}
