use std::process::ExitCode;

fn main() -> ExitCode {
    fatmod::cli::run()
}
