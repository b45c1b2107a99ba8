use std::process::ExitCode;

fn main() -> ExitCode {
    hydrocomplex::cli::run()
}
