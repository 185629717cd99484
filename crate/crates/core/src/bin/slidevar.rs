use std::process::ExitCode;

fn main() -> ExitCode {
    slidevar::cli::main_from(std::env::args_os())
}
