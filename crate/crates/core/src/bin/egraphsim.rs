use std::process::ExitCode;

fn main() -> ExitCode {
    egraphsim::cli::main_with_args(std::env::args_os())
}
