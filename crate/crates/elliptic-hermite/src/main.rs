use std::process::ExitCode;

fn main() -> ExitCode {
    elliptic_hermite::cli::main()
}
