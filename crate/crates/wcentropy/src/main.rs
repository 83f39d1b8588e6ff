use std::process::ExitCode;

fn main() -> ExitCode {
    wcentropy::cli::main_entry()
}
