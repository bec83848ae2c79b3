use std::process::ExitCode;

fn main() -> ExitCode {
    cat_lab::cli::run()
}
