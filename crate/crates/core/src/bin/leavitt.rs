use std::process::ExitCode;

fn main() -> ExitCode {
    let report = leavitt::cli::run_command(std::env::args_os());
    if report.code >= leavitt::cli::EXIT_USAGE {
        eprint!("{}", report.text);
    } else {
        print!("{}", report.text);
    }
    ExitCode::from(report.code as u8)
}
