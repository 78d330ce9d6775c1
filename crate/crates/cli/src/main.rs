use std::process::ExitCode;

fn main() -> ExitCode {
    let code = fslib_cli::dispatch(std::env::args_os(), &mut std::io::stderr());
    ExitCode::from(code as u8)
}
