use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = kenmotsu_cli::run(std::env::args_os());
    let mut stream: Box<dyn Write> =
        if code == kenmotsu_cli::EXIT_USAGE { Box::new(std::io::stderr()) } else { Box::new(std::io::stdout()) };
    let _ = stream.write_all(output.as_bytes());
    ExitCode::from(code as u8)
}
