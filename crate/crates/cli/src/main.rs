use std::panic;
use std::process::ExitCode;

/// Panics are bugs, not user errors; they get their own exit code so
/// scripting can tell them apart from bad input (1) and "No" (2).
fn main() -> ExitCode {
    panic::set_hook(Box::new(|info| {
        let payload = info
            .payload()
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| info.payload().downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unexpected panic".to_string());
        eprintln!("internal error: {payload}");
    }));
    match panic::catch_unwind(|| factorum_cli::app::run(std::env::args_os())) {
        Ok(code) => ExitCode::from(code as u8),
        Err(_) => ExitCode::from(factorum_cli::app::EXIT_INTERNAL as u8),
    }
}
