use std::io::{stderr, stdout};
use std::process::ExitCode;

use msym_core::Engine;

fn main() -> ExitCode {
    let format = std::env::var("MSYM_FORMAT").ok();
    let code = msym_cli::run(
        std::env::args_os(),
        format.as_deref(),
        &Engine::default(),
        &mut stdout().lock(),
        &mut stderr().lock(),
    );
    ExitCode::from(code)
}
