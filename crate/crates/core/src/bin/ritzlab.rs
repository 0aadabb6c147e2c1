use std::io;
use std::process::ExitCode;

use ritzlab::cli::{cache::Cache, run};

fn main() -> ExitCode {
    let cache = Cache::from_env();
    let code = run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock(), Some(&cache));
    ExitCode::from(code as u8)
}
