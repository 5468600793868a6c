use std::panic;

fn main() {
    let code = panic::catch_unwind(|| hsgraph_cli::commands::main_with(std::env::args_os()))
        .unwrap_or(hsgraph_cli::ExitCode::Internal as i32);
    std::process::exit(code);
}
