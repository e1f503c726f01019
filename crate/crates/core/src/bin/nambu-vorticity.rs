fn main() -> std::process::ExitCode {
    let code = nambu_vorticity::cli::main_with_args(std::env::args_os());
    std::process::ExitCode::from(code as u8)
}
