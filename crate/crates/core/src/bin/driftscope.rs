fn main() -> std::process::ExitCode {
    driftscope::cli::main_with(std::env::args_os())
}
