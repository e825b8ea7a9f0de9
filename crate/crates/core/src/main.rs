fn main() -> std::process::ExitCode {
    coalg::cli::run(std::env::args_os())
}
