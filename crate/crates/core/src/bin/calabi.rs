fn main() {
    std::process::exit(calabi_core::cli::run_with_args(std::env::args_os().collect()));
}
