fn main() {
    std::process::exit(ambientflow::cli::main_with_args(std::env::args_os()));
}
