fn main() {
    std::process::exit(schur::cli::main_with_args(std::env::args_os()));
}
