fn main() {
    std::process::exit(qvars::cli::main_with_args(std::env::args_os()));
}
