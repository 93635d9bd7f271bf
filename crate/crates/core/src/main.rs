fn main() {
    std::process::exit(stabhull::cli::main_with_args(std::env::args_os()));
}
