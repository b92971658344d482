fn main() {
    std::process::exit(ahilb::cli::main_with_args(std::env::args_os()));
}
