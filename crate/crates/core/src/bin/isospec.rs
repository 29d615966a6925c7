fn main() {
    std::process::exit(isospec::cli::main_with_args(std::env::args_os()));
}
