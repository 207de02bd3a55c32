fn main() {
    std::process::exit(crosslab::cli::run_from(std::env::args_os()));
}
