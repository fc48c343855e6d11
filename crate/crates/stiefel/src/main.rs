fn main() {
    std::process::exit(stiefel::cli::run(std::env::args_os()));
}
