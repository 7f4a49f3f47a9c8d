fn main() {
    std::process::exit(kirwan::cli::run(std::env::args_os()));
}
