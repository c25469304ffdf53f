fn main() {
    std::process::exit(polyrook::cli::run(std::env::args_os()));
}
