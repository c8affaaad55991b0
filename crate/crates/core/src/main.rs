fn main() {
    std::process::exit(confrel::cli::run(std::env::args_os()));
}
