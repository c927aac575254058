fn main() {
    std::process::exit(rackcov::cli::run(std::env::args_os()));
}
