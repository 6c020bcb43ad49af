fn main() {
    std::process::exit(flexi::cli::run(std::env::args_os()));
}
