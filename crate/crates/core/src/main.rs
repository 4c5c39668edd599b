fn main() {
    std::process::exit(s2landau::cli::run(std::env::args_os()));
}
