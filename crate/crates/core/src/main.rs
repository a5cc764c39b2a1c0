fn main() {
    std::process::exit(rankext::cli::run(std::env::args_os()));
}
