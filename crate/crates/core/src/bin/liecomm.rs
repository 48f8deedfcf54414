fn main() {
    std::process::exit(liecomm::cli::run(std::env::args_os()));
}
