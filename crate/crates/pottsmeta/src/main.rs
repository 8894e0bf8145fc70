fn main() {
    std::process::exit(pottsmeta::cli::run(std::env::args()));
}
