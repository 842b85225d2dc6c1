fn main() {
    std::process::exit(beurling::cli::run(std::env::args()));
}
