fn main() {
    std::process::exit(foxwright::cli::run());
}
