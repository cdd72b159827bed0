fn main() {
    std::process::exit(sturm::cli::run());
}
