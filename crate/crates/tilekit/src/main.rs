fn main() {
    std::process::exit(tilekit::cli::run());
}
