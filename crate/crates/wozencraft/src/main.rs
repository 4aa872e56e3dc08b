fn main() {
    std::process::exit(wozencraft::cli::run());
}
