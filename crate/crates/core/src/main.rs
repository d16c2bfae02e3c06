fn main() {
    std::process::exit(ramsey_lab::cli::run());
}
