fn main() {
    std::process::exit(fracbed::cli::run());
}
