fn main() {
    std::process::exit(detrep::cli::run());
}
