fn main() {
    std::process::exit(ncproj::cli::run());
}
