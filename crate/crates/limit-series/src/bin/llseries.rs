fn main() {
    std::process::exit(limit_series::cli::run(std::env::args()));
}
