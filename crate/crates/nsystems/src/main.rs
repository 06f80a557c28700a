fn main() {
    std::process::exit(nsystems::cli::run());
}
