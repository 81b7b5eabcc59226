fn main() {
    std::process::exit(quatlin_cli::run());
}
