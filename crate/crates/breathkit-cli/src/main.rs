fn main() {
    std::process::exit(breathkit_cli::cli::run());
}
