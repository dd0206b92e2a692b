fn main() {
    std::process::exit(rdv_cli::commands::run());
}
