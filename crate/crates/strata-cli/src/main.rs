fn main() {
    std::process::exit(strata_cli::run());
}
