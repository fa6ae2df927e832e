fn main() {
    std::process::exit(primeinfo_cli::run_cli(std::env::args_os()));
}
