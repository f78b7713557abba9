fn main() {
    std::process::exit(cwth_cli::run_cli(std::env::args_os()));
}
