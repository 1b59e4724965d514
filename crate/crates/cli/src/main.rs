fn main() {
    std::process::exit(cascade_lie_cli::run(std::env::args_os()));
}
