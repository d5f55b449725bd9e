fn main() {
    std::process::exit(ringgroom_cli::run(std::env::args_os()));
}
