fn main() {
    std::process::exit(hardylamb_cli::run(std::env::args_os()));
}
