fn main() {
    std::process::exit(nullframe_cli::run(std::env::args_os()));
}
