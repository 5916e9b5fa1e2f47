fn main() {
    std::process::exit(symtoep::cli::run(std::env::args_os()));
}
