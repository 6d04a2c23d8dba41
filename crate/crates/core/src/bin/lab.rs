fn main() {
    std::process::exit(dilute_lab::cli::run(std::env::args_os()));
}
