fn main() {
    std::process::exit(lockers::cli::run(std::env::args_os()));
}
