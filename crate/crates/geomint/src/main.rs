fn main() {
    std::process::exit(geomint::cli::run(std::env::args_os()));
}
