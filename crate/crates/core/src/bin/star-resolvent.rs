fn main() {
    std::process::exit(star_resolvent::cli::run(std::env::args_os()));
}
