fn main() {
    std::process::exit(harmonic_verify::cli::run(std::env::args_os()));
}
