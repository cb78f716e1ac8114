fn main() {
    std::process::exit(horizonq::cli::dispatch(std::env::args_os()));
}
