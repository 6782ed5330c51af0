fn main() {
    std::process::exit(chebylift::cli::run(std::env::args_os()));
}
