fn main() {
    std::process::exit(levy_passage::cli::run(std::env::args_os()));
}
