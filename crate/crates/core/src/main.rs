fn main() {
    std::process::exit(bruno::cli::run(std::env::args_os()));
}
