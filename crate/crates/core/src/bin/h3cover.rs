fn main() {
    std::process::exit(h3cover::cli::run(std::env::args_os()));
}
