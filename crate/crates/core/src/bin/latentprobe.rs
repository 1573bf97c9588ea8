fn main() {
    std::process::exit(latentprobe::cli::run(std::env::args_os()));
}
