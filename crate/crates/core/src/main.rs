fn main() {
    std::process::exit(special_birational::cli::run(std::env::args_os()));
}
