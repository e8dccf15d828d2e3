fn main() {
    std::process::exit(zmc_forge::cli::run(std::env::args_os()));
}
