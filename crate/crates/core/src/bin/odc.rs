fn main() {
    std::process::exit(odc::cli::run(std::env::args_os()));
}
