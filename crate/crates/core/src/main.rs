fn main() {
    std::process::exit(csa_witness::cli::run(std::env::args_os()));
}
