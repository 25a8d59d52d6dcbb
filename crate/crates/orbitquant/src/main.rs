fn main() {
    std::process::exit(orbitquant::cli::main_with_args(std::env::args_os()));
}
