fn main() {
    std::process::exit(floquet_clifford::cli::main_with_args(std::env::args_os()));
}
