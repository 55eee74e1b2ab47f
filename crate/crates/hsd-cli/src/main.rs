fn main() {
    std::process::exit(hsd_cli::main_with_args(std::env::args_os()));
}
