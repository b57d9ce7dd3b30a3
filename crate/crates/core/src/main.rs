fn main() {
    std::process::exit(topobound::cli::main_with_args(std::env::args_os()));
}
