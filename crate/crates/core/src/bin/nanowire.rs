fn main() {
    std::process::exit(nanowire::cli::main_with_args(std::env::args_os()));
}
