fn main() {
    std::process::exit(colorswitch::cli::main_with(std::env::args()));
}
