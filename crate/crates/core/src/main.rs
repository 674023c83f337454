fn main() {
    std::process::exit(stratavol::cli::main());
}
