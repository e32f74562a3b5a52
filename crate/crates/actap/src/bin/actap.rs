fn main() {
    std::process::exit(actap::cli::main());
}
