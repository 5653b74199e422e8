fn main() {
    std::process::exit(knotcolour::cli::main());
}
