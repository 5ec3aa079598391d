fn main() {
    std::process::exit(qlucas::cli::main());
}
