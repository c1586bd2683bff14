fn main() {
    std::process::exit(pysniff::run_main());
}
