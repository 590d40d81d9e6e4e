fn main() {
    std::process::exit(sasaki5::cli::main_entry());
}
