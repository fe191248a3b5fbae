fn main() {
    std::process::exit(pendnet::cli::main_entry());
}
