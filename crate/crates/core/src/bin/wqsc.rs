fn main() {
    std::process::exit(wqsc::cli::main_exit_code());
}
