fn main() {
    std::process::exit(repfactor::cli::main_from_env());
}
