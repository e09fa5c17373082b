fn main() {
    let code = nilalg::cli::run(std::env::args());
    std::process::exit(code);
}
