fn main() {
    std::process::exit(qconst::cli::run());
}
