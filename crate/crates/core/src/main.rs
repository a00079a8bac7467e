fn main() {
    std::process::exit(pvalent::cli::run(std::env::args_os()));
}
