fn main() {
    std::process::exit(specgraph::cli::run(std::env::args_os()));
}
