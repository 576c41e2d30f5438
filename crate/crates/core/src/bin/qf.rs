fn main() {
    std::process::exit(quandle_lab::cli::run(std::env::args_os()));
}
