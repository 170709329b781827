fn main() {
    std::process::exit(descent_kit::run(std::env::args_os()));
}
