fn main() {
    std::process::exit(equipart_cli::run(std::env::args_os()));
}
