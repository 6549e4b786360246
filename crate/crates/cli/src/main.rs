fn main() {
    std::process::exit(chaodna::run(std::env::args_os()));
}
