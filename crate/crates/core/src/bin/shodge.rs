fn main() {
    std::process::exit(shodge::cli_main());
}
