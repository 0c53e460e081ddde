fn main() {
    std::process::exit(ikeda_core::cli::dispatch(std::env::args_os()));
}
