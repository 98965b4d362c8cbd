fn main() {
    let (code, text) = mlat_cli::run(std::env::args_os());
    if code == mlat_cli::EXIT_USAGE || code == mlat_cli::EXIT_BUDGET {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    std::process::exit(code);
}
