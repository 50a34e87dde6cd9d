fn main() {
    let args: Vec<String> = std::env::args().collect();
    let (code, report) = igwreath::cli::run(&args);
    if code >= 2 {
        eprint!("{report}");
    } else {
        print!("{report}");
    }
    std::process::exit(code);
}
