use clap::Parser;

fn main() {
    let cli = tropsev::cli::Cli::parse();
    if let Err(e) = tropsev::cli::run(&cli) {
        eprintln!("tropsev: {e}");
        std::process::exit(e.exit_code());
    }
}
