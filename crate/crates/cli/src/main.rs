use clap::Parser;

fn main() {
    env_logger::Builder::new()
        .filter_level(log::LevelFilter::Warn)
        .format_timestamp(None)
        .init();
    let cli = horocycle_cli::Cli::parse();
    if let Err(e) = horocycle_cli::run(&cli) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
