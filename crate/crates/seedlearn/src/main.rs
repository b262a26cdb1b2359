use clap::Parser;

fn main() {
    let cli = seedlearn::cli::Cli::parse();
    std::process::exit(seedlearn::cli::run(cli));
}
