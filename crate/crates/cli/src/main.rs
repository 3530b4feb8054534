use clap::Parser;

fn main() {
    let cli = torofocal_cli::Cli::parse();
    let code = torofocal_cli::run(&cli, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
