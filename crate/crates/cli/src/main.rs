use clap::Parser;

fn main() {
    let cli = schwarz_cli::Cli::parse();
    let code = schwarz_cli::run(&cli, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
