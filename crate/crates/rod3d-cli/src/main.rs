use clap::Parser;
use rod3d_cli::cli::{Cli, Command};
use rod3d_cli::commands;
use rod3d_cli::config::Defaults;

fn main() {
    let cli = Cli::parse();
    let result = Defaults::load(cli.config.as_deref()).and_then(|cfg| match &cli.command {
        Command::Critical(args) => commands::critical::run(args, &cfg),
        Command::Modes(args) => commands::modes::run(args, &cfg),
        Command::Gb(args) => commands::gb::run(args, &cfg),
        Command::Quartic(args) => commands::quartic::run(args, &cfg),
        Command::Simulate(args) => commands::simulate::run(args, &cfg),
        Command::Separatrix(args) => commands::separatrix::run(args, &cfg),
    });
    if let Err(e) = result {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}
