use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use flagdirac_cli::{run, Cli, EXIT_INVALID};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(outcome.render(cli.json).as_bytes());
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({"error": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
