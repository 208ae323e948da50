use clap::Parser;
use ringsum_cli::{exit_code, render_text, run, Cli};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            if cli.opts.json {
                println!("{}", serde_json::to_string_pretty(&doc).expect("documents serialize"));
            } else {
                print!("{}", render_text(&doc));
            }
            ExitCode::from(exit_code(&doc) as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
