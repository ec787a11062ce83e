mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.command.common().format;
    let (value, code) = match commands::run(&cli.command) {
        Ok(out) => (out.report, if out.finding { 1 } else { 0 }),
        Err(err) => {
            eprintln!("error: {err}");
            (err.to_json(), 2)
        }
    };
    let text = match format {
        Format::Json => output::render_json(&value),
        Format::Text => output::render_text(&value),
    };
    println!("{}", text.trim_end());
    ExitCode::from(code)
}
