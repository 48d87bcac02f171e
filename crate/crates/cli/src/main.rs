mod args;
mod output;
mod reference;
mod run;

use args::{Cli, Command};
use clap::Parser;

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Direct(a) => run::direct(a),
        Command::Sweep(a) => run::sweep(a),
        Command::Asym(a) => run::asym(a),
        Command::Matrix(a) => run::matrix(a),
        Command::Table1(a) => run::table1(a),
        Command::Table2(a) => run::table2(a),
        Command::Table3(a) => run::table3(a),
        Command::Fig2(a) => run::fig2(a),
        Command::Fig3(a) => run::fig3(a),
        Command::Phase(a) => run::phase(a),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
