use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use vvmf::run::{run, Command, Job, PARSE_ERROR};

/// Exact computations with vector-valued modular functions.
#[derive(Parser, Debug)]
#[command(name = "vvmf", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Input JSON file; `-` or absent reads stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Report destination; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Expansion order M.
    #[arg(long)]
    order: Option<usize>,
    /// Largest pole order of the canonical basis.
    #[arg(long = "max-pole")]
    max_pole: Option<usize>,
    /// Bi-order `Mq,Mz` of the generating-function check.
    #[arg(long = "bi-order", value_parser = parse_pair::<i64>)]
    bi_order: Option<(i64, i64)>,
    /// Sizes of indecomposable blocks, e.g. `1,2`.
    #[arg(long, value_delimiter = ',')]
    block: Option<Vec<usize>>,
    /// Distinguished component for the nonnegativity test.
    #[arg(long)]
    component: Option<usize>,
    /// Components `i,j` of a Λ-shift (one unit moves from j to i).
    #[arg(long, value_parser = parse_pair::<usize>)]
    pair: Option<(usize, usize)>,
    /// Upper bound on every expansion order.
    #[arg(long, env = "VVMF_MAX_ORDER", hide_env_values = true)]
    max_order: Option<usize>,
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected two comma-separated values, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<T>().map_err(|_| format!("bad value {x:?}"));
    Ok((p(a)?, p(b)?))
}

fn read_input(path: &Option<PathBuf>) -> Result<String, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { PARSE_ERROR as u8 } else { 0 });
        }
    };
    let input = match read_input(&cli.input).and_then(|s| serde_json::from_str(&s).map_err(|e| e.to_string())) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("vvmf: cannot read input: {e}");
            return ExitCode::from(PARSE_ERROR as u8);
        }
    };
    let job = Job {
        command: cli.command,
        input,
        order: cli.order,
        max_pole: cli.max_pole,
        bi_order: cli.bi_order,
        block: cli.block,
        component: cli.component,
        pair: cli.pair,
        max_order: cli.max_order,
    };
    let (status, report) = run(&job);
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    match &cli.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("vvmf: cannot write {}: {e}", p.display());
                return ExitCode::from(PARSE_ERROR as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(status as u8)
}
