use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use trisect_cli::{
    cmd_braid, cmd_cover, cmd_fixture, cmd_invariants, cmd_pullback, cmd_verify_examples, pullback_diagram, unreadable,
    Input, RunReport,
};

#[derive(Parser)]
#[command(name = "trisect", version, about = "Trisection diagrams, branched covers and braid monodromy")]
struct Cli {
    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a diagram and compute (g; k1,k2,k3), H1, H2 rank and χ.
    Invariants { diagram: PathBuf },
    /// Build a branched cover and tabulate lifts of the handle curves.
    Cover { spec: PathBuf },
    /// Lift a diagram with curve words along a branched cover.
    Pullback {
        diagram: PathBuf,
        spec: PathBuf,
        /// Branch locus: singular models and the normalization's χ.
        locus: Option<PathBuf>,
        /// Write the lifted diagram JSON here.
        #[arg(long, value_name = "PATH")]
        diagram_out: Option<PathBuf>,
    },
    /// Identify a braid closure. Accepts a braid word, a descriptor JSON
    /// string, or a file containing either.
    Braid {
        input: String,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Run the built-in example regression suite.
    VerifyExamples,
    /// Print a built-in fixture (or one part of it) as JSON.
    Fixture {
        name: String,
        #[arg(long)]
        part: Option<String>,
    },
}

fn read(path: &Path) -> std::io::Result<Input> {
    Ok(Input::new(path.display().to_string(), std::fs::read(path)?))
}

fn run(command: &Command) -> RunReport {
    match command {
        Command::Invariants { diagram } => match read(diagram) {
            Ok(d) => cmd_invariants(&d),
            Err(e) => unreadable("invariants", &diagram.display().to_string(), &e),
        },
        Command::Cover { spec } => match read(spec) {
            Ok(s) => cmd_cover(&s),
            Err(e) => unreadable("cover", &spec.display().to_string(), &e),
        },
        Command::Pullback { diagram, spec, locus, .. } => {
            let inputs = (|| -> Result<_, (String, std::io::Error)> {
                let d = read(diagram).map_err(|e| (diagram.display().to_string(), e))?;
                let s = read(spec).map_err(|e| (spec.display().to_string(), e))?;
                let l = match locus {
                    Some(p) => Some(read(p).map_err(|e| (p.display().to_string(), e))?),
                    None => None,
                };
                Ok((d, s, l))
            })();
            match inputs {
                Ok((d, s, l)) => cmd_pullback(&d, &s, l.as_ref()),
                Err((what, e)) => unreadable("pullback", &what, &e),
            }
        }
        Command::Braid { input, strands } => {
            let path = Path::new(input);
            let source = if path.is_file() {
                match read(path) {
                    Ok(i) => i,
                    Err(e) => return unreadable("braid", input, &e),
                }
            } else {
                Input::new("braid", input.as_bytes())
            };
            cmd_braid(&source, *strands)
        }
        Command::VerifyExamples => cmd_verify_examples(),
        Command::Fixture { name, part } => cmd_fixture(name, part.as_deref()),
    }
}

fn write(path: &Path, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli.command);
    let raw_fixture = matches!(cli.command, Command::Fixture { .. }) && report.exit_code == 0;
    if cli.json {
        print!("{}", report.to_json());
    } else if raw_fixture {
        println!("{}", serde_json::to_string_pretty(&report.results).expect("fixture serializes"));
    } else {
        print!("{}", report.to_text());
    }
    let mut code = report.exit_code;
    let mut outputs = Vec::new();
    if let Some(p) = &cli.out {
        outputs.push((p.clone(), report.to_json()));
    }
    if let Command::Pullback { diagram_out: Some(p), .. } = &cli.command {
        if let Some(d) = pullback_diagram(&report) {
            let mut s = serde_json::to_string_pretty(d).expect("diagram serializes");
            s.push('\n');
            outputs.push((p.clone(), s));
        }
    }
    for (p, s) in outputs {
        if let Err(e) = write(&p, &s) {
            eprintln!("error: {e}");
            code = code.max(1);
        }
    }
    ExitCode::from(code as u8)
}
