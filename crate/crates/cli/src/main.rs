use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use galdesc::character::{character_table, inner_product};
use galdesc::descent::{
    acting_group, borel_tits_cocycle, choose_descent_maps, descent_exists, loewy_correspondence,
    minimal_fields_of_definition, ChooserOrder,
};
use galdesc::hilbert::{local_invariants, DEFAULT_HEIGHT_BOUND};
use galdesc::io::{load_group, load_rep};
use galdesc::rational::{lcm_u32, parse_rational};
use galdesc::{Error, Representation, Subfield};

#[derive(Parser)]
#[command(name = "galdesc", version, about = "Galois descent for representations of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a representation and report its character.
    Inspect { source: String },
    /// Decide whether a representation has a form over a subfield.
    Descent {
        source: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = DEFAULT_HEIGHT_BOUND)]
        height_bound: u64,
    },
    /// Simple objects over a subfield, one per Galois orbit of irreducible characters.
    Loewy {
        source: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = DEFAULT_HEIGHT_BOUND)]
        height_bound: u64,
    },
    /// Minimal subfields of the coefficient field over which a form exists.
    Minfield {
        source: String,
        #[arg(long, default_value_t = DEFAULT_HEIGHT_BOUND)]
        height_bound: u64,
    },
    /// Hilbert symbols (a, b)_v at the relevant places.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Raw cocycle table for the acting group of a subfield.
    Cocycle {
        source: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidPlace(_) => 2,
        Error::InvalidRepresentation(_) | Error::InvalidGroup(_) => 3,
        _ => 4,
    }
}

fn read_file(path: &str) -> galdesc::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn inspect(source: &str) -> galdesc::Result<Value> {
    let rho = load_rep(source, read_file)?;
    let report = rho.validate();
    if !report.ok {
        return Err(Error::InvalidRepresentation(format!("{:?}", report.first_failure())));
    }
    let chi = rho.character();
    Ok(json!({
        "order": rho.group().order(),
        "conductor": rho.conductor(),
        "dim": rho.dim(),
        "valid": true,
        "character": to_value(&chi),
        "norm_squared": to_value(&inner_product(&chi, &chi)?),
        "absolutely_irreducible": rho.is_absolutely_irreducible(),
    }))
}

fn descent(source: &str, field: &str, height_bound: u64) -> galdesc::Result<Value> {
    let rho = load_rep(source, read_file)?;
    let field = Subfield::parse(field)?;
    let decision = descent_exists(&rho, &field, height_bound)?;
    let mut out = to_value(&decision);
    out["field"] = to_value(&field);
    Ok(out)
}

fn loewy(source: &str, field: &str, height_bound: u64) -> galdesc::Result<Value> {
    let group = load_group(source, read_file)?;
    let field = Subfield::parse(field)?;
    let table = character_table(&group)?;
    let descriptors = loewy_correspondence(&table, &field, height_bound)?;
    Ok(json!({ "field": to_value(&field), "order": group.order(), "descriptors": to_value(&descriptors) }))
}

fn minfield(source: &str, height_bound: u64) -> galdesc::Result<Value> {
    let rho = load_rep(source, read_file)?;
    Ok(to_value(&minimal_fields_of_definition(&rho, height_bound)?))
}

fn hilbert(a: &str, b: &str) -> galdesc::Result<Value> {
    let (qa, qb) = (parse_rational(a)?, parse_rational(b)?);
    let inv = local_invariants(&qa, &qb)?;
    Ok(json!({ "a": a, "b": b, "invariants": to_value(&inv), "product": inv.product() }))
}

fn cocycle(source: &str, field: &str) -> galdesc::Result<Value> {
    let rho: Representation = load_rep(source, read_file)?;
    let field = Subfield::parse(field)?;
    if !rho.is_absolutely_irreducible() {
        return Err(Error::NotAbsolutelyIrreducible);
    }
    let n = lcm_u32(rho.conductor(), field.min_conductor());
    let rho = rho.lift(n)?;
    let maps = choose_descent_maps(&rho, &acting_group(&field, n)?, ChooserOrder::Lexicographic)?;
    Ok(to_value(&borel_tits_cocycle(&rho, &maps)?))
}

fn run(cli: &Cli) -> galdesc::Result<Value> {
    match &cli.command {
        Command::Inspect { source } => inspect(source),
        Command::Descent { source, field, height_bound } => descent(source, field, *height_bound),
        Command::Loewy { source, field, height_bound } => loewy(source, field, *height_bound),
        Command::Minfield { source, height_bound } => minfield(source, *height_bound),
        Command::Hilbert { a, b } => hilbert(a, b),
        Command::Cocycle { source, field } => cocycle(source, field),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            let text = if cli.pretty { serde_json::to_string_pretty(&value) } else { serde_json::to_string(&value) }
                .expect("json values serialize");
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("{}", json!({ "error": format!("cannot write {}: {e}", path.display()) }));
                        return ExitCode::from(2);
                    }
                }
                None => {
                    let mut out = std::io::stdout().lock();
                    match writeln!(out, "{text}").and_then(|()| out.flush()) {
                        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                            eprintln!("{}", json!({ "error": format!("cannot write to stdout: {e}") }));
                            return ExitCode::from(2);
                        }
                        _ => {}
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string(), "exit_code": exit_code(&e) }));
            ExitCode::from(exit_code(&e))
        }
    }
}
