use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use twistkit::cocycles::{determinant_cocycle, Character};
use twistkit::mapping::{parse_twist_word, GeneratorTable, MappingClass};
use twistkit::verify::{run_suite, RunConfig, SUITES};
use twistkit::winding::{arc_framed_conditions, derive_framing_from_a, framed_membership, WindingClass};
use twistkit::Error;

#[derive(Parser)]
#[command(name = "twistkit", version, about = "Determinant cocycles and winding numbers for surface mapping classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Surface {
    /// Genus
    #[arg(short = 'g', long = "genus", default_value_t = 2)]
    genus: usize,
    /// Number of punctures
    #[arg(short = 'B', default_value_t = 0)]
    punctures: usize,
    /// Number of marked points, basepoint included
    #[arg(short = 'P', default_value_t = 1)]
    marked: usize,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant cocycle A(f, χ) of a twist word
    Cocycle {
        #[command(flatten)]
        surface: Surface,
        #[arg(short = 'w', long = "word", default_value = "")]
        word: String,
    },
    /// Run a verification suite
    Verify {
        #[command(flatten)]
        surface: Surface,
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long = "max-len", default_value_t = 6)]
        max_len: usize,
    },
    /// Framing derived from the determinant cocycle
    Framing {
        #[command(flatten)]
        surface: Surface,
    },
    /// Framed-subgroup membership of a word, or arc conditions for a subgroup
    Membership {
        #[command(flatten)]
        surface: Surface,
        /// Winding class JSON; defaults to the derived framing
        #[arg(long)]
        framing: Option<PathBuf>,
        #[arg(short = 'w', long = "word")]
        word: Option<String>,
        /// File with one twist word per line
        #[arg(long)]
        subgroup: Option<PathBuf>,
        /// Winding class JSON of η for the arc conditions
        #[arg(long)]
        eta: Option<PathBuf>,
        /// Arc indices to test, comma separated; defaults to all arcs
        #[arg(long, value_delimiter = ',')]
        arcs: Vec<usize>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Io(_) | Error::InvalidArgument(_) | Error::UnsupportedConfiguration(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn load_table(s: &Surface) -> twistkit::Result<GeneratorTable> {
    GeneratorTable::load(s.genus, s.punctures, s.marked)
}

fn read_winding(path: &Path) -> twistkit::Result<WindingClass> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    WindingClass::from_json(&text)
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("report serializes"));
}

fn run(cmd: Command) -> twistkit::Result<u8> {
    match cmd {
        Command::Cocycle { surface, word } => cocycle(&surface, &word),
        Command::Verify { surface, suite, cases, seed, max_len } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Error::Parse(format!("unknown suite `{suite}`; known: {}", SUITES.join(", "))));
            }
            let cfg = RunConfig {
                genus: surface.genus,
                punctures: surface.punctures,
                marked: surface.marked,
                seed,
                max_word_len: max_len,
                case_count: cases,
            };
            let report = run_suite(&suite, &cfg)?;
            if surface.json {
                print_json(&report);
            } else {
                println!("suite {} seed {}: {} cases, {} failures", report.suite, report.seed, report.cases, report.failures.len());
                for f in &report.failures {
                    println!("  {}: expected {}, got {}", f.input, f.expected, f.actual);
                }
            }
            eprintln!("elapsed {:.2?}", report.elapsed);
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Framing { surface } => {
            let table = load_table(&surface)?;
            let w = derive_framing_from_a(&table)?;
            if surface.json {
                print_json(&w);
            } else {
                println!("N = {}", w.n);
                for (name, v) in &w.curve_values {
                    println!("W({name}) = {v}");
                }
                println!("W(delta) = {}", w.point(0)?);
            }
            Ok(0)
        }
        Command::Membership { surface, framing, word, subgroup, eta, arcs } => {
            let table = load_table(&surface)?;
            let w = match &framing {
                Some(path) => read_winding(path)?,
                None => derive_framing_from_a(&table)?,
            };
            w.check(&table)?;
            match (word, subgroup) {
                (Some(word), None) => {
                    let f = table.compose(&parse_twist_word(&word)?)?;
                    let member = framed_membership(&w, &table, &f)?;
                    if surface.json {
                        print_json(&json!({ "word": word, "member": member }));
                    } else {
                        println!("{member}");
                    }
                    Ok(0)
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    let gens: Vec<MappingClass> = text
                        .lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                        .map(|l| table.compose(&parse_twist_word(l)?))
                        .collect::<twistkit::Result<_>>()?;
                    let eta = match &eta {
                        Some(p) => read_winding(p)?,
                        None => w.clone(),
                    };
                    let arcs = if arcs.is_empty() { (1..surface.marked).collect() } else { arcs };
                    let report = arc_framed_conditions(&gens, &table, &eta, &w, &arcs)?;
                    print_json(&report);
                    Ok(0)
                }
                _ => Err(Error::InvalidArgument("give exactly one of --word and --subgroup".into())),
            }
        }
    }
}

fn cocycle(surface: &Surface, word: &str) -> twistkit::Result<u8> {
    let table = load_table(surface)?;
    let letters = parse_twist_word(word)?;
    let f = table.compose(&letters)?;
    let a = determinant_cocycle(&f, None)?;
    let vars = Character::symbolic(&f.presentation).vars();
    let monomial = a.monomial.as_ref().map(|m| (m.coeff.to_string(), m.exponents.clone()));
    if surface.json {
        print_json(&json!({
            "word": word,
            "value": a.value.format(&vars),
            "monomial": monomial.as_ref().map(|(c, e)| json!({ "coefficient": c, "exponents": e })),
            "abs_part": a.abs_part.format(&vars),
            "rel_part": vars.format(&a.rel_part),
            "chart": a.chart.map(|c| c.letter().to_string()),
        }));
    } else {
        println!("A = {}", a.value.format(&vars));
        match &monomial {
            Some((c, e)) => {
                let e: Vec<String> = e.iter().map(i32::to_string).collect();
                println!("monomial: coefficient {c}, exponents ({})", e.join(","));
            }
            None => println!("monomial: none"),
        }
        println!("abs_part = {}", a.abs_part.format(&vars));
        println!("rel_part = {}", vars.format(&a.rel_part));
    }
    Ok(0)
}
