//! The `hamfix` command line. [`run`] takes the arguments and output
//! streams and returns the exit code: 0 on success or acceptance, 1 on a
//! domain rejection or inconsistency, 2 on usage and parse errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{classify, total_chern, total_ring};
use crate::expr::parse_class;
use crate::fixeddata::{validate, FixedPointData, RationalDisplay};
use crate::localization::abbv_integrate;
use crate::models::{
    fixture_cpn, fixture_quadric, fixture_three_component_quadric3, negative_fixture,
    negative_fixtures, three_component_derivation,
};
use crate::weights::{admissible_enumerate, lemma_i_enumerate, lemma_ii_verify, WeightMultiset};
use crate::{fixeddata::CheckStatus, Error};

const MAX_KEY_LIMIT: u64 = 20;
const MAX_MULT_LIMIT: u64 = 12;

#[derive(Debug, Parser)]
#[command(
    name = "hamfix",
    version,
    about = "Checks fixed-point data of Hamiltonian circle actions"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Largest half-dimension and class degree accepted.
    #[arg(long, global = true, default_value_t = 12)]
    max_degree: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the structural and consistency checks on a data file.
    Validate {
        /// JSON data file, or - for stdin
        path: PathBuf,
    },
    /// Sort data into Case A, Case B or a rejection.
    Classify {
        path: PathBuf,
        /// Print the equivariant and ordinary cohomology rings.
        #[arg(long)]
        emit_ring: bool,
        /// Print the total Chern class.
        #[arg(long)]
        emit_chern: bool,
    },
    /// Integrate a class expression over the total space.
    Integrate {
        path: PathBuf,
        /// e.g. "ut^3", "c3", "ut^2 * t + 1".
        #[arg(long = "class")]
        class: String,
    },
    /// Exhaustive searches over isotropy weight multisets.
    Weights {
        #[arg(long, value_enum)]
        check: WeightCheck,
        #[arg(long, default_value_t = 12)]
        max_key: u64,
        #[arg(long, default_value_t = 6)]
        max_mult: u64,
    },
    /// Write a standard or negative fixture as JSON.
    Fixture {
        #[command(subcommand)]
        which: FixtureName,
        /// Output file; stdout if omitted.
        #[arg(short = 'o', long = "output", global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WeightCheck {
    Lemma1,
    Lemma2,
    Bound,
}

#[derive(Debug, Subcommand)]
enum FixtureName {
    /// Projective space CP^n fixing CP^{n-j-1} and CP^j.
    Cpn {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        j: u32,
    },
    /// Odd-dimensional quadric.
    Quadric {
        #[arg(long)]
        n: u32,
    },
    /// Three fixed components on the 6-dimensional quadric.
    ThreeComponent,
    /// A mutated fixture that the classifier rejects by design.
    Neg {
        #[arg(long)]
        name: String,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    json: bool,
    max_degree: u32,
}

/// Exit code for an error raised while running a command.
fn code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidParameter(_) => 2,
        _ => 1,
    }
}

pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let mut io = Io {
        out,
        err,
        json: cli.json,
        max_degree: cli.max_degree,
    };
    let result = match cli.command {
        Command::Validate { path } => cmd_validate(&mut io, &path),
        Command::Classify {
            path,
            emit_ring,
            emit_chern,
        } => cmd_classify(&mut io, &path, emit_ring, emit_chern),
        Command::Integrate { path, class } => cmd_integrate(&mut io, &path, &class),
        Command::Weights {
            check,
            max_key,
            max_mult,
        } => cmd_weights(&mut io, check, max_key, max_mult),
        Command::Fixture { which, output } => cmd_fixture(&mut io, which, output.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            code_for(&e)
        }
    }
}

fn load(io: &Io, path: &Path) -> Result<FixedPointData, Error> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf).map(|_| buf)
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let data = FixedPointData::from_json(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if data.half_dim() > io.max_degree {
        return Err(Error::InvalidParameter(format!(
            "dim M / 2 = {} exceeds --max-degree {}",
            data.half_dim(),
            io.max_degree
        )));
    }
    Ok(data)
}

fn emit(io: &mut Io, value: Value) -> Result<(), Error> {
    writeln!(
        io.out,
        "{}",
        serde_json::to_string_pretty(&value).expect("json values serialize")
    )
    .map_err(|e| Error::Parse(format!("cannot write output: {e}")))
}

fn say(io: &mut Io, text: impl std::fmt::Display) -> Result<(), Error> {
    write!(io.out, "{text}").map_err(|e| Error::Parse(format!("cannot write output: {e}")))
}

fn cmd_validate(io: &mut Io, path: &Path) -> Result<i32, Error> {
    let data = load(io, path)?;
    let report = validate(&data);
    let code = i32::from(report.has_fatal());
    if io.json {
        emit(
            io,
            json!({ "fatal": report.has_fatal(), "checks": report.checks }),
        )?;
    } else {
        let head = if report.has_fatal() {
            "invalid"
        } else {
            "valid"
        };
        say(io, format!("{head}\n{report}"))?;
    }
    Ok(code)
}

fn cmd_classify(io: &mut Io, path: &Path, emit_ring: bool, emit_chern: bool) -> Result<i32, Error> {
    let data = load(io, path)?;
    let cls = classify(&data);
    let mut value = cls.to_json();
    let mut text = cls.to_string();
    if cls.is_accepted() && emit_ring {
        let (eq, ord) = total_ring(&data, &cls)?;
        value["ring"] = json!(ord.to_string());
        value["equivariant_ring"] = json!(eq.to_string());
        text.push_str(&format!("ring: {ord}\nequivariant ring: {eq}\n"));
    }
    if cls.is_accepted() && emit_chern {
        let (_, c) = total_chern(&data, &cls)?;
        value["chern"] = json!(c.to_string());
        text.push_str(&format!("c(M) = {c}\n"));
    }
    if io.json {
        emit(io, value)?;
    } else {
        say(io, text)?;
    }
    Ok(if cls.is_accepted() { 0 } else { 1 })
}

fn cmd_integrate(io: &mut Io, path: &Path, class: &str) -> Result<i32, Error> {
    let data = load(io, path)?;
    let cls = parse_class(class, &data, io.max_degree)?;
    let value = abbv_integrate(&cls, &data)?;
    let shown = RationalDisplay(&value).to_string();
    if io.json {
        emit(io, json!({ "class": class, "integral": shown }))?;
    } else {
        say(io, format!("{shown}\n"))?;
    }
    Ok(0)
}

fn cmd_weights(io: &mut Io, check: WeightCheck, max_key: u64, max_mult: u64) -> Result<i32, Error> {
    if max_key == 0 || max_key > MAX_KEY_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "--max-key must be in 1..={MAX_KEY_LIMIT}"
        )));
    }
    if max_mult == 0 || max_mult > MAX_MULT_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "--max-mult must be in 1..={MAX_MULT_LIMIT}"
        )));
    }
    let (ok, lines, value) = match check {
        WeightCheck::Lemma1 => {
            let survivors = lemma_i_enumerate(max_key);
            let ok = survivors
                .iter()
                .enumerate()
                .all(|(k, s)| *s == (1..=k as u64 + 1).collect::<Vec<_>>())
                && survivors.len() as u64 == max_key;
            let mut lines: Vec<String> = survivors.iter().map(|s| format!("{s:?}")).collect();
            lines.push(if ok {
                format!("every survivor is {{1..N}}, N <= {max_key}")
            } else {
                "a survivor is not of the form {1..N}".into()
            });
            (
                ok,
                lines,
                json!({ "check": "lemma1", "survivors": survivors, "ok": ok }),
            )
        }
        WeightCheck::Lemma2 => {
            let survivors = admissible_enumerate(max_key, max_mult);
            let mut ok = true;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for w in &survivors {
                let report = lemma_ii_verify(w)?;
                let pass = report.iter().all(|c| c.status != CheckStatus::Fail);
                ok &= pass;
                let failed: Vec<&str> = report
                    .iter()
                    .filter(|c| c.status == CheckStatus::Fail)
                    .map(|c| c.name)
                    .collect();
                lines.push(format!(
                    "{w}  {}",
                    if pass {
                        "ok".to_string()
                    } else {
                        failed.join(",")
                    }
                ));
                rows.push(json!({ "multiset": w.to_json(), "ok": pass, "failed": failed }));
            }
            lines.push(if ok {
                format!(
                    "all {} survivors satisfy the multiplicity relations",
                    survivors.len()
                )
            } else {
                "some survivor violates the multiplicity relations".into()
            });
            (
                ok,
                lines,
                json!({ "check": "lemma2", "survivors": rows, "ok": ok }),
            )
        }
        WeightCheck::Bound => {
            let survivors = admissible_enumerate(max_key, max_mult);
            let worst = survivors
                .iter()
                .map(WeightMultiset::max_key)
                .max()
                .unwrap_or(0);
            let ok = worst <= 6;
            let lines = vec![
                format!("{} survivors, largest key {worst}", survivors.len()),
                if ok {
                    "no key > 6 among survivors".to_string()
                } else {
                    format!("key {worst} > 6 among survivors")
                },
            ];
            (
                ok,
                lines,
                json!({ "check": "bound", "survivors": survivors.len(), "max_key": worst, "ok": ok }),
            )
        }
    };
    if io.json {
        emit(io, value)?;
    } else {
        say(io, lines.join("\n") + "\n")?;
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_fixture(io: &mut Io, which: FixtureName, output: Option<&Path>) -> Result<i32, Error> {
    let data = match which {
        FixtureName::Cpn { n, j } => fixture_cpn(n, j)?,
        FixtureName::Quadric { n } => fixture_quadric(n)?,
        FixtureName::ThreeComponent => {
            let (_, _, _, notes) = three_component_derivation()?;
            for note in notes {
                let _ = writeln!(io.err, "# {note}");
            }
            fixture_three_component_quadric3()
        }
        FixtureName::Neg { name } => match negative_fixture(&name) {
            Some(f) => {
                let _ = writeln!(
                    io.err,
                    "# {}: rejected by {}",
                    f.description, f.expected_check
                );
                f.data
            }
            None => {
                let known: Vec<&str> = negative_fixtures().iter().map(|f| f.name).collect();
                return Err(Error::InvalidParameter(format!(
                    "unknown negative fixture `{name}`; known: {}",
                    known.join(", ")
                )));
            }
        },
    };
    if data.half_dim() > io.max_degree {
        return Err(Error::InvalidParameter(format!(
            "dim M / 2 = {} exceeds --max-degree {}",
            data.half_dim(),
            io.max_degree
        )));
    }
    let text = data.to_json();
    match output {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?,
        None => say(io, text + "\n")?,
    }
    Ok(0)
}
