use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use hopfkit::catalog::{h4_cocycle, h4_rform};
use hopfkit::convolution::{check_rform, cocycle_twist, Functional};
use hopfkit::double::build_double;
use hopfkit::hopf::{FinHopf, Variant};
use hopfkit::hopfspec::{self, Document};
use hopfkit::report::CheckReport;
use hopfkit::scalar::Field;
use hopfkit::suite::{run_suite, SuiteConfig};
use hopfkit::yd::{check_fg, check_yd, check_yd_algebra, is_azumaya};
use hopfkit::Error;

/// Exact computations with finite-dimensional Hopf algebras.
#[derive(Parser)]
#[command(name = "hopfkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hopf axioms of every `hopf` block.
    Check { file: PathBuf },
    /// Print the dual Hopf algebra.
    Dual { file: PathBuf },
    /// Print the opposite and/or co-opposite Hopf algebra.
    Variant {
        file: PathBuf,
        #[command(flatten)]
        which: VariantFlag,
    },
    /// Print the Drinfeld double and its R-matrix.
    Double { file: PathBuf },
    /// Print the cocycle twist. The cocycle is a functional name in the
    /// file, a HopfSpec file, or `sigma:t=<value>` for the H4 family.
    Twist {
        file: PathBuf,
        #[arg(long)]
        cocycle: String,
    },
    /// Check the R-form axioms. The form is a functional name in the file,
    /// a HopfSpec file, or `r:t=<value>` for the H4 family.
    RformCheck {
        file: PathBuf,
        #[arg(long)]
        form: String,
        #[arg(long)]
        cotriangular: bool,
    },
    /// Check every `ydmodule` and `ydalgebra` block.
    YdCheck { file: PathBuf },
    /// Decide whether YD algebras are Azumaya.
    Azumaya {
        file: PathBuf,
        /// Only this algebra.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Run the H4 reproduction suite.
    Report {
        /// `q`, `gf:<p>` or `ratfun`.
        #[arg(long, default_value = "ratfun")]
        field: String,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct VariantFlag {
    #[arg(long)]
    op: bool,
    #[arg(long)]
    cop: bool,
    #[arg(long)]
    opcop: bool,
}

/// How a command ended: `Input` errors exit 2, failed checks exit 1.
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. }
            | Error::DimensionMismatch(_)
            | Error::FieldMismatch(..)
            | Error::HostMismatch
            | Error::NotPrime(_)
            | Error::StructureInvalid(_)
            | Error::CharTwoUnsupported => Failure::Input(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    hopfspec::parse(&text).map_err(|e| Failure::Input(format!("{}:{e}", path.display())))
}

fn primary(doc: &Document) -> Result<(String, Arc<FinHopf>), Failure> {
    doc.hopfs
        .first()
        .map(|h| (h.name.clone(), h.value.clone()))
        .ok_or_else(|| Failure::Input("document has no `hopf` block".into()))
}

fn print_report(title: &str, r: &CheckReport) -> bool {
    println!("{title}: {}", if r.passed() { "pass" } else { "FAIL" });
    print!("{r}");
    r.passed()
}

fn emit(doc: &Document) -> Outcome {
    print!("{}", doc.to_text()?);
    Ok(true)
}

/// Resolves a functional argument against the document's first host.
fn functional_arg(doc: &Document, host: &Arc<FinHopf>, arg: &str, family: &str) -> Result<Functional, Failure> {
    if let Some(v) = arg.strip_prefix(family).and_then(|s| s.strip_prefix(":t=")) {
        let t = host
            .field()
            .parse(v)
            .map_err(|e| Failure::Input(format!("`{arg}`: {e}")))?;
        return Ok(if family == "sigma" {
            h4_cocycle(host, &t)?
        } else {
            h4_rform(host, &t)?
        });
    }
    if let Some(f) = doc.functional(arg) {
        return Ok(f.rehost(host.clone())?);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(Failure::Input(format!(
            "`{arg}` is neither a functional in the file nor a readable file"
        )));
    }
    let other = load(path)?;
    let f = other
        .functionals
        .first()
        .ok_or_else(|| Failure::Input(format!("{arg}: no `functional` block")))?;
    if f.value.arity() != 2 {
        return Err(Failure::Input(format!("{arg}: expected a functional of arity 2")));
    }
    Ok(f.value.rehost(host.clone())?)
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Check { file } => {
            let doc = load(&file)?;
            if doc.hopfs.is_empty() {
                return Err(Failure::Input("document has no `hopf` block".into()));
            }
            let mut ok = true;
            for h in &doc.hopfs {
                ok &= print_report(&format!("hopf {}", h.name), &h.value.check_axioms());
            }
            Ok(ok)
        }
        Command::Dual { file } => {
            let (name, h) = primary(&load(&file)?)?;
            let mut out = Document::new(h.field());
            out.add_hopf(&format!("{name}_dual"), Arc::new(h.dual()?));
            emit(&out)
        }
        Command::Variant { file, which } => {
            let (name, h) = primary(&load(&file)?)?;
            let (v, suffix) = if which.op {
                (Variant::Op, "op")
            } else if which.cop {
                (Variant::Cop, "cop")
            } else {
                (Variant::OpCop, "opcop")
            };
            let mut out = Document::new(h.field());
            out.add_hopf(&format!("{name}_{suffix}"), Arc::new(h.variant(v)?));
            emit(&out)
        }
        Command::Double { file } => {
            let (name, h) = primary(&load(&file)?)?;
            let d = build_double(&h)?;
            let mut out = Document::new(h.field());
            out.add_hopf(&format!("D_{name}"), d.double.clone());
            out.add_rmatrix("R", d.r.clone());
            emit(&out)
        }
        Command::Twist { file, cocycle } => {
            let doc = load(&file)?;
            let (name, h) = primary(&doc)?;
            let sigma = functional_arg(&doc, &h, &cocycle, "sigma")?;
            let tw = cocycle_twist(&h, &sigma)?;
            let mut out = Document::new(h.field());
            out.add_hopf(&format!("{name}_twisted"), Arc::new(tw));
            emit(&out)
        }
        Command::RformCheck {
            file,
            form,
            cotriangular,
        } => {
            let doc = load(&file)?;
            let (_, h) = primary(&doc)?;
            let r = functional_arg(&doc, &h, &form, "r")?;
            Ok(print_report(&format!("rform {form}"), &check_rform(&r, cotriangular)))
        }
        Command::YdCheck { file } => {
            let doc = load(&file)?;
            if doc.modules.is_empty() && doc.algebras.is_empty() {
                return Err(Failure::Input("document has no `ydmodule` or `ydalgebra` block".into()));
            }
            let mut ok = true;
            for m in &doc.modules {
                ok &= print_report(&format!("ydmodule {}", m.name), &check_yd(&m.value.module));
            }
            for a in &doc.algebras {
                ok &= print_report(&format!("ydalgebra {}", a.name), &check_yd_algebra(&a.value.algebra));
            }
            Ok(ok)
        }
        Command::Azumaya { file, algebra } => {
            let doc = load(&file)?;
            let selected: Vec<_> = doc
                .algebras
                .iter()
                .filter(|a| algebra.as_ref().is_none_or(|n| &a.name == n))
                .collect();
            if selected.is_empty() {
                return Err(Failure::Input("no matching `ydalgebra` block".into()));
            }
            let mut ok = true;
            for a in selected {
                let alg = &a.value.algebra;
                print_report(&format!("ydalgebra {} maps F, G", a.name), &check_fg(alg)?);
                let yes = is_azumaya(alg);
                println!("ydalgebra {}: {}", a.name, if yes { "Azumaya" } else { "not Azumaya" });
                ok &= yes;
            }
            Ok(ok)
        }
        Command::Report { field, t, json } => {
            let field = parse_field(&field)?;
            let t = t
                .map(|v| field.parse(&v))
                .transpose()
                .map_err(|e| Failure::Input(format!("--t: {e}")))?;
            let cfg = SuiteConfig::new(field, t)?;
            let report = run_suite(&cfg, &[]);
            if json {
                let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Check(e.to_string()))?;
                println!("{text}");
            } else {
                print!("{}", report.to_text());
            }
            Ok(report.passed)
        }
    }
}

fn parse_field(s: &str) -> Result<Field, Failure> {
    match s {
        "q" | "rationals" => Ok(Field::Rational),
        "ratfun" => Ok(Field::RatFun),
        _ => {
            let p = s
                .strip_prefix("gf:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| Failure::Input(format!("unknown field `{s}`; use q, gf:<p> or ratfun")))?;
            Ok(Field::prime(p)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("hopfkit: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("hopfkit: {msg}");
            ExitCode::from(2)
        }
    }
}
