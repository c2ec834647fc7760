//! `bhf`: knot complexes, bordered type D modules and the elliptic involution.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bhf_core::io::{self as docs, Kind};
use bhf_core::ktd::{self, Algorithm, Verdict, Witness};
use bhf_core::type_d::ReductionOrder;
use bhf_core::type_da::{self, DEFAULT_ARITY_CAP};
use bhf_core::{Error, KnotComplex, TypeDAModule, TypeDModule};

const EXIT_FAILED: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "bhf", version, about = "Bordered Floer computations for knot complements")]
struct Cli {
    /// Reject inputs that fail validation at load time.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    V,
    H,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Basis,
    Basefree,
}

#[derive(Subcommand)]
enum Command {
    /// Check a complex, module, bimodule or script.
    Validate { file: String },
    /// Flip a knot complex.
    Flip {
        cfk: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Vertically and/or horizontally simplify a reduced knot complex.
    Simplify {
        cfk: String,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Print τ of a knot complex.
    Tau { cfk: String },
    /// Type D module of the knot complement with the given framing.
    Cfd {
        cfk: String,
        #[arg(long, allow_hyphen_values = true)]
        framing: i64,
        #[arg(long, value_enum, default_value = "basis")]
        algo: Algo,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Box tensor product of a bimodule with a type D module.
    Tensor {
        /// tau-mu, tau-lambda, H, identity, or a .damod.json file
        #[arg(long)]
        bimodule: String,
        dmod: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Build the elliptic involution bimodule from the sixfold twist product.
    BuildH {
        #[arg(long)]
        script: Option<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Cancel all idempotent arrows or actions.
    Reduce {
        module: String,
        #[arg(long, conflicts_with = "script")]
        seed: Option<u64>,
        #[arg(long)]
        script: Option<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Look for an isomorphism between two modules or two bimodules.
    Iso { first: String, second: String },
    /// Compare H ⊠ CFD(C) with CFD(C^flip).
    Verify {
        cfk: String,
        #[arg(long, allow_hyphen_values = true)]
        framing: Option<i64>,
        #[arg(long, value_enum, default_value = "basefree")]
        algo: Algo,
    },
    /// Graphviz rendering of a module or bimodule.
    Dot {
        module: String,
        #[arg(short, long)]
        output: Option<String>,
    },
}

/// Why a command did not succeed, with its exit code.
enum Failure {
    Error(Error),
    Failed(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Error(Error::Io(e))
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &str) -> io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| io::Error::new(e.kind(), format!("{path}: {e}")))
    }
}

fn write_output(path: Option<&str>, text: &str) -> io::Result<()> {
    match path {
        None | Some("-") => io::stdout().write_all(text.as_bytes()),
        Some(p) => fs::write(p, text),
    }
}

fn builtin(name: &str) -> Option<TypeDAModule> {
    match name.strip_prefix("builtin:").unwrap_or(name) {
        "H" => Some(type_da::elliptic()),
        "tau-mu" => Some(type_da::tau_mu()),
        "tau-lambda" => Some(type_da::tau_lambda()),
        "identity" => Some(type_da::identity()),
        _ => None,
    }
}

enum Module {
    D(TypeDModule),
    DA(TypeDAModule),
}

fn load_module(path: &str, strict: bool) -> Result<Module, Failure> {
    if path.starts_with("builtin:") {
        return builtin(path)
            .map(Module::DA)
            .ok_or_else(|| Failure::Error(Error::UnknownToken(path.to_string())));
    }
    let text = read_input(path)?;
    match docs::detect_kind(&text)? {
        Some(Kind::TypeD) => Ok(Module::D(docs::parse_type_d(&text, strict)?)),
        Some(Kind::TypeDa) => Ok(Module::DA(docs::parse_type_da(&text, strict)?)),
        other => Err(Failure::Failed(format!(
            "{path}: expected a type_d or type_da document, found {}",
            other.map_or("line-format text", Kind::as_str)
        ))),
    }
}

fn load_d(path: &str, strict: bool) -> Result<TypeDModule, Failure> {
    match load_module(path, strict)? {
        Module::D(m) => Ok(m),
        Module::DA(_) => Err(Failure::Failed(format!("{path}: expected a type D module"))),
    }
}

fn load_cfk(path: &str, strict: bool) -> Result<KnotComplex, Failure> {
    Ok(docs::parse_cfk(&read_input(path)?, strict)?)
}

/// `BHF_SEED` wins over `--seed`.
fn seed(flag: Option<u64>) -> Result<Option<u64>, Failure> {
    match std::env::var("BHF_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Failed(format!("BHF_SEED: not an integer: `{s}`"))),
        Err(_) => Ok(flag),
    }
}

fn print_bijection(f: &std::collections::BTreeMap<String, String>) {
    for (a, b) in f {
        println!("{a} -> {b}");
    }
}

fn print_verdict(verdict: &Verdict) -> Outcome {
    println!("{verdict}");
    match verdict {
        Verdict::Verified(Witness::Permutation(f)) => {
            print_bijection(f);
            Ok(())
        }
        Verdict::Verified(Witness::BaseChange(f)) => {
            for a in f {
                println!("{} -> {} {}", a.from, a.to, a.label);
            }
            Ok(())
        }
        Verdict::Failed(why) => Err(Failure::Failed(why.clone())),
        Verdict::Inconclusive(why) => Err(Failure::Inconclusive(why.clone())),
    }
}

fn run(cli: Cli) -> Outcome {
    let strict = cli.strict;
    match cli.command {
        Command::Validate { file } => {
            let text = read_input(&file)?;
            let problems: Vec<String> = match docs::detect_kind(&text)? {
                None if file.ends_with(".script") => {
                    docs::parse_script(&text)?;
                    vec![]
                }
                None | Some(Kind::Cfk) => docs::parse_cfk(&text, false)?.validate().iter().map(|v| v.to_string()).collect(),
                Some(Kind::TypeD) => docs::parse_type_d(&text, false)?.validate().iter().map(|v| v.to_string()).collect(),
                Some(Kind::TypeDa) => {
                    let m = docs::parse_type_da(&text, false)?;
                    m.validate(m.default_check_bound()).iter().map(|v| v.to_string()).collect()
                }
                Some(Kind::Script) => {
                    docs::parse_script(&text)?;
                    vec![]
                }
            };
            if problems.is_empty() {
                println!("valid");
                Ok(())
            } else {
                for p in &problems {
                    eprintln!("{p}");
                }
                Err(Failure::Failed(format!("{} problem(s)", problems.len())))
            }
        }
        Command::Flip { cfk, output } => {
            let c = load_cfk(&cfk, strict)?.flip()?;
            Ok(write_output(output.as_deref(), &docs::write_cfk(&c))?)
        }
        Command::Simplify { cfk, mode, output } => {
            let c = load_cfk(&cfk, strict)?;
            let s = match mode {
                Mode::V => c.vertical_simplify()?,
                Mode::H => c.horizontal_simplify()?,
                Mode::Both => c
                    .simultaneous_simplify(64)?
                    .ok_or_else(|| Failure::Failed("no simultaneously simplified basis found".into()))?,
            };
            Ok(write_output(output.as_deref(), &docs::write_cfk(&s))?)
        }
        Command::Tau { cfk } => {
            println!("{}", load_cfk(&cfk, strict)?.tau()?);
            Ok(())
        }
        Command::Cfd { cfk, framing, algo, output } => {
            let c = load_cfk(&cfk, strict)?;
            let d = match algo {
                Algo::Basis => {
                    let s = c.simultaneous_simplify(64)?.ok_or(Error::NotSimplified)?;
                    ktd::ktd_basis(&s, framing)?
                }
                Algo::Basefree => ktd::ktd_basefree(&c, -framing)?,
            };
            Ok(write_output(output.as_deref(), &docs::write_type_d(&d))?)
        }
        Command::Tensor { bimodule, dmod, output } => {
            let b = match builtin(&bimodule) {
                Some(b) => b,
                None => match load_module(&bimodule, strict)? {
                    Module::DA(b) => b,
                    Module::D(_) => return Err(Failure::Failed(format!("{bimodule}: expected a type DA bimodule"))),
                },
            };
            let m = load_d(&dmod, strict)?;
            let t = type_da::box_da_d(&b, &m)?;
            Ok(write_output(output.as_deref(), &docs::write_type_d(&t))?)
        }
        Command::BuildH { script, output } => {
            let steps = match script {
                Some(p) => Some(docs::parse_script(&read_input(&p)?)?),
                None => None,
            };
            let h = type_da::build_elliptic(steps.as_deref())?;
            Ok(write_output(output.as_deref(), &docs::write_type_da(&h))?)
        }
        Command::Reduce { module, seed: flag, script, output } => {
            let order = match (seed(flag)?, script) {
                (_, Some(p)) => ReductionOrder::Script(docs::parse_script(&read_input(&p)?)?),
                (Some(s), None) => ReductionOrder::Seeded(s),
                (None, None) => ReductionOrder::Lexicographic,
            };
            let text = match load_module(&module, strict)? {
                Module::D(m) => docs::write_type_d(&m.reduce(&order)?.0),
                Module::DA(m) => docs::write_type_da(&m.reduce(&order, DEFAULT_ARITY_CAP)?.0),
            };
            Ok(write_output(output.as_deref(), &text)?)
        }
        Command::Iso { first, second } => match (load_module(&first, strict)?, load_module(&second, strict)?) {
            (Module::D(a), Module::D(b)) => print_verdict(&ktd::compare(&a, &b, seed(None)?.unwrap_or(0))),
            (Module::DA(a), Module::DA(b)) => match a.isomorphism(&b) {
                Some(f) => {
                    println!("isomorphic");
                    print_bijection(&f);
                    Ok(())
                }
                None if a.len() != b.len() || a.action_count() != b.action_count() => Err(Failure::Failed(format!(
                    "{} generators and {} actions vs {} and {}",
                    a.len(),
                    a.action_count(),
                    b.len(),
                    b.action_count()
                ))),
                None => Err(Failure::Inconclusive("no generator bijection matches the actions".into())),
            },
            _ => Err(Failure::Failed("cannot compare a type D module with a type DA bimodule".into())),
        },
        Command::Verify { cfk, framing, algo } => {
            let c = load_cfk(&cfk, strict)?;
            let algorithm = match algo {
                Algo::Basis => Algorithm::Basis(match framing {
                    Some(n) => n,
                    None => 2 * c.tau()? - 3,
                }),
                Algo::Basefree => Algorithm::Basefree(framing.map(|n| -n)),
            };
            let r = ktd::verify_elliptic_invariance(&c, algorithm, seed(None)?.unwrap_or(0))?;
            print_verdict(&r.verdict)
        }
        Command::Dot { module, output } => {
            let text = match load_module(&module, strict)? {
                Module::D(m) => m.to_dot(),
                Module::DA(m) => m.to_dot(),
            };
            Ok(write_output(output.as_deref(), &text)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILED)
        }
        Err(Failure::Failed(why)) => {
            eprintln!("failed: {why}");
            ExitCode::from(EXIT_FAILED)
        }
        Err(Failure::Inconclusive(why)) => {
            eprintln!("inconclusive: {why}");
            ExitCode::from(EXIT_INCONCLUSIVE)
        }
    }
}
