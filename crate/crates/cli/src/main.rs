//! `tabint`: strongest implicates, uniform and Craig interpolants for
//! tabular modal logics.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tabint::catalog::{make_logic, prefix_atoms, witness_craig, witness_implicate, witness_nocip, LogicName};
use tabint::cover::{sigma_encoding_with_budget, DEFAULT_ENCODING_BUDGET};
use tabint::formula::parse_signature;
use tabint::interpolation::{
    cip_witness_with_budget, modal_craig_interpolant, reduce_logic, strongest_implicate_single,
    strongest_implicate_with, verify_craig, verify_strongest_implicate_with_budget, DEFAULT_CIP_BUDGET,
    DEFAULT_VERIFY_BUDGET,
};
use tabint::kripke::{find_countermodel, sigma_bisimulation, Logic, Model};
use tabint::translation::{rt_logic_with, tr_frame, tr_logic};
use tabint::{alt1, parse_formula, Error, Formula, Signature};

use report::{Format, Report};

const NO_CIP_NOTE: &str = "the logic lacks the Craig interpolation property, so an interpolant need not exist. \
For instance, on the frame with one root and three leaves, <>(p & q) & <>(p & ~q) implies \
<>(~p & r) -> [](~p -> r), yet no formula over {p} sits between them";

#[derive(Parser, Debug)]
#[command(name = "tabint", version, about = "Interpolants and strongest implicates for tabular modal logics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Bound on enumerated valuations for verification and CIP checks.
    #[arg(long, global = true, env = "TABINT_BUDGET", value_parser = positive)]
    budget_valuations: Option<u128>,
    /// Bound on enumerated abstract labelings when building encodings.
    #[arg(long, global = true, value_parser = positive)]
    budget_covers: Option<u128>,
}

fn positive(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("budget must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug)]
struct ImplicateArgs {
    /// Built-in logic name (EQ<n>, LO<n>, L13, FORK<k>) or a logic JSON file.
    #[arg(long)]
    logic: String,
    #[arg(long)]
    phi: String,
    /// Kept signature as a comma list.
    #[arg(long)]
    sigma: String,
    /// Check the result with the brute-force oracle.
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Strongest implicate of --phi over --sigma.
    Implicate {
        #[command(flatten)]
        args: ImplicateArgs,
        /// Use one propositional call on the whole-logic translation.
        #[arg(long)]
        single: bool,
    },
    /// Uniform interpolant of --phi over --sigma (logics with CIP only).
    Uniform {
        #[command(flatten)]
        args: ImplicateArgs,
    },
    /// Craig interpolant for the valid implication --phi -> --psi.
    Craig {
        #[arg(long)]
        logic: String,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
        #[arg(long)]
        verify: bool,
    },
    /// Decide the Craig interpolation property.
    Cip {
        #[arg(long)]
        logic: String,
    },
    /// Formula families with large interpolants.
    Witness {
        #[command(subcommand)]
        kind: WitnessCmd,
    },
    /// Translations between modal and propositional formulas.
    Translate {
        #[command(subcommand)]
        direction: TranslateCmd,
    },
    /// Uniform interpolant for frames with at most one successor.
    Alt1 {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        sigma: String,
        /// Longest chain checked; defaults to depth(phi) + 2.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// σ-bisimilarity of the roots of two model JSON files.
    Bisim {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Defaults to all atoms of both models.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Load a logic and optionally check that --phi is valid in it.
    Validate {
        #[arg(long)]
        logic: String,
        #[arg(long)]
        phi: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessCmd {
    /// Formula whose strongest implicate needs 2^n type disjuncts.
    Implicate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Values f(0), f(1), … as a comma list; defaults to f(x) = x.
        #[arg(long)]
        growth: Option<String>,
        /// Box depth of the implicate; defaults to f(kn).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Implication whose Craig interpolants need 2^n type disjuncts.
    Craig {
        #[arg(long)]
        n: usize,
    },
    /// Wraps an implication so that it has no interpolant in logics
    /// without CIP. The base is --phi/--psi, or the craig witness of size
    /// --n with atoms prefixed by `b_`.
    Nocip {
        #[arg(long, requires = "psi", conflicts_with = "n")]
        phi: Option<String>,
        #[arg(long, requires = "phi")]
        psi: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum TranslateCmd {
    /// Modal formula to its propositional translation over the logic.
    Forward {
        #[arg(long)]
        logic: String,
        #[arg(long)]
        phi: String,
        /// Translate at the root of this frame only.
        #[arg(long)]
        frame: Option<String>,
    },
    /// Propositional formula over indexed atoms back to a modal formula.
    Backward {
        #[arg(long)]
        logic: String,
        /// Propositional formula over atoms like `p@w` and `r@F:w`.
        #[arg(long)]
        xi: String,
        #[arg(long)]
        sigma: String,
    },
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok = 0,
    Usage = 1,
    Failed = 2,
    NoCip = 3,
}

/// A failure with the flag it concerns.
struct CliError(String);

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError(e.to_string())
    }
}

fn with_flag(flag: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| CliError(format!("{flag}: {e}"))
}

/// `valuations` is `None` unless set by flag or environment; each check
/// then uses its own default.
struct Budgets {
    valuations: Option<u128>,
    covers: u128,
}

impl Budgets {
    fn valuations_or(&self, default: u128) -> u128 {
        self.valuations.unwrap_or(default)
    }
}

fn load_logic(spec: &str) -> Result<Logic, CliError> {
    if let Ok(name) = spec.parse::<LogicName>() {
        return make_logic(name).map_err(with_flag("--logic"));
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError(format!("--logic: {spec}: {e}")))?;
        return Logic::from_json(&text).map_err(|e| CliError(format!("--logic: {spec}: {e}")));
    }
    Err(CliError(format!(
        "--logic: `{spec}` is neither a built-in logic (EQ<n>, LO<n>, L13, FORK<k>) nor a file"
    )))
}

fn formula(flag: &str, text: &str) -> Result<Formula, CliError> {
    parse_formula(text).map_err(with_flag(flag))
}

fn modal_input(flag: &str, text: &str) -> Result<Formula, CliError> {
    let f = formula(flag, text)?;
    if let Some(a) = f.signature().into_iter().find(|a| !a.is_base()) {
        return Err(CliError(format!("{flag}: atom `{a}` is not a plain atom")));
    }
    Ok(f)
}

fn sigma(flag: &str, text: &str) -> Result<Signature, CliError> {
    parse_signature(text).map_err(with_flag(flag))
}

fn sig_text(s: &Signature) -> String {
    s.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

fn sig_value(s: &Signature) -> Value {
    Value::Array(s.iter().map(|a| Value::String(a.to_string())).collect())
}

fn implicate(args: &ImplicateArgs, single: bool, uniform: bool, b: &Budgets) -> Result<(Report, Status), CliError> {
    let l = load_logic(&args.logic)?;
    let f = modal_input("--phi", &args.phi)?;
    let s = sigma("--sigma", &args.sigma)?;
    let mut r = Report::new();
    r.str("logic", l.name());
    r.field("sigma", sig_value(&s), sig_text(&s));
    r.formula("phi", &f);
    let target = if uniform {
        if let Some(w) = cip_witness_with_budget(&l, b.valuations_or(DEFAULT_CIP_BUDGET))? {
            r.str("error", NO_CIP_NOTE);
            r.model("cip_witness_left", &w.left).model("cip_witness_right", &w.right);
            return Ok((r, Status::NoCip));
        }
        reduce_logic(&l)?
    } else {
        l.clone()
    };
    let chi = if single {
        strongest_implicate_single(&target, &f, &s)?
    } else {
        let enc = sigma_encoding_with_budget(&target, &s, b.covers)?;
        strongest_implicate_with(&enc, &target, &f)?
    };
    r.formula(if uniform { "uniform_interpolant" } else { "implicate" }, &chi);
    let mut status = Status::Ok;
    if args.verify {
        let v = verify_strongest_implicate_with_budget(&l, &f, &s, &chi, b.valuations_or(DEFAULT_VERIFY_BUDGET))?;
        if !v.holds {
            status = Status::Failed;
        }
        r.verdict("verification", &v);
    }
    Ok((r, status))
}

fn craig(logic: &str, phi: &str, psi: &str, verify: bool) -> Result<(Report, Status), CliError> {
    let l = load_logic(logic)?;
    let f = modal_input("--phi", phi)?;
    let g = modal_input("--psi", psi)?;
    let mut r = Report::new();
    r.str("logic", l.name());
    r.formula("phi", &f).formula("psi", &g);
    match modal_craig_interpolant(&l, &f, &g) {
        Ok(chi) => {
            r.formula("interpolant", &chi);
            let mut status = Status::Ok;
            if verify {
                let v = verify_craig(&l, &f, &g, &chi)?;
                if !v.holds {
                    status = Status::Failed;
                }
                r.verdict("verification", &v);
            }
            Ok((r, status))
        }
        Err(Error::NoCip(_)) => {
            r.str("error", NO_CIP_NOTE);
            Ok((r, Status::NoCip))
        }
        Err(Error::NotInLogic { countermodel }) => {
            r.str("error", "the implication is not valid in the logic");
            r.model("countermodel", &countermodel);
            Ok((r, Status::Failed))
        }
        Err(e) => Err(e.into()),
    }
}

fn cip(logic: &str, b: &Budgets) -> Result<(Report, Status), CliError> {
    let l = load_logic(logic)?;
    let mut r = Report::new();
    r.str("logic", l.name());
    match cip_witness_with_budget(&l, b.valuations_or(DEFAULT_CIP_BUDGET))? {
        None => {
            r.field("cip", Value::Bool(true), "yes");
        }
        Some(w) => {
            r.field("cip", Value::Bool(false), "no");
            r.model("witness_left", &w.left).model("witness_right", &w.right);
        }
    }
    Ok((r, Status::Ok))
}

fn witness(kind: &WitnessCmd) -> Result<(Report, Status), CliError> {
    let mut r = Report::new();
    match kind {
        WitnessCmd::Implicate { n, k, growth, depth } => {
            let table: Vec<usize> = match growth {
                Some(g) => g
                    .split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| CliError(format!("--growth: {e}")))?,
                None => (0..=n * k).collect(),
            };
            let w = witness_implicate(*n, *k, &table, *depth)?;
            r.field("n", json!(w.n), w.n.to_string());
            r.field("k", json!(w.k), w.k.to_string());
            r.field("depth", json!(w.depth), w.depth.to_string());
            r.formula("phi", &w.phi);
            r.field("sigma", sig_value(&w.sigma), sig_text(&w.sigma));
            r.formula("chi", &w.chi);
            r.field(
                "chi_disjuncts",
                json!(w.chi_disjuncts.len()),
                w.chi_disjuncts.len().to_string(),
            );
        }
        WitnessCmd::Craig { n } => {
            let w = witness_craig(*n)?;
            r.field("n", json!(w.n), w.n.to_string());
            r.formula("phi", &w.phi).formula("psi", &w.psi).formula("interpolant", &w.interpolant);
            r.field("sigma", sig_value(&w.sigma), sig_text(&w.sigma));
        }
        WitnessCmd::Nocip { phi, psi, n } => {
            let (bp, bq) = match (phi, psi, n) {
                (Some(p), Some(q), _) => (modal_input("--phi", p)?, modal_input("--psi", q)?),
                (_, _, Some(n)) => {
                    let w = witness_craig(*n)?;
                    (prefix_atoms(&w.phi, "b_")?, prefix_atoms(&w.psi, "b_")?)
                }
                _ => return Err(CliError("witness nocip: give --phi and --psi, or --n".into())),
            };
            let (wp, wq) = witness_nocip(&bp, &bq)?;
            r.formula("phi", &wp).formula("psi", &wq);
        }
    }
    Ok((r, Status::Ok))
}

fn translate(direction: &TranslateCmd, b: &Budgets) -> Result<(Report, Status), CliError> {
    let mut r = Report::new();
    match direction {
        TranslateCmd::Forward { logic, phi, frame } => {
            let l = load_logic(logic)?;
            let f = modal_input("--phi", phi)?;
            r.str("logic", l.name());
            let out = match frame {
                Some(name) => {
                    let fr = l
                        .frame(name)
                        .ok_or_else(|| CliError(format!("--frame: no frame `{name}` in {}", l.name())))?;
                    r.str("frame", name.clone());
                    tr_frame(fr, fr.root_id(), &f)?
                }
                None => tr_logic(&l, &f)?,
            };
            r.formula("translation", &out);
        }
        TranslateCmd::Backward { logic, xi, sigma: s } => {
            let l = load_logic(logic)?;
            let x = formula("--xi", xi)?;
            let s = sigma("--sigma", s)?;
            let enc = sigma_encoding_with_budget(&l, &s, b.covers)?;
            r.str("logic", l.name());
            r.field("sigma", sig_value(&s), sig_text(&s));
            r.formula("modal", &rt_logic_with(&enc, &l, &x)?);
        }
    }
    Ok((r, Status::Ok))
}

fn alt1_cmd(phi: &str, s: &str, bound: Option<usize>, b: &Budgets) -> Result<(Report, Status), CliError> {
    let f = modal_input("--phi", phi)?;
    let s = sigma("--sigma", s)?;
    let bound = bound.unwrap_or(f.modal_depth() + 2);
    let psi = alt1::alt1_uniform_interpolant(&f, &s)?;
    let v = alt1::verify_alt1_interpolant_with_budget(&f, &s, &psi, bound, b.valuations_or(alt1::DEFAULT_ALT1_BUDGET))?;
    let mut r = Report::new();
    r.field("sigma", sig_value(&s), sig_text(&s));
    r.formula("phi", &f).formula("interpolant", &psi);
    r.field("checked_chain_lengths", json!(bound), format!("0..={bound}"));
    r.field(
        "checked_consequent_depth",
        json!(f.modal_depth()),
        format!("consequents of modal depth at most {}", f.modal_depth()),
    );
    r.verdict("verification", &v);
    Ok((r, if v.holds { Status::Ok } else { Status::Failed }))
}

fn read_model(flag: &str, path: &Path) -> Result<Model, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError(format!("{flag}: {}: {e}", path.display())))?;
    Model::from_json(&text).map_err(|e| CliError(format!("{flag}: {}: {e}", path.display())))
}

fn bisim(left: &Path, right: &Path, s: Option<&str>) -> Result<(Report, Status), CliError> {
    let (m1, m2) = (read_model("--left", left)?, read_model("--right", right)?);
    let s = match s {
        Some(s) => sigma("--sigma", s)?,
        None => m1.signature().union(&m2.signature()).cloned().collect(),
    };
    let mut r = Report::new();
    r.field("sigma", sig_value(&s), sig_text(&s));
    match sigma_bisimulation(&m1, &m2, &s) {
        Some(rel) => {
            let pairs: Vec<(String, String)> = rel
                .iter()
                .map(|&(a, b)| (m1.frame().world(a).to_string(), m2.frame().world(b).to_string()))
                .collect();
            let text = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" ");
            r.field("bisimilar", Value::Bool(true), "yes");
            r.field("relation", json!(pairs), text);
        }
        None => {
            r.field("bisimilar", Value::Bool(false), "no");
        }
    }
    Ok((r, Status::Ok))
}

fn validate(logic: &str, phi: Option<&str>) -> Result<(Report, Status), CliError> {
    let l = load_logic(logic)?;
    let mut r = Report::new();
    r.str("logic", l.name());
    let names: Vec<&str> = l.frames().iter().map(|f| f.name()).collect();
    r.field("frames", json!(names), names.join(", "));
    r.field("normal", Value::Bool(l.is_normal()), if l.is_normal() { "yes" } else { "no" });
    r.field("max_worlds", json!(l.bound()), l.bound().to_string());
    let Some(phi) = phi else {
        return Ok((r, Status::Ok));
    };
    let f = modal_input("--phi", phi)?;
    r.formula("phi", &f);
    match find_countermodel(&l, &f)? {
        None => {
            r.field("valid", Value::Bool(true), "yes");
            Ok((r, Status::Ok))
        }
        Some(m) => {
            r.field("valid", Value::Bool(false), "no");
            r.model("countermodel", &m);
            Ok((r, Status::Failed))
        }
    }
}

fn run(cli: &Cli) -> Result<(Report, Status), CliError> {
    let b = Budgets {
        valuations: cli.budget_valuations,
        covers: cli.budget_covers.unwrap_or(DEFAULT_ENCODING_BUDGET),
    };
    match &cli.command {
        Command::Implicate { args, single } => implicate(args, *single, false, &b),
        Command::Uniform { args } => implicate(args, false, true, &b),
        Command::Craig { logic, phi, psi, verify } => craig(logic, phi, psi, *verify),
        Command::Cip { logic } => cip(logic, &b),
        Command::Witness { kind } => witness(kind),
        Command::Translate { direction } => translate(direction, &b),
        Command::Alt1 { phi, sigma, bound } => alt1_cmd(phi, sigma, *bound, &b),
        Command::Bisim { left, right, sigma } => bisim(left, right, sigma.as_deref()),
        Command::Validate { logic, phi } => validate(logic, phi.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Usage as u8 } else { 0 });
        }
    };
    let start = Instant::now();
    let (mut report, status) = match run(&cli) {
        Ok(out) => out,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(Status::Usage as u8);
        }
    };
    let ms = start.elapsed().as_secs_f64() * 1000.0;
    if cli.timing {
        report.field("time_ms", json!(ms), format!("{ms:.1}"));
    } else if cli.format == Format::Json {
        report.field("time_ms", Value::Null, "");
    }
    let text = report.render(cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: --out: {}: {e}", path.display());
                return ExitCode::from(Status::Usage as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(status as u8)
}
