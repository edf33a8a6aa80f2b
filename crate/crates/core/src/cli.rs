//! Command-line dispatch.
//!
//! Exit codes: 0 when the checked property holds, 1 when it fails, 2 for
//! invalid input, unknown flags and exceeded limits.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::category::{nerve, twisted_arrow, validate_category, FinCategory};
use crate::diagram::{esd_simplex_dot, sset_dot};
use crate::error::{Error, Result};
use crate::generate::{random_category, random_coskeletal_sset, random_partial_monoid, CategorySpec, CoskeletalSpec};
use crate::groupoid::validate_groupoid;
use crate::io::{self, Document};
use crate::iso::{iso_search, IsoSearch};
use crate::monoid::{bar, span_category, validate_partial_monoid, PartialMonoid};
use crate::segal::{segal_check, two_segal_check, CheckReport, Mode};
use crate::sgpd::{s_construction, sgpd_segal_check, sgpd_two_segal_check, TruncatedSGpd};
use crate::sset::TruncatedSSet;
use crate::theorem::{fuzz_theorem, theorem_verify, FuzzMix, FuzzSummary, TheoremReport};

pub const DEFAULT_ISO_NODES: u64 = 1_000_000;
pub const DEFAULT_FUZZ_COUNT: usize = 10_000;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Human,
    Machine,
}

/// Echoed into the header of every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    pub seed: u64,
    pub budget_iso_nodes: u64,
    pub budget_fuzz_count: usize,
    pub format: Format,
}

/// Machine-format output: the run configuration and one report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Output<T> {
    pub config: RunConfig,
    pub report: T,
}

#[derive(Parser, Debug)]
#[command(name = "edgewise", version, about = "Edgewise subdivision and Segal conditions on finite simplicial data")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for isomorphism search.
    #[arg(long, global = true, default_value_t = DEFAULT_ISO_NODES)]
    budget_iso_nodes: u64,
    /// Largest accepted fuzz count.
    #[arg(long, global = true, default_value_t = DEFAULT_FUZZ_COUNT)]
    budget_fuzz_count: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the laws of any supported file.
    Validate { file: PathBuf },
    /// Edgewise subdivision of a simplicial set or simplicial groupoid file.
    Esd {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Nerve of a category file.
    Nerve {
        file: PathBuf,
        #[arg(long)]
        truncation: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Twisted arrow category of a category file.
    Tw {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bar construction of a partial monoid file.
    Bar {
        file: PathBuf,
        #[arg(long)]
        truncation: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Category of spans of a partial monoid file.
    Spans {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    #[command(subcommand)]
    Check(CheckCommand),
    #[command(subcommand)]
    Gen(GenCommand),
    /// Waldhausen construction on finite pointed sets.
    Sconstruction {
        #[arg(long)]
        max_card: usize,
        #[arg(long)]
        truncation: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the subdivision theorem on random instances.
    Fuzz {
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = MixArg::All)]
        mix: MixArg,
    },
    #[command(subcommand)]
    Draw(DrawCommand),
    /// Search for an isomorphism between two simplicial set files.
    Iso { left: PathBuf, right: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Segal conditions of a simplicial set or simplicial groupoid file.
    Segal {
        file: PathBuf,
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// 2-Segal conditions of a simplicial set or simplicial groupoid file.
    #[command(name = "2segal")]
    TwoSegal {
        file: PathBuf,
        /// Only the conditions with i = 0 or j = n.
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// 2-Segal of X against Segal of esd(X), index by index.
    Theorem {
        file: PathBuf,
        #[arg(long)]
        truncation: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    PartialMonoid {
        #[arg(long)]
        size: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// 1-coskeleton of a random graph; spec is `V,E` or `V,E,N`.
    Coskeletal {
        #[arg(long)]
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Category {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum DrawCommand {
    EsdSimplex {
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Sset {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MixArg {
    All,
    PartialMonoids,
    Categories,
    Coskeletal,
}

impl From<MixArg> for FuzzMix {
    fn from(m: MixArg) -> Self {
        match m {
            MixArg::All => FuzzMix::All,
            MixArg::PartialMonoids => FuzzMix::PartialMonoids,
            MixArg::Categories => FuzzMix::Categories,
            MixArg::Coskeletal => FuzzMix::Coskeletal,
        }
    }
}

/// What a command produced.
struct Outcome {
    code: i32,
    machine: Value,
    human: String,
    /// File contents written to `-o`, or to stdout without it.
    artifact: Option<(Option<PathBuf>, String)>,
}

impl Outcome {
    fn report<T: Serialize>(code: i32, report: &T, human: String) -> Result<Self> {
        Ok(Self { code, machine: serde_json::to_value(report)?, human, artifact: None })
    }

    fn artifact(kind: &str, text: String, output: Option<PathBuf>, summary: String) -> Self {
        let machine = json!({ "kind": kind, "output": output.as_ref().map(|p| p.display().to_string()), "summary": summary });
        let human = match &output {
            Some(p) => format!("wrote {kind} to {}: {summary}\n", p.display()),
            None => String::new(),
        };
        Self { code: EXIT_PASS, machine, human, artifact: Some((output, text)) }
    }
}

fn load(path: &Path) -> Result<Document> {
    io::document_from_str(&io::read_text(path)?)
}

fn wrong_kind(path: &Path, doc: &Document, expected: &str) -> Error {
    Error::Malformed(format!("{} holds a {}, expected {expected}", path.display(), doc.kind()))
}

fn load_sset(path: &Path, truncation: Option<usize>) -> Result<TruncatedSSet> {
    match load(path)? {
        Document::SSet(x) => {
            let violations = x.validate();
            if let Some(v) = violations.first() {
                return Err(Error::Malformed(format!("{} is not a simplicial set: {v}", path.display())));
            }
            Ok(match truncation {
                Some(t) => x.truncate(t),
                None => x,
            })
        }
        other => Err(wrong_kind(path, &other, "a simplicial set")),
    }
}

fn load_category(path: &Path) -> Result<FinCategory> {
    match load(path)? {
        Document::Category(c) => {
            if let Some(v) = validate_category(&c).first() {
                return Err(Error::Malformed(format!("{} is not a category: {v}", path.display())));
            }
            Ok(c)
        }
        Document::Groupoid(g) => Ok(g.category().clone()),
        other => Err(wrong_kind(path, &other, "a category")),
    }
}

fn load_monoid(path: &Path) -> Result<PartialMonoid> {
    match load(path)? {
        Document::Monoid(m) => {
            if let Some(v) = validate_partial_monoid(&m).first() {
                return Err(Error::Malformed(format!("{} is not a partial monoid: {v}", path.display())));
            }
            Ok(m)
        }
        other => Err(wrong_kind(path, &other, "a partial monoid")),
    }
}

enum Checkable {
    Set(TruncatedSSet),
    Groupoid(TruncatedSGpd),
}

fn load_checkable(path: &Path, truncation: Option<usize>) -> Result<Checkable> {
    match load(path)? {
        Document::SGpd(y) => {
            if let Some(v) = y.validate().first() {
                return Err(Error::Malformed(format!("{} is not a simplicial groupoid: {v}", path.display())));
            }
            if truncation.is_some() {
                return Err(Error::Malformed("--truncation applies to simplicial set files only".into()));
            }
            Ok(Checkable::Groupoid(y))
        }
        Document::SSet(_) => load_sset(path, truncation).map(Checkable::Set),
        other => Err(wrong_kind(path, &other, "a simplicial set or simplicial groupoid")),
    }
}

fn subject(path: &Path) -> String {
    path.display().to_string()
}

pub fn human_check(r: &CheckReport) -> String {
    let mut s = String::new();
    let kind = match r.kind {
        crate::segal::CheckKind::Segal => "Segal",
        crate::segal::CheckKind::TwoSegal => "2-Segal",
    };
    let mode = match r.mode {
        Some(Mode::Reduced) => ", reduced",
        _ => "",
    };
    let semantics = match r.semantics {
        crate::segal::Semantics::Set => "sets",
        crate::segal::Semantics::Groupoid => "groupoids",
    };
    writeln!(
        s,
        "{kind} check of {} ({semantics}{mode}, truncation {}): {}, {} checked, {} failed",
        r.subject, r.summary.truncation, r.summary.verdict, r.summary.checked, r.summary.failed
    )
    .unwrap();
    if let Some((lo, hi)) = r.summary.certified_levels {
        writeln!(s, "  certified levels {lo}..{hi}").unwrap();
    }
    for e in r.failures() {
        let idx: Vec<String> = e.indices.iter().map(ToString::to_string).collect();
        write!(s, "  fail at ({}): {} -> {}", idx.join(", "), e.domain_size, e.codomain_size).unwrap();
        if let Some(w) = &e.witness {
            write!(s, "; {w}").unwrap();
        }
        s.push('\n');
    }
    s
}

fn fail_list(r: &CheckReport) -> String {
    if r.passed() {
        return "pass".into();
    }
    let idx: Vec<String> = r
        .failures()
        .map(|e| format!("({})", e.indices.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("fail at {}", idx.join(" "))
}

pub fn human_theorem(r: &TheoremReport) -> String {
    let mut s = String::new();
    writeln!(s, "theorem check of {} (truncation {}, esd truncation {})", r.subject, r.truncation, r.esd_truncation).unwrap();
    writeln!(s, "  2-Segal: {}", fail_list(&r.two_segal)).unwrap();
    writeln!(s, "  esd Segal: {}", fail_list(&r.esd_segal)).unwrap();
    writeln!(s, "  Segal: {}", fail_list(&r.segal)).unwrap();
    let agree = r.matched.iter().filter(|m| m.segal_of_esd == m.two_segal).count();
    writeln!(s, "  matched indices: {agree} of {} agree", r.matched.len()).unwrap();
    let tables = r.beta_gamma.iter().filter(|e| e.verdict == crate::segal::Verdict::Pass).count();
    writeln!(s, "  comparison tables equal: {tables} of {}", r.beta_gamma.len()).unwrap();
    let held = r.retracts.iter().filter(|e| e.holds()).count();
    writeln!(s, "  retract arguments: {held} of {} hold", r.retracts.len()).unwrap();
    match r.certified_levels {
        Some((lo, hi)) => writeln!(s, "  certified levels {lo}..{hi}").unwrap(),
        None => writeln!(s, "  no certified levels").unwrap(),
    }
    if r.violations.is_empty() {
        writeln!(s, "  consistent").unwrap();
    }
    for v in &r.violations {
        writeln!(s, "  violation: {v}").unwrap();
    }
    s
}

fn human_fuzz(f: &FuzzSummary) -> String {
    let mut s = format!(
        "fuzz: {} instances ({} generation failures), 2-Segal {}, esd Segal {}, Segal {}, genuinely partial {} ({} Segal)\n",
        f.instances,
        f.generation_failures,
        f.two_segal_passes,
        f.esd_segal_passes,
        f.segal_passes,
        f.genuinely_partial,
        f.genuinely_partial_segal_passes
    );
    if f.violations.is_empty() {
        s.push_str("  no violations\n");
    }
    for v in &f.violations {
        writeln!(s, "  violation: {v}").unwrap();
    }
    s
}

fn code_for(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn sizes(x: &TruncatedSSet) -> String {
    format!("level sizes {:?}", x.level_sizes())
}

fn validate(path: &Path) -> Result<Outcome> {
    let doc = load(path)?;
    let violations: Vec<String> = match &doc {
        Document::SSet(x) => x.validate().iter().map(ToString::to_string).collect(),
        Document::Category(c) => validate_category(c).iter().map(ToString::to_string).collect(),
        Document::Groupoid(g) => validate_groupoid(g).iter().map(ToString::to_string).collect(),
        Document::Monoid(m) => validate_partial_monoid(m).iter().map(ToString::to_string).collect(),
        Document::SGpd(y) => y.validate(),
    };
    let mut human = format!("{}: {}, ", path.display(), doc.kind());
    if violations.is_empty() {
        human.push_str("valid\n");
    } else {
        writeln!(human, "{} violations", violations.len()).unwrap();
        for v in &violations {
            writeln!(human, "  {v}").unwrap();
        }
    }
    let report = json!({ "subject": subject(path), "kind": doc.kind(), "valid": violations.is_empty(), "violations": violations });
    Outcome::report(code_for(violations.is_empty()), &report, human)
}

fn iso(config: &RunConfig, left: &Path, right: &Path) -> Result<Outcome> {
    let x = load_sset(left, None)?;
    let y = load_sset(right, None)?;
    match iso_search(&x, &y, config.budget_iso_nodes) {
        IsoSearch::Found(f) => {
            let levels: Vec<BTreeMap<String, String>> = (0..=x.truncation())
                .map(|n| (0..x.level_size(n)).map(|c| (x.cell_name(n, c).to_string(), y.cell_name(n, f.components[n].apply(c)).to_string())).collect())
                .collect();
            let report = json!({ "result": "isomorphic", "map": levels });
            Outcome::report(EXIT_PASS, &report, format!("{} and {} are isomorphic\n", left.display(), right.display()))
        }
        IsoSearch::NotIsomorphic => {
            let report = json!({ "result": "not_isomorphic" });
            Outcome::report(EXIT_FAIL, &report, format!("{} and {} are not isomorphic\n", left.display(), right.display()))
        }
        IsoSearch::Inconclusive { nodes } => Err(Error::Limit(format!("isomorphism search stopped after {nodes} nodes"))),
    }
}

fn parse_spec(spec: &str) -> Result<CoskeletalSpec> {
    let parts = spec
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Malformed(format!("bad coskeletal spec {spec:?}"))))
        .collect::<Result<Vec<_>>>()?;
    match parts[..] {
        [v, e] => Ok(CoskeletalSpec::new(v, e, 5)),
        [v, e, n] => Ok(CoskeletalSpec::new(v, e, n)),
        _ => Err(Error::Malformed(format!("coskeletal spec {spec:?} is not V,E or V,E,N"))),
    }
}

fn run_config(cli: &Cli) -> RunConfig {
    let p = |p: &PathBuf| p.display().to_string();
    let (command, inputs, truncation) = match &cli.command {
        Command::Validate { file } => ("validate", vec![p(file)], None),
        Command::Esd { file, .. } => ("esd", vec![p(file)], None),
        Command::Nerve { file, truncation, .. } => ("nerve", vec![p(file)], Some(*truncation)),
        Command::Tw { file, .. } => ("tw", vec![p(file)], None),
        Command::Bar { file, truncation, .. } => ("bar", vec![p(file)], Some(*truncation)),
        Command::Spans { file, .. } => ("spans", vec![p(file)], None),
        Command::Check(CheckCommand::Segal { file, truncation }) => ("check segal", vec![p(file)], *truncation),
        Command::Check(CheckCommand::TwoSegal { file, truncation, .. }) => ("check 2segal", vec![p(file)], *truncation),
        Command::Check(CheckCommand::Theorem { file, truncation }) => ("check theorem", vec![p(file)], *truncation),
        Command::Gen(GenCommand::PartialMonoid { .. }) => ("gen partial-monoid", vec![], None),
        Command::Gen(GenCommand::Coskeletal { .. }) => ("gen coskeletal", vec![], None),
        Command::Gen(GenCommand::Category { .. }) => ("gen category", vec![], None),
        Command::Sconstruction { truncation, .. } => ("sconstruction", vec![], Some(*truncation)),
        Command::Fuzz { .. } => ("fuzz", vec![], None),
        Command::Draw(DrawCommand::EsdSimplex { .. }) => ("draw esd-simplex", vec![], None),
        Command::Draw(DrawCommand::Sset { file, .. }) => ("draw sset", vec![p(file)], None),
        Command::Iso { left, right } => ("iso", vec![p(left), p(right)], None),
    };
    RunConfig {
        command: command.to_string(),
        inputs,
        truncation,
        seed: cli.seed,
        budget_iso_nodes: cli.budget_iso_nodes,
        budget_fuzz_count: cli.budget_fuzz_count,
        format: cli.format,
    }
}

fn execute(cli: Cli, config: &RunConfig) -> Result<Outcome> {
    let seed = cli.seed;
    Ok(match cli.command {
        Command::Validate { file } => validate(&file)?,
        Command::Esd { file, output } => match load_checkable(&file, None)? {
            Checkable::Set(x) => {
                let sd = x.esd()?;
                Outcome::artifact("simplicial set", io::sset_to_string(&sd), output, sizes(&sd))
            }
            Checkable::Groupoid(y) => {
                let sd = y.esd()?;
                let summary = format!("components per level {:?}", sd.component_counts());
                Outcome::artifact("simplicial groupoid", io::sgpd_to_string(&sd), output, summary)
            }
        },
        Command::Nerve { file, truncation, output } => {
            let x = nerve(&load_category(&file)?, truncation);
            Outcome::artifact("simplicial set", io::sset_to_string(&x), output, sizes(&x))
        }
        Command::Tw { file, output } => {
            let t = twisted_arrow(&load_category(&file)?)?;
            let summary = format!("{} objects, {} morphisms", t.object_count(), t.morphism_count());
            Outcome::artifact("category", io::category_to_string(&t), output, summary)
        }
        Command::Bar { file, truncation, output } => {
            let x = bar(&load_monoid(&file)?, truncation)?;
            Outcome::artifact("simplicial set", io::sset_to_string(&x), output, sizes(&x))
        }
        Command::Spans { file, output } => {
            let c = span_category(&load_monoid(&file)?)?;
            let summary = format!("{} objects, {} morphisms", c.object_count(), c.morphism_count());
            Outcome::artifact("category", io::category_to_string(&c), output, summary)
        }
        Command::Check(CheckCommand::Segal { file, truncation }) => {
            let r = match load_checkable(&file, truncation)? {
                Checkable::Set(x) => segal_check(&x, &subject(&file)),
                Checkable::Groupoid(y) => sgpd_segal_check(&y, &subject(&file)),
            };
            Outcome::report(code_for(r.passed()), &r, human_check(&r))?
        }
        Command::Check(CheckCommand::TwoSegal { file, reduced, truncation }) => {
            let mode = if reduced { Mode::Reduced } else { Mode::Full };
            let r = match load_checkable(&file, truncation)? {
                Checkable::Set(x) => two_segal_check(&x, mode, &subject(&file)),
                Checkable::Groupoid(y) => sgpd_two_segal_check(&y, mode, &subject(&file)),
            };
            Outcome::report(code_for(r.passed()), &r, human_check(&r))?
        }
        Command::Check(CheckCommand::Theorem { file, truncation }) => {
            let r = theorem_verify(&load_sset(&file, truncation)?, &subject(&file))?;
            Outcome::report(code_for(r.is_consistent()), &r, human_theorem(&r))?
        }
        Command::Gen(GenCommand::PartialMonoid { size, output }) => {
            let m = random_partial_monoid(size, seed)?;
            let summary = format!("{} elements, {} defined products", m.size(), m.defined_pairs().len());
            Outcome::artifact("partial monoid", io::monoid_to_string(&m), output, summary)
        }
        Command::Gen(GenCommand::Coskeletal { spec, output }) => {
            let x = random_coskeletal_sset(&parse_spec(&spec)?, seed)?;
            Outcome::artifact("simplicial set", io::sset_to_string(&x), output, sizes(&x))
        }
        Command::Gen(GenCommand::Category { output }) => {
            let c = random_category(&CategorySpec::default(), seed)?;
            let summary = format!("{} objects, {} morphisms", c.object_count(), c.morphism_count());
            Outcome::artifact("category", io::category_to_string(&c), output, summary)
        }
        Command::Sconstruction { max_card, truncation, output } => {
            let y = s_construction(max_card, truncation)?;
            let summary = format!("components per level {:?}", y.component_counts());
            Outcome::artifact("simplicial groupoid", io::sgpd_to_string(&y), output, summary)
        }
        Command::Fuzz { count, mix } => {
            if count > config.budget_fuzz_count {
                return Err(Error::Limit(format!("fuzz count {count} exceeds the budget {}", config.budget_fuzz_count)));
            }
            let f = fuzz_theorem(count, seed, mix.into());
            Outcome::report(code_for(f.violations.is_empty()), &f, human_fuzz(&f))?
        }
        Command::Draw(DrawCommand::EsdSimplex { k, output }) => {
            let dot = esd_simplex_dot(k)?;
            let summary = format!("{} lines", dot.lines().count());
            Outcome::artifact("diagram", dot, output, summary)
        }
        Command::Draw(DrawCommand::Sset { file, output }) => {
            let x = load_sset(&file, None)?;
            let dot = sset_dot(&x, "sset")?;
            let summary = format!("{} lines", dot.lines().count());
            Outcome::artifact("diagram", dot, output, summary)
        }
        Command::Iso { left, right } => iso(config, &left, &right)?,
    })
}

/// Run the command line `argv` (including the program name), writing
/// reports to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let config = run_config(&cli);
    let outcome = match execute(cli, &config) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    if let Some((path, text)) = &outcome.artifact {
        match path {
            Some(p) => {
                if let Err(e) = io::write_atomic(p, text) {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_INVALID;
                }
            }
            None => {
                let _ = out.write_all(text.as_bytes());
                return outcome.code;
            }
        }
    }
    let written = match config.format {
        Format::Human => {
            let header = format!(
                "# {} (seed {}, iso budget {}, fuzz budget {})\n",
                config.command, config.seed, config.budget_iso_nodes, config.budget_fuzz_count
            );
            out.write_all(header.as_bytes()).and_then(|_| out.write_all(outcome.human.as_bytes()))
        }
        Format::Machine => {
            let text = io::to_canonical(&Output { config: config.clone(), report: outcome.machine }).expect("serializable");
            out.write_all(text.as_bytes())
        }
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INVALID;
    }
    outcome.code
}
