//! Command-line front end: `check`, `construct`, `verify` and `oracle`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use quantalib_core::completion::PresheafConfig;
use quantalib_core::constructions::{
    distributor_quantaloid, enumerate_sheaves, morita_quantale, CensusConfig, FiniteGroupoid, SheafMode,
};
use quantalib_core::iso::find_isomorphism;
use quantalib_core::quantaloid::{si, ssi, CauchyBilateralConfig, PredicateSuite};
use quantalib_core::sites::{closed_crible_quantaloid, topology_from_quantaloid, FiniteSite};
use quantalib_core::{corpus, Error, FiniteQuantaloid};
use serde_json::{json, Value};

use crate::format::{
    groupoid_from_json, load_input, parse_input, ClassListJson, FormatError, Input, QuantaloidJson, SiteJson,
};
use crate::oracle::{count_gsets_by_elements, count_gsets_by_generators, count_locale_sheaves};
use crate::report::{timed, Report, ReportSet, Verdict};
use crate::suites::{self, Corpus, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "quantalib", version, about = "Finite quantaloids, their predicates and constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Node cap for presheaf and category enumeration.
    #[arg(long, global = true)]
    pub max_presheaves: Option<u64>,
    /// Node cap for each Morita-equivalence search.
    #[arg(long, global = true)]
    pub max_morita: Option<u64>,
    /// Node cap for the clique search behind Cauchy-bilaterality.
    #[arg(long, global = true)]
    pub max_cliques: Option<u64>,
    /// Record wall time per report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run predicates on a quantaloid, site or groupoid.
    Check {
        /// Built-in name or JSON file.
        input: String,
        /// Comma-separated predicate names (default: all).
        #[arg(long, value_delimiter = ',')]
        predicates: Vec<String>,
    },
    /// Build a derived structure and write it as JSON.
    Construct {
        input: String,
        #[arg(long, value_enum)]
        op: Op,
        /// Object bound for `sh-q` and `rel-q`.
        #[arg(long, default_value_t = 2)]
        max: usize,
        /// Categories counted by `sh-q`: symmetric ones over `Q_ssi`, or all over `Q_si`.
        #[arg(long, value_enum, default_value_t = Mode::Symmetric)]
        mode: Mode,
        /// Write the artifact here instead of embedding it in the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite over the built-in corpus.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Mutate one composition entry of this corpus quantaloid first.
        #[arg(long)]
        inject_fault: Option<String>,
    },
    /// Run a brute-force counter on its own.
    Oracle {
        #[arg(long, value_enum)]
        kind: OracleKind,
        /// `cyclic:K`, `pair:K` or a groupoid file for `gsets`; a one-object
        /// locale quantale (name or file) for `locale-sheaves`.
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 2)]
        max: usize,
        /// Bound the number of elements instead of orbits (`gsets` only).
        #[arg(long)]
        by_elements: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Ssi,
    Split,
    RelQ,
    ShQ,
    MoritaQuantale,
    SiteRoundtrip,
    CribleQuantaloid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symmetric,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Gsets,
    LocaleSheaves,
}

/// Exit codes.
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Why a command could not produce a report.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Cap(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Failed(_) => EXIT_FAIL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Cap(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e.core() {
            Some(Error::ResourceCap { .. }) => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap { .. } => CliError::Cap(e.to_string()),
            Error::NotApplicable(_) | Error::MissingInvolution | Error::UnknownName(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl Cli {
    fn config(&self) -> SuiteConfig {
        let mut cfg = SuiteConfig::default();
        if let Some(n) = self.max_presheaves {
            cfg.presheaf = PresheafConfig { max_nodes: n };
        }
        if let Some(n) = self.max_morita {
            cfg.max_morita = n;
        }
        if let Some(n) = self.max_cliques {
            cfg.cauchy = CauchyBilateralConfig { max_nodes: n };
        }
        cfg
    }

    fn census(&self, cfg: &SuiteConfig) -> CensusConfig {
        CensusConfig {
            max_category_nodes: self.max_presheaves.unwrap_or(CensusConfig::default().max_category_nodes),
            max_morita_nodes: cfg.max_morita,
            ..CensusConfig::default()
        }
    }

    fn render(&self, set: &ReportSet) -> String {
        match self.format {
            OutputFormat::Json => set.to_json(),
            OutputFormat::Text => set.to_text(),
        }
    }
}

/// Parses `args`, runs the command, writes the report to `out` and returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(set) => {
            let _ = out.write_all(cli.render(&set).as_bytes());
            set.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<ReportSet, CliError> {
    let cfg = cli.config();
    match &cli.command {
        Command::Check { input, predicates } => check(cli, &cfg, input, predicates),
        Command::Construct { input, op, max, mode, out } => construct(cli, &cfg, input, *op, *max, *mode, out.as_ref()),
        Command::Verify { suite, inject_fault } => verify(cli, &cfg, suite, inject_fault.as_deref()),
        Command::Oracle { kind, input, max, by_elements } => oracle(&cfg, *kind, input, *max, *by_elements),
    }
}

fn check(cli: &Cli, cfg: &SuiteConfig, input: &str, names: &[String]) -> Result<ReportSet, CliError> {
    let q = Arc::new(load_input(input)?.quantaloid()?);
    let preds = if names.is_empty() {
        PredicateSuite::ALL.to_vec()
    } else {
        names
            .iter()
            .map(|n| {
                PredicateSuite::from_name(n.trim()).ok_or_else(|| CliError::Input(format!("unknown predicate {n:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    let mut reports = Vec::new();
    for p in preds {
        reports.extend(timed(cli.timing, || vec![Report::from_check(input, p.name(), &q, q.check(p, &cfg.cauchy))]));
    }
    Ok(ReportSet::new(reports))
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("artifact serializes")
}

/// A site given by name or file, preferring sites over quantaloids of the same name.
fn load_site(input: &str) -> Result<FiniteSite, CliError> {
    if let Some(s) = corpus::site_by_name(input) {
        return Ok(s);
    }
    if corpus::quantaloid_by_name(input).is_none() {
        if let Input::Site(s) = parse_input(&read(input)?)? {
            return Ok(s);
        }
    }
    Err(CliError::Input(format!("{input}: expected a site")))
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn construct(
    cli: &Cli,
    cfg: &SuiteConfig,
    input: &str,
    op: Op,
    max: usize,
    mode: Mode,
    out: Option<&PathBuf>,
) -> Result<ReportSet, CliError> {
    let op_name = op.to_possible_value().expect("named").get_name().to_string();
    let mut report = Report::pass(input, op_name.as_str());
    let artifact: Value = match op {
        Op::CribleQuantaloid => {
            let site = load_site(input)?;
            let r = Arc::new(closed_crible_quantaloid(&site)?.quantaloid);
            report = Report::from_check(input, &op_name, &r, Ok(r.closed_crible_violation()))
                .with_detail(format!("{} objects, closed-crible axioms checked on the result", r.n()));
            to_value(&QuantaloidJson::export(&r))
        }
        _ => {
            let q = load_input(input)?.quantaloid()?;
            match op {
                Op::Ssi | Op::Split => {
                    let s = if op == Op::Ssi { ssi(&q)? } else { si(&q)? };
                    let idempotents: Vec<String> = s.idempotents.iter().map(|&e| q.describe(e)).collect();
                    report =
                        report.with_data(json!({ "objects": s.quantaloid.object_names(), "idempotents": idempotents }));
                    to_value(&QuantaloidJson::export(&s.quantaloid))
                }
                Op::MoritaQuantale => {
                    let cap = usize::try_from(cfg.presheaf.max_nodes).unwrap_or(usize::MAX);
                    let m = morita_quantale(&q, cap)?;
                    report = report.with_detail(format!("{} elements", m.quantale.hom(0, 0).len()));
                    to_value(&QuantaloidJson::export(&m.quantale))
                }
                Op::ShQ | Op::RelQ => {
                    let sheaf_mode = if mode == Mode::Symmetric { SheafMode::Symmetric } else { SheafMode::All };
                    let census = enumerate_sheaves(&q, max, sheaf_mode, &cli.census(cfg))?;
                    let base = &census.base.quantaloid;
                    if census.unknown > 0 {
                        report.verdict = Verdict::Unknown;
                        report = report.with_detail(format!("{} comparisons hit the Morita cap", census.unknown));
                    }
                    report = report.with_data(json!({
                        "max_objects": max,
                        "candidates": census.candidates,
                        "classes": census.classes.len(),
                    }));
                    if op == Op::ShQ {
                        to_value(&ClassListJson::export(base, &census.classes))
                    } else {
                        let names = (0..census.classes.len()).map(|i| format!("A{i}")).collect();
                        let r = distributor_quantaloid(base, names, &census.classes, cfg.presheaf.max_nodes)?;
                        to_value(&QuantaloidJson::export(&r))
                    }
                }
                Op::SiteRoundtrip => {
                    let site = topology_from_quantaloid(&q)?;
                    let back = closed_crible_quantaloid(&site)?.quantaloid;
                    let iso = find_isomorphism(&q, &back, &cfg.iso)?;
                    let ok = iso.as_ref().is_some_and(|i| i.verify(&q, &back));
                    let detail = if ok {
                        "R(Map(Q), J(Q)) is isomorphic to Q"
                    } else {
                        "R(Map(Q), J(Q)) is not isomorphic to Q"
                    };
                    report = Report::expect(input, op_name.as_str(), ok, detail);
                    if !ok {
                        // the round trip only holds on quantaloids passing the closed-crible axioms
                        let q = Arc::new(q);
                        if let Some(v) = q.closed_crible_violation() {
                            report = report.with_violation(&q, v, None);
                        }
                    }
                    to_value(&SiteJson::export(&site))
                }
                Op::CribleQuantaloid => unreachable!(),
            }
        }
    };
    match out {
        Some(path) => {
            let mut text = serde_json::to_string_pretty(&artifact).expect("artifact serializes");
            text.push('\n');
            std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            report = report.with_detail_suffix(format!("written to {}", path.display()));
        }
        None => {
            let data = report.data.take();
            report.data = Some(match data {
                Some(Value::Object(mut m)) => {
                    m.insert("artifact".into(), artifact);
                    Value::Object(m)
                }
                _ => json!({ "artifact": artifact }),
            });
        }
    }
    Ok(ReportSet::new(vec![report]))
}

fn verify(cli: &Cli, cfg: &SuiteConfig, suite: &str, fault: Option<&str>) -> Result<ReportSet, CliError> {
    let mut criteria = suites::suite(suite).ok_or_else(|| {
        CliError::Input(format!("unknown suite {suite:?}; expected one of {}", suites::SUITE_NAMES.join(", ")))
    })?;
    let mut corpus = Corpus::builtin();
    let mut reports = Vec::new();
    if let Some(name) = fault {
        corpus =
            corpus.with_fault(name).ok_or_else(|| CliError::Input(format!("no corpus quantaloid named {name:?}")))?;
        let f = corpus.fault.clone().expect("fault recorded");
        let l = corpus.get(name).expect("entry").hom(0, 0);
        reports.push(Report::new(name, "injected-fault", Verdict::Skipped).with_detail(format!(
            "{} ∘ {} set to {} (was {})",
            l.name(f.g),
            l.name(f.f),
            l.name(f.replacement),
            l.name(f.original)
        )));
        // fault detection itself runs on the clean corpus
        criteria.retain(|c| c.number != 12);
    }
    for crit in &criteria {
        let mut rs = timed(cli.timing, || (crit.run)(&corpus, cfg));
        for r in &mut rs {
            r.check = format!("{}/{}", crit.name, r.check);
        }
        reports.extend(rs);
    }
    Ok(ReportSet::new(reports))
}

fn groupoid_arg(input: &str) -> Result<FiniteGroupoid, CliError> {
    let parsed = input.split_once(':').and_then(|(kind, k)| Some((kind, k.parse::<usize>().ok()?)));
    match parsed {
        Some(("cyclic", k)) => Ok(FiniteGroupoid::cyclic(k)?),
        Some(("pair", k)) => Ok(FiniteGroupoid::pair(k)?),
        _ => {
            let text = read(input)?;
            Ok(groupoid_from_json(&text)?)
        }
    }
}

fn oracle(
    cfg: &SuiteConfig,
    kind: OracleKind,
    input: &str,
    max: usize,
    by_elements: bool,
) -> Result<ReportSet, CliError> {
    let nodes = cfg.oracle_nodes;
    let (check, count) = match kind {
        OracleKind::Gsets => {
            let g = groupoid_arg(input)?;
            if by_elements {
                ("gsets-by-elements", count_gsets_by_elements(&g, max, nodes)?)
            } else {
                ("gsets-by-orbits", count_gsets_by_generators(&g, max, nodes)?)
            }
        }
        OracleKind::LocaleSheaves => {
            let q: FiniteQuantaloid = load_input(input)?.quantaloid()?;
            if q.n() != 1 {
                return Err(CliError::Input(format!("{input}: expected a one-object quantale")));
            }
            ("locale-sheaves", count_locale_sheaves(q.hom(0, 0), max, nodes)?)
        }
    };
    let r = Report::pass(input, check).with_data(json!({ "max": max, "count": count }));
    Ok(ReportSet::new(vec![r]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("quantalib").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_builtin_locale() {
        let (code, out, _) = run_str(&["check", "locale3", "--predicates", "grothendieck,modular"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("PASS    locale3 grothendieck"));
    }

    #[test]
    fn unknown_predicate_is_an_input_error() {
        let (code, _, err) = run_str(&["check", "locale3", "--predicates", "nope"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("nope"));
    }

    #[test]
    fn failing_predicate_exits_one() {
        let (code, out, _) = run_str(&["check", "trunc3", "--predicates", "modular"]);
        assert_eq!(code, EXIT_FAIL);
        assert!(out.contains("witness"));
    }

    #[test]
    fn oracle_counts() {
        let (code, out, _) = run_str(&[
            "--format",
            "json",
            "oracle",
            "--kind",
            "gsets",
            "--input",
            "cyclic:2",
            "--max",
            "2",
            "--by-elements",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["reports"][0]["data"]["count"], 4);
        let (_, out, _) =
            run_str(&["--format", "json", "oracle", "--kind", "locale-sheaves", "--input", "locale3", "--max", "2"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["reports"][0]["data"]["count"], 7);
    }

    #[test]
    fn cap_flags_reach_the_search() {
        let (code, _, _) =
            run_str(&["--max-presheaves", "1", "construct", "z2-groupoid", "--op", "sh-q", "--max", "2"]);
        assert_eq!(code, EXIT_CAP);
    }
}
