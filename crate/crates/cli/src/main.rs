use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use galoisirr::char_table::{CharacterTable, DEFAULT_SEED};
use galoisirr::corpus::{default_corpus, CorpusEntry, Expected};
use galoisirr::io::{GroupFile, ReportFormat};
use galoisirr::number_theory::zsigmondy_prime;
use galoisirr::suite::{
    check_theorem, classify_corpus, default_sweep_points, render_results, run_sweep,
    SweepStatus, MIN_COPRIME_ACTIONS, SWEEP_MAX_FIELD, SWEEP_MAX_ORDER, SWEEP_PRIMES,
};
use galoisirr::{
    analyze_structure, construct_case, CaseParams, CaseTag, ConstructError, RunConfig, Verdict,
};
use serde::Serialize;

/// Exit code for mathematical negatives: invalid parameters, failed
/// assertions, failed criteria.
const EXIT_NEGATIVE: u8 = 1;
/// Exit code for tool errors.
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "galoisirr",
    version,
    about = "Exact character tables and Galois-class classification of finite permutation groups"
)]
struct Cli {
    /// Seed for eigenspace splitting and complement search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Largest group order to enumerate; for `sweep`, the largest nominal
    /// order of a parameter point (default 1000 there).
    #[arg(long, global = true)]
    max_order: Option<u64>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for sweeps and corpus runs (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a member of one case family and write it as a group file.
    Construct {
        /// Case tag, a1 through a7.
        tag: CaseTag,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        /// Defaults to the value the family requires.
        #[arg(long)]
        d: Option<u64>,
        /// Cover height for a3 and a7 (default 2).
        #[arg(long)]
        height: Option<u32>,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the character table of a group file.
    Chartab { file: PathBuf },
    /// Classify a group file.
    Classify {
        file: PathBuf,
        /// Report format; overrides --format.
        #[arg(long, value_enum)]
        report: Option<Format>,
        /// Exit 1 unless irr_s is a single Galois class.
        #[arg(long)]
        expect_single: bool,
        /// Exit 1 unless the group gets this case tag.
        #[arg(long)]
        expect_tag: Option<CaseTag>,
    },
    /// Print a Zsigmondy prime for p^n - 1, or `none`.
    Zsigmondy { p: u64, n: u32 },
    /// Construct and classify every parameter point of the given families.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "a1,a2,a3,a4,a5,a6,a7")]
        tags: Vec<CaseTag>,
        /// Census file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance criteria over the corpus and print a pass/fail matrix.
    CheckTheorem {
        /// Comma-separated corpus group names (default: the whole corpus).
        #[arg(long, value_delimiter = ',')]
        corpus: Option<Vec<String>>,
        /// List the corpus group names and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Serialize)]
struct WithConfig<'a, T: Serialize> {
    config: &'a RunConfig,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct TableOut {
    table: galoisirr::char_table::TableJson,
}

#[derive(Serialize)]
struct ReportOut<'a> {
    report: &'a galoisirr::ClassificationReport,
}

#[derive(Serialize)]
struct CheckOut<'a> {
    groups: &'a [GroupLine],
    criteria: &'a [galoisirr::suite::CriterionResult],
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn config(cli: &Cli, default_format: Format) -> RunConfig {
    let mut cfg = RunConfig {
        seed: cli.seed,
        format: cli.format.unwrap_or(default_format).into(),
        threads: cli.threads,
        ..RunConfig::default()
    };
    if let Some(m) = cli.max_order {
        if !matches!(cli.command, Command::Sweep { .. }) {
            cfg.order_bound = m as usize;
        }
    }
    cfg
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match &cli.command {
        Command::Construct {
            tag,
            p,
            n,
            d,
            height,
            out,
        } => {
            let params = CaseParams::new(
                *tag,
                *p,
                *n,
                d.unwrap_or_else(|| CaseParams::default_d(*tag, *p)),
                height.unwrap_or_else(|| CaseParams::default_height(*tag)),
            );
            cmd_construct(&params, out.as_deref())
        }
        Command::Chartab { file } => cmd_chartab(&config(cli, Format::Text), file),
        Command::Classify {
            file,
            report,
            expect_single,
            expect_tag,
        } => {
            let mut cfg = config(cli, Format::Text);
            if let Some(r) = report {
                cfg.format = (*r).into();
            }
            cmd_classify(&cfg, file, *expect_single, *expect_tag)
        }
        Command::Zsigmondy { p, n } => {
            match zsigmondy_prime(*p, *n)? {
                Some(q) => println!("{q}"),
                None => println!("none"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { tags, out } => {
            let cfg = config(cli, Format::Json);
            cmd_sweep(&cfg, tags, cli.max_order.unwrap_or(SWEEP_MAX_ORDER), out.as_deref())
        }
        Command::CheckTheorem { corpus, list } => {
            let cfg = config(cli, Format::Text);
            if *list {
                for e in default_corpus() {
                    println!("{}", e.name);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let (entries, full) = select_corpus(corpus.as_deref());
            cmd_check_theorem(&cfg, &entries, full)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn read_group(cfg: &RunConfig, path: &Path) -> Result<(GroupFile, galoisirr::PermGroup)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = GroupFile::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    let group = file
        .to_group_bounded(cfg.order_bound)
        .with_context(|| format!("building the group in {}", path.display()))?;
    Ok((file, group))
}

fn cmd_construct(params: &CaseParams, out: Option<&Path>) -> Result<ExitCode> {
    match construct_case(params) {
        Ok(g) => {
            let name = format!(
                "{}(p={},n={},d={},h={})",
                params.tag, params.p, params.n, params.d, params.height
            );
            emit(out, &GroupFile::from_group(&g, Some(&name)).render())?;
            eprintln!("{name}: order {}", g.order());
            Ok(ExitCode::SUCCESS)
        }
        Err(ConstructError::ParamsInvalid(reason)) => {
            eprintln!("PARAMS-INVALID: {reason}");
            Ok(ExitCode::from(EXIT_NEGATIVE))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_chartab(cfg: &RunConfig, path: &Path) -> Result<ExitCode> {
    let (_, g) = read_group(cfg, path)?;
    let table = CharacterTable::compute_bounded(&g, cfg.seed, cfg.conductor_bound)?;
    let text = match cfg.format {
        ReportFormat::Text => table.to_text(),
        ReportFormat::Json => json_line(&WithConfig {
            config: cfg,
            body: TableOut {
                table: table.to_json(),
            },
        })?,
    };
    emit(None, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(
    cfg: &RunConfig,
    path: &Path,
    expect_single: bool,
    expect_tag: Option<CaseTag>,
) -> Result<ExitCode> {
    let (_, g) = read_group(cfg, path)?;
    let table = CharacterTable::compute_bounded(&g, cfg.seed, cfg.conductor_bound)?;
    let report = analyze_structure(&g, &table, cfg.seed)?;
    let text = match cfg.format {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => json_line(&WithConfig {
            config: cfg,
            body: ReportOut { report: &report },
        })?,
    };
    emit(None, &text)?;
    let mut ok = true;
    if let Some(v) = &report.theorem_violation {
        eprintln!("THEOREM-VIOLATION: {v}");
        ok = false;
    }
    if expect_single && report.verdict != Verdict::SingleGaloisClass {
        eprintln!("expected a single Galois class, got {}", report.verdict);
        ok = false;
    }
    if let Some(tag) = expect_tag {
        if report.case_tag != Some(tag) {
            let got = report.case_tag.map_or("no tag".to_string(), |t| t.to_string());
            eprintln!("expected case {tag}, got {got}");
            ok = false;
        }
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NEGATIVE)
    })
}

#[derive(Serialize)]
struct Census<'a> {
    tags: &'a [CaseTag],
    primes: &'a [u64],
    max_field: u64,
    max_order: u64,
    records: Vec<galoisirr::suite::SweepRecord>,
}

fn cmd_sweep(cfg: &RunConfig, tags: &[CaseTag], max_order: u64, out: Option<&Path>) -> Result<ExitCode> {
    let points = default_sweep_points(tags, max_order);
    let records = run_sweep(&points, cfg.seed);
    let classified = records
        .iter()
        .filter(|r| r.status == SweepStatus::Classified)
        .count();
    let invalid = records
        .iter()
        .filter(|r| r.status == SweepStatus::ParamsInvalid)
        .count();
    let unconfirmed: Vec<String> = records
        .iter()
        .filter(|r| r.status == SweepStatus::Error || (r.report.is_some() && !r.confirms_case()))
        .map(|r| {
            let q = &r.params;
            format!("{} p={} n={} d={} h={}", q.tag, q.p, q.n, q.d, q.height)
        })
        .collect();
    let census = Census {
        tags,
        primes: &SWEEP_PRIMES,
        max_field: SWEEP_MAX_FIELD,
        max_order,
        records,
    };
    let text = match cfg.format {
        ReportFormat::Json => json_line(&WithConfig {
            config: cfg,
            body: &census,
        })?,
        ReportFormat::Text => census
            .records
            .iter()
            .map(|r| {
                let q = &r.params;
                let what = match (&r.report, &r.reason) {
                    (Some(rep), _) => format!(
                        "{} {}",
                        rep.verdict,
                        rep.case_tag.map_or("-".to_string(), |t| t.to_string())
                    ),
                    (None, Some(reason)) => reason.clone(),
                    (None, None) => String::new(),
                };
                let status = match r.status {
                    SweepStatus::Classified => "ok",
                    SweepStatus::ParamsInvalid => "PARAMS-INVALID",
                    SweepStatus::Error => "error",
                };
                format!(
                    "{} p={} n={} d={} h={} order={} {status} {what}\n",
                    q.tag,
                    q.p,
                    q.n,
                    q.d,
                    q.height,
                    r.order.map_or("-".to_string(), |o| o.to_string())
                )
            })
            .collect(),
    };
    emit(out, &text)?;
    eprintln!(
        "{} points: {classified} constructed, {invalid} PARAMS-INVALID, {} unconfirmed",
        points.len(),
        unconfirmed.len()
    );
    for u in &unconfirmed {
        eprintln!("unconfirmed: {u}");
    }
    Ok(if unconfirmed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NEGATIVE)
    })
}

/// The requested corpus entries and whether they are the whole corpus.
/// Exits with a usage error on an empty or unknown selection.
fn select_corpus(names: Option<&[String]>) -> (Vec<CorpusEntry>, bool) {
    let all = default_corpus();
    let Some(names) = names else {
        return (all, true);
    };
    let names: Vec<&str> = names
        .iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .collect();
    let mut cmd = Cli::command();
    if names.is_empty() {
        cmd.error(clap::error::ErrorKind::InvalidValue, "the corpus is empty")
            .exit();
    }
    let mut out = Vec::new();
    for name in names {
        match all.iter().find(|e| e.name == name) {
            Some(e) => out.push(e.clone()),
            None => cmd
                .error(
                    clap::error::ErrorKind::InvalidValue,
                    format!("unknown corpus group {name:?} (see --list)"),
                )
                .exit(),
        }
    }
    let full = out.len() == all.len();
    (out, full)
}

#[derive(Serialize)]
struct GroupLine {
    name: String,
    order: u64,
    verdict: Option<Verdict>,
    case_tag: Option<CaseTag>,
    expected_verdict: Verdict,
    expected_tag: Option<CaseTag>,
    matches_expected: bool,
}

fn cmd_check_theorem(cfg: &RunConfig, entries: &[CorpusEntry], full: bool) -> Result<ExitCode> {
    if entries.is_empty() {
        bail!("the corpus is empty");
    }
    let records = classify_corpus(entries, cfg.seed);
    let lines: Vec<GroupLine> = entries
        .iter()
        .zip(&records)
        .map(|(e, r)| {
            let Expected { verdict, tag, .. } = e.expected;
            GroupLine {
                name: e.name.to_string(),
                order: r.order,
                verdict: r.report.as_ref().map(|x| x.verdict),
                case_tag: r.report.as_ref().and_then(|x| x.case_tag),
                expected_verdict: verdict,
                expected_tag: tag,
                matches_expected: r.matches_expected,
            }
        })
        .collect();
    let min_actions = if full { MIN_COPRIME_ACTIONS } else { 0 };
    let results = check_theorem(entries, cfg.seed, min_actions);
    let all_pass = results.iter().all(|r| r.passed);
    let text = match cfg.format {
        ReportFormat::Json => json_line(&WithConfig {
            config: cfg,
            body: CheckOut {
                groups: &lines,
                criteria: &results,
                passed: all_pass,
            },
        })?,
        ReportFormat::Text => {
            let mut s = String::new();
            for l in &lines {
                let tag = |t: Option<CaseTag>| t.map_or("-".to_string(), |t| t.to_string());
                let got = l.verdict.map_or("error".to_string(), |v| v.to_string());
                s.push_str(&format!(
                    "{:<10} order {:>4}  {:<17} {:<3}  expected {:<17} {:<3}  {}\n",
                    l.name,
                    l.order,
                    got,
                    tag(l.case_tag),
                    l.expected_verdict.to_string(),
                    tag(l.expected_tag),
                    if l.matches_expected { "ok" } else { "MISMATCH" }
                ));
            }
            s.push_str(&render_results(&results));
            s.push_str(if all_pass { "all criteria pass\n" } else { "some criteria fail\n" });
            s
        }
    };
    emit(None, &text)?;
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NEGATIVE)
    })
}
