//! Command-line interface: catalog inspection, counting, reduction,
//! character tables, verification and batch sweeps.
//!
//! Exit codes: 0 all verdicts hold or are not applicable; 1 a conjecture
//! failed (the report carries the counterexample); 2 usage error; 3 budget
//! exceeded; 4 internal oracle disagreement (a proved statement failed,
//! which means an implementation bug).
//!
//! The data stream (stdout) is deterministic for a fixed configuration: no
//! timestamps, fixed ordering, fixed numeric formatting. Run metadata such
//! as the worker count goes to stderr.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use crate::chars::character_table;
use crate::error::{Error, Result};
use crate::fiber::{
    count_auto, count_brute_force, count_central_quotient, count_convolve, CountOptions,
    FiberDistribution,
};
use crate::group::catalog::{self, catalog};
use crate::group::{AssocCheck, FiniteGroup};
use crate::signature::{class2_signature, normalize_type2_partial, reduce_type1, NormalForm};
use crate::verify::{
    battery, check_chirality, check_product_multiplicativity, check_rationality,
    check_uniformity_surjective, verify_bounds, verify_theorem_c, BoundMode, Verdict,
    VerificationReport,
};
use crate::word::{build_named_word, parse_word, NamedWord, Word};
use crate::DEFAULT_BUDGET;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONJECTURE_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

/// Where a group comes from: `catalog:NAME(args)` or `file:PATH`.
#[derive(Debug, Clone)]
pub enum GroupSource {
    Catalog(String),
    File(PathBuf),
}

impl GroupSource {
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(name) = s.strip_prefix("catalog:") {
            Ok(GroupSource::Catalog(name.to_string()))
        } else if let Some(path) = s.strip_prefix("file:") {
            Ok(GroupSource::File(PathBuf::from(path)))
        } else {
            Err(Error::Domain(format!(
                "group source `{s}` must start with catalog: or file:"
            )))
        }
    }

    pub fn load(&self) -> Result<FiniteGroup> {
        let check = if std::env::var("WORDLAB_FULL_ASSOC").is_ok() {
            AssocCheck::Full
        } else {
            AssocCheck::Auto
        };
        match self {
            GroupSource::Catalog(name) => catalog(name),
            GroupSource::File(path) => {
                let text = std::fs::read_to_string(path)?;
                FiniteGroup::from_json(&text, check)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Brute,
    Central,
    Convolve,
    Frobenius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

/// One resolved run: exactly one group source, one word, bounded budget.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub group: GroupSource,
    pub word: Word,
    pub word_text: String,
    pub method: Method,
    pub format: OutputFormat,
    pub workers: usize,
    pub budget: u64,
}

#[derive(Parser, Debug)]
#[command(
    name = "wordlab",
    about = "Exact word-map laboratory for finite groups",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonOpts {
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
    /// Evaluation budget; WORDLAB_BUDGET overrides the built-in default.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug)]
struct WordArg {
    /// Word text in the x1/x2 grammar.
    #[arg(long)]
    word: Option<String>,
    /// Named word `wk:N`, `left_normed:N` or `vn:N`.
    #[arg(long)]
    named: Option<String>,
    /// Minimum arity (pads with unused variables).
    #[arg(long)]
    arity: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect the group catalog.
    Catalog {
        #[command(subcommand)]
        sub: CatalogCmd,
    },
    /// Count the fiber distribution of a word map.
    Count {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        word: WordArg,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Reduce a word to its canonical (or partial) representative at a prime.
    Reduce {
        #[command(flatten)]
        word: WordArg,
        #[arg(long)]
        prime: u64,
    },
    /// Print the complex irreducible character table.
    Chartable {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Verify a bound, theorem or property on one (group, word) pair.
    Verify {
        /// amit | gamit | thmA | thmB | thmC | rational | chiral | product | uniform
        claim: String,
        #[arg(long)]
        group: String,
        /// Second group (for `product`).
        #[arg(long)]
        with: Option<String>,
        #[command(flatten)]
        word: WordArg,
        /// Index k for w_k (thmC).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Batch verification: full battery over groups x words, JSONL reports.
    Sweep {
        /// Comma-separated group sources.
        #[arg(long)]
        groups: String,
        /// One word per line; `#` comments allowed.
        #[arg(long)]
        words_file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// List catalog families and the curated sweep entries.
    List,
}

fn default_budget() -> u64 {
    std::env::var("WORDLAB_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

fn count_options(common: &CommonOpts) -> CountOptions {
    CountOptions {
        budget: common.budget.unwrap_or_else(default_budget),
        workers: common.workers.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        }),
    }
}

fn resolve_word(arg: &WordArg) -> Result<(Word, String)> {
    match (&arg.word, &arg.named) {
        (Some(_), Some(_)) => Err(Error::Domain(
            "give exactly one of --word and --named".into(),
        )),
        (None, None) => Err(Error::Domain(
            "a word is required (--word or --named)".into(),
        )),
        (Some(text), None) => {
            let w = parse_word(text, arg.arity)?;
            Ok((w.clone(), w.render()))
        }
        (None, Some(named)) => {
            let (kind, n) = named
                .split_once(':')
                .ok_or_else(|| Error::Domain(format!("named word `{named}` must be kind:N")))?;
            let kind = NamedWord::parse(kind)?;
            let n: usize = n
                .parse()
                .map_err(|_| Error::Domain(format!("bad named word index `{n}`")))?;
            let mut w = build_named_word(kind, n)?;
            if let Some(a) = arg.arity {
                w = w.with_arity(a.max(w.arity()))?;
            }
            Ok((w.clone(), w.render()))
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::TheoremViolated { .. } | Error::CriteriaDisagreement(_) => EXIT_ORACLE,
        _ => EXIT_USAGE,
    }
}

/// Runs the CLI against explicit argv and output streams; returns the exit
/// code. `main` is a thin wrapper over this, and tests call it directly.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successful exits.
            return if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        // A closed output pipe (e.g. `wordlab ... | head`) is not a failure.
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Catalog {
            sub: CatalogCmd::List,
        } => {
            writeln!(out, "families:")?;
            for (name, desc) in catalog::families() {
                writeln!(out, "  {name:<28} {desc}")?;
            }
            writeln!(out, "curated class-2 sweep entries (order <= 64):")?;
            for name in catalog::class2_small() {
                let g = catalog(name)?;
                writeln!(out, "  {name:<28} order {}", g.order())?;
            }
            writeln!(out, "odd-p class-2 entries:")?;
            for name in catalog::odd_p_class2() {
                let g = catalog(name)?;
                writeln!(out, "  {name:<28} order {}", g.order())?;
            }
            Ok(EXIT_OK)
        }
        Command::Count {
            group,
            word,
            method,
            format,
            common,
        } => {
            let source = GroupSource::parse(&group)?;
            let g = source.load()?;
            let (w, word_text) = resolve_word(&word)?;
            let opts = count_options(&common);
            writeln!(err, "# workers={} budget={}", opts.workers, opts.budget)?;
            let dist = run_count(&g, &w, method, &opts)?;
            write_distribution(out, &g, &dist, &word_text, format)?;
            Ok(EXIT_OK)
        }
        Command::Reduce { word, prime } => {
            let (w, _) = resolve_word(&word)?;
            let input_text = word.word.clone().unwrap_or_else(|| w.render());
            let sig = class2_signature(&w);
            let nf = if sig.has_zero_exponent_sums() {
                reduce_type1(&sig, prime)?
            } else {
                normalize_type2_partial(&sig, prime)?
            };
            writeln!(out, "word: {input_text}")?;
            match &nf {
                NormalForm::Type1 {
                    exponents,
                    divisors,
                    ..
                } => {
                    writeln!(out, "type: 1")?;
                    writeln!(
                        out,
                        "s: ({})",
                        exponents
                            .iter()
                            .map(|s| s.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )?;
                    writeln!(
                        out,
                        "divisors: ({})",
                        divisors
                            .iter()
                            .map(|d| d.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )?;
                }
                NormalForm::Type2Partial { s1, .. } => {
                    writeln!(out, "type: 2 (partial)")?;
                    writeln!(out, "s1: {s1}")?;
                }
            }
            writeln!(out, "canonical: {}", nf.canonical_text())?;
            Ok(EXIT_OK)
        }
        Command::Chartable { group, format } => {
            let source = GroupSource::parse(&group)?;
            let g = source.load()?;
            let table = character_table(&g)?;
            let export = table.to_export(&g);
            match format {
                OutputFormat::Json => writeln!(out, "{}", export.to_json())?,
                OutputFormat::Csv => {
                    write!(out, "degree")?;
                    for c in &export.classes {
                        write!(out, ",{c}")?;
                    }
                    writeln!(out)?;
                    let r = export.classes.len();
                    for (chi, d) in export.degrees.iter().enumerate() {
                        write!(out, "{d}")?;
                        for k in 0..r {
                            let [re, im] = export.values[chi * r + k];
                            write!(out, ",{}", format_complex(re, im))?;
                        }
                        writeln!(out)?;
                    }
                }
                OutputFormat::Table => {
                    writeln!(out, "group: {} (order {})", export.group, g.order())?;
                    writeln!(out, "classes: {}", export.classes.join(" "))?;
                    writeln!(
                        out,
                        "sizes:   {}",
                        export
                            .sizes
                            .iter()
                            .map(|s| s.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    )?;
                    let r = export.classes.len();
                    for (chi, d) in export.degrees.iter().enumerate() {
                        let row: Vec<String> = (0..r)
                            .map(|k| {
                                let [re, im] = export.values[chi * r + k];
                                format_complex(re, im)
                            })
                            .collect();
                        writeln!(out, "chi{chi} (deg {d}): {}", row.join(" "))?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            claim,
            group,
            with,
            word,
            k,
            format,
            common,
        } => {
            let source = GroupSource::parse(&group)?;
            let g = source.load()?;
            let opts = count_options(&common);
            writeln!(err, "# workers={} budget={}", opts.workers, opts.budget)?;
            let report = match claim.as_str() {
                "amit" | "gamit" | "thmA" | "thmB" => {
                    let mode = match claim.as_str() {
                        "amit" => BoundMode::Amit,
                        "gamit" => BoundMode::GeneralizedAmit,
                        "thmA" => BoundMode::TwoVariable,
                        _ => BoundMode::OddPrime,
                    };
                    let (w, _) = resolve_word(&word)?;
                    verify_bounds(&g, &w, mode, &opts)?
                }
                "thmC" => verify_theorem_c(&g, k.unwrap_or(1), &opts)?,
                "rational" => {
                    let (w, _) = resolve_word(&word)?;
                    check_rationality(&g, &w, &opts)?
                }
                "chiral" => {
                    let (w, _) = resolve_word(&word)?;
                    check_chirality(&g, &w, &opts)?
                }
                "uniform" => {
                    let (w, _) = resolve_word(&word)?;
                    check_uniformity_surjective(&g, &w, &opts)?
                }
                "product" => {
                    let with = with.ok_or_else(|| {
                        Error::Domain("`verify product` needs --with for the second factor".into())
                    })?;
                    let other = GroupSource::parse(&with)?.load()?;
                    let (w, _) = resolve_word(&word)?;
                    check_product_multiplicativity(&g, &other, &w, &opts)?
                }
                other => {
                    return Err(Error::Domain(format!("unknown claim `{other}`")));
                }
            };
            write_reports(out, std::slice::from_ref(&report), format)?;
            Ok(if report.verdict == Verdict::Fails {
                EXIT_CONJECTURE_FAILED
            } else {
                EXIT_OK
            })
        }
        Command::Sweep {
            groups,
            words_file,
            common,
        } => {
            let opts = count_options(&common);
            writeln!(err, "# workers={} budget={}", opts.workers, opts.budget)?;
            let sources: Vec<GroupSource> = groups
                .split(',')
                .map(|s| GroupSource::parse(s.trim()))
                .collect::<Result<_>>()?;
            let text = std::fs::read_to_string(&words_file)?;
            let words: Vec<String> = text
                .lines()
                .map(|l| l.trim())
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| l.to_string())
                .collect();
            let mut any_failed = false;
            for source in &sources {
                let g = source.load()?;
                for text in &words {
                    let w = parse_word(text, None)?;
                    for report in battery(&g, &w, &opts)? {
                        any_failed |= report.verdict == Verdict::Fails;
                        writeln!(out, "{}", report.to_json())?;
                    }
                }
            }
            Ok(if any_failed {
                EXIT_CONJECTURE_FAILED
            } else {
                EXIT_OK
            })
        }
    }
}

fn run_count(
    g: &FiniteGroup,
    w: &Word,
    method: Method,
    opts: &CountOptions,
) -> Result<FiberDistribution> {
    match method {
        Method::Auto => count_auto(g, w, opts),
        Method::Brute => count_brute_force(g, w, opts),
        Method::Central => count_central_quotient(g, w, opts),
        Method::Convolve => count_convolve(g, w, opts),
        Method::Frobenius => {
            let k = w.arity() / 2;
            let expected = (k >= 1)
                .then(|| build_named_word(NamedWord::Wk, k))
                .transpose()?;
            if expected.as_ref() != Some(w) {
                return Err(Error::Domain(
                    "--method frobenius applies only to the words wk:N".into(),
                ));
            }
            let table = character_table(g)?;
            crate::chars::frobenius_count_wk(g, &table, k)
        }
    }
}

fn write_distribution(
    out: &mut dyn Write,
    g: &FiniteGroup,
    dist: &FiberDistribution,
    word_text: &str,
    format: OutputFormat,
) -> Result<()> {
    match format {
        OutputFormat::Json => {
            writeln!(out, "{}", dist.to_export(g, word_text).to_json())?;
        }
        OutputFormat::Csv => {
            writeln!(out, "element,count")?;
            for e in g.elements() {
                let c = dist.count(e);
                if !c.is_zero() {
                    writeln!(out, "{},{}", g.label(e), c)?;
                }
            }
        }
        OutputFormat::Table => {
            for e in g.elements() {
                let c = dist.count(e);
                if !c.is_zero() {
                    writeln!(out, "{}: {}", g.label(e), c)?;
                }
            }
        }
    }
    Ok(())
}

fn write_reports(
    out: &mut dyn Write,
    reports: &[VerificationReport],
    format: OutputFormat,
) -> Result<()> {
    match format {
        OutputFormat::Json | OutputFormat::Csv => {
            for r in reports {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        OutputFormat::Table => {
            for r in reports {
                writeln!(
                    out,
                    "{} on {} with {}: {}",
                    r.claim,
                    r.group,
                    r.word,
                    r.verdict.as_str()
                )?;
                for m in &r.margins {
                    writeln!(out, "  {}: {} >= {}", m.element, m.count, m.bound)?;
                }
                if let Some(ce) = &r.counterexample {
                    writeln!(
                        out,
                        "  counterexample: {} has {} (needs {})",
                        ce.element, ce.count, ce.bound
                    )?;
                }
                if let Some(h) = &r.hypothesis {
                    writeln!(out, "  hypothesis violated: {h}")?;
                }
                for n in &r.notes {
                    writeln!(out, "  note: {n}")?;
                }
            }
        }
    }
    Ok(())
}

fn format_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}
