use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use syllogism_core::eval::{self, F1Averaging, MetricsConfig};
use syllogism_core::normalize::fixture::{FixtureNormalizer, FixtureStore, RecordingNormalizer};
use syllogism_core::normalize::remote::{RemoteConfig, RemoteNormalizer};
use syllogism_core::normalize::{self, normalize_en, Engine, Mode, RulesNormalizer};
use syllogism_core::oracle::{enumerate_forms_with, Oracle, DEFAULT_MAX_UNIVERSE};
use syllogism_core::parser::{parse_sentence, render_proposition};
use syllogism_core::synthetic;
use syllogism_core::{
    analyze, judge, parse_canonical, select_relevant, Basis, MalformedReason, Proposition, Syllogism, TrivialKind,
    ValidityConfig, ValidityTable, ValidityVerdict,
};

const SCHEMA_VERSION: u32 = 1;

/// Input or usage problem.
const EXIT_INPUT: u8 = 2;
/// Derived table disagrees with the built-in one.
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "syllogism", version, about = "Deterministic categorical syllogism checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse canonical sentences and list the propositions.
    Parse(ParseArgs),
    /// Classify an argument as valid or invalid.
    Validate(ValidateArgs),
    /// Find the premises that license the conclusion.
    Relevance(RelevanceArgs),
    /// Derive the valid-form table from finite models.
    Oracle(OracleArgs),
    /// Score a pipeline on a labeled dataset.
    Eval(EvalArgs),
    /// Turn raw text into canonical form.
    Normalize(NormalizeArgs),
    /// Write a generated corpus as JSON lines.
    Synth(SynthArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Argument text; sentences end with a period.
    text: Option<String>,
    /// Read the text from a file instead.
    #[arg(long, short, conflicts_with = "text")]
    file: Option<PathBuf>,
}

impl InputArgs {
    fn read(&self) -> Result<String> {
        match (&self.text, &self.file) {
            (Some(t), _) => Ok(t.clone()),
            (None, Some(p)) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
            (None, None) => bail!("give the argument text or --file"),
        }
    }
}

#[derive(Args)]
struct ParseArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RuleArgs {
    /// Reason without existential import.
    #[arg(long)]
    no_import: bool,
    /// Trivial rules to apply: `all`, `none`, or a comma list such as
    /// `petitio-principii,explosion`.
    #[arg(long, default_value = "all")]
    trivial: String,
    /// Consult the mood/figure table before the trivial rules.
    #[arg(long)]
    structure_first: bool,
}

impl RuleArgs {
    fn config(&self) -> Result<ValidityConfig> {
        let import = !self.no_import;
        let kinds: Vec<TrivialKind> = match self.trivial.trim() {
            "all" => TrivialKind::ALL
                .into_iter()
                .filter(|k| import || !k.requires_import())
                .collect(),
            "none" | "" => Vec::new(),
            list => list
                .split(',')
                .map(|s| s.parse::<TrivialKind>().map_err(|e| anyhow!(e)))
                .collect::<Result<_>>()?,
        };
        Ok(ValidityConfig::new(import, kinds, !self.structure_first)?)
    }
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    rules: RuleArgs,
    /// Accept English paraphrases ("every X is Y", ...) sentence by sentence.
    #[arg(long)]
    english: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RelevanceArgs {
    /// One sentence per line; the last line is the conclusion.
    file: PathBuf,
    #[command(flatten)]
    rules: RuleArgs,
    /// Accept English paraphrases instead of canonical sentences only.
    #[arg(long)]
    english: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    no_import: bool,
    /// Compare with the built-in table and exit 3 on any difference.
    #[arg(long)]
    diff_table: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_UNIVERSE)]
    max_universe: usize,
    /// Reference table file to compare against instead of the built-in one.
    #[arg(long, hide = true)]
    against: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EvalArgs {
    dataset: PathBuf,
    /// `rules` or `fixtures`.
    #[arg(long, default_value = "rules")]
    pipeline: String,
    /// Recorded normalizer responses for the fixtures pipeline.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Write the metrics summary as JSON here.
    #[arg(long)]
    metrics_out: Option<PathBuf>,
    /// Write the full per-record report as JSON here.
    #[arg(long)]
    report_out: Option<PathBuf>,
    /// Premise F1 averaging: `per-record` or `per-index`.
    #[arg(long, default_value = "per-record")]
    f1: String,
    /// Print the summary as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct NormalizeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// `english-norm`, `epn-validity` or `epn-relevance`.
    #[arg(long, default_value = "english-norm")]
    mode: String,
    /// `rules`, `remote` or `fixture`.
    #[arg(long, default_value = "rules")]
    engine: String,
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// JSON file with endpoint, model, api_key, timeout_secs, max_in_flight.
    #[arg(long)]
    config: Option<PathBuf>,
    /// With the remote engine, append the response to this fixture file.
    #[arg(long)]
    record: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// `corpus` (content-effect corpus) or `relevance`.
    kind: String,
    #[arg(long, default_value_t = synthetic::DEFAULT_SEED)]
    seed: u64,
    /// Valid and invalid instance counts for `relevance`.
    #[arg(long, default_value_t = 200)]
    valid: usize,
    #[arg(long, default_value_t = 50)]
    invalid: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Parse(a) => cmd_parse(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Relevance(a) => cmd_relevance(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Normalize(a) => cmd_normalize(a),
        Command::Synth(a) => cmd_synth(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json"));
}

fn proposition_json(p: &Proposition) -> serde_json::Value {
    json!({
        "form": p.form.letter().to_string(),
        "subject": p.subject,
        "predicate": p.predicate,
    })
}

fn cmd_parse(a: ParseArgs) -> Result<ExitCode> {
    let text = a.input.read()?;
    let s = match parse_canonical(&text) {
        Ok(s) => s,
        Err(e) => {
            if a.json {
                print_json(&json!({"schema_version": SCHEMA_VERSION, "ok": false, "error": e.to_string()}));
            } else {
                eprintln!("parse failure: {e}");
            }
            return Ok(ExitCode::from(EXIT_INPUT));
        }
    };
    let all: Vec<&Proposition> = s.premises().iter().chain([s.conclusion()]).collect();
    if a.json {
        let premises: Vec<_> = s.premises().iter().map(proposition_json).collect();
        print_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "ok": true,
            "premises": premises,
            "conclusion": proposition_json(s.conclusion()),
        }));
    } else {
        for (i, p) in all.iter().enumerate() {
            let role = if i + 1 == all.len() {
                "conclusion".to_string()
            } else {
                format!("premise {}", i + 1)
            };
            println!(
                "{role:<11} {}  subject={:?} predicate={:?}",
                p.form.letter(),
                p.subject.as_str(),
                p.predicate.as_str()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn english_syllogism(text: &str) -> Result<Syllogism> {
    let mut props = RulesNormalizer::propositions(text)?;
    let conclusion = props.pop().expect("at least one sentence");
    if props.is_empty() {
        bail!("need at least one premise and a conclusion");
    }
    Ok(Syllogism::new(props, conclusion)?)
}

fn verdict_json(v: &ValidityVerdict, s: Option<&Syllogism>) -> serde_json::Value {
    let mut out = json!({"schema_version": SCHEMA_VERSION, "verdict": v});
    if let Some(st) = s.and_then(|s| analyze(s).ok()) {
        out["terms"] = json!({
            "minor": st.minor_term(),
            "major": st.major_term(),
            "middle": st.middle_term(),
        });
        out["mood"] = json!(st.mood());
        out["figure"] = json!(st.figure().value());
    }
    out
}

fn cmd_validate(a: ValidateArgs) -> Result<ExitCode> {
    let cfg = a.rules.config()?;
    let text = a.input.read()?;
    let parsed = if a.english {
        english_syllogism(&text).map_err(|e| e.to_string())
    } else {
        parse_canonical(&text).map_err(|e| e.to_string())
    };
    let s = match parsed {
        Ok(s) => s,
        Err(e) => {
            eprintln!("parse failure: {e}");
            return Ok(ExitCode::from(EXIT_INPUT));
        }
    };
    let verdict = judge(&s, &cfg);
    if a.json {
        print_json(&verdict_json(&verdict, Some(&s)));
    } else {
        println!("{}", verdict.summary());
        if let Ok(st) = analyze(&s) {
            println!(
                "mood {}  figure {}  S={:?} P={:?} M={:?}",
                st.mood(),
                st.figure(),
                st.minor_term().as_str(),
                st.major_term().as_str(),
                st.middle_term().as_str()
            );
        }
    }
    let code = match verdict.basis() {
        Basis::Malformed(MalformedReason::Parse(_)) => EXIT_INPUT,
        _ => 0,
    };
    Ok(ExitCode::from(code))
}

fn cmd_relevance(a: RelevanceArgs) -> Result<ExitCode> {
    let cfg = a.rules.config()?;
    let text = std::fs::read_to_string(&a.file).with_context(|| format!("reading {}", a.file.display()))?;
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if lines.len() < 2 {
        bail!("{}: need at least one premise line and a conclusion line", a.file.display());
    }
    let mut props = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        let p = if a.english {
            normalize_en(line).map_err(|e| anyhow!("line {}: {e}", i + 1))?
        } else {
            parse_sentence(line).map_err(|e| anyhow!("line {}: {e}", i + 1))?
        };
        props.push(p);
    }
    let conclusion = props.pop().expect("two or more lines");
    let (verdict, set) = select_relevant(&props, &conclusion, &cfg);
    if a.json {
        let mut out = verdict_json(&verdict, None);
        out["relevant"] = json!(set);
        out["conclusion"] = json!(render_proposition(&conclusion));
        print_json(&out);
    } else {
        println!("{}", verdict.summary());
        println!("{set}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(a: OracleArgs) -> Result<ExitCode> {
    let import = !a.no_import;
    let oracle = Oracle::new(import, a.max_universe)?;
    let table = enumerate_forms_with(&oracle);
    let reference = match &a.against {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            ValidityTable::parse(&text)?
        }
        None => ValidityTable::for_import(import),
    };
    let derived = ValidityTable::from_pairs(table.valid_forms(), &ValidityTable::standard());
    let missing: Vec<String> = reference
        .pairs()
        .difference(&derived.pairs())
        .map(|(m, f)| format!("{m}-{f}"))
        .collect();
    let extra: Vec<String> = derived
        .pairs()
        .difference(&reference.pairs())
        .map(|(m, f)| format!("{m}-{f}"))
        .collect();
    let differs = !missing.is_empty() || !extra.is_empty();
    if a.json {
        print_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "existential_import": import,
            "max_universe": a.max_universe,
            "valid_count": derived.len(),
            "table": derived.render().lines().collect::<Vec<_>>(),
            "diff": a.diff_table.then(|| json!({"missing": missing, "extra": extra})),
        }));
    } else {
        let label = if import { "with" } else { "without" };
        println!("{} valid forms {label} existential import", derived.len());
        print!("{}", derived.render());
        if a.diff_table {
            if differs {
                println!("differs from reference table:");
                for f in &missing {
                    println!("  only in reference: {f}");
                }
                for f in &extra {
                    println!("  only derived:      {f}");
                }
            } else {
                println!("matches reference table");
            }
        }
    }
    Ok(if a.diff_table && differs {
        ExitCode::from(EXIT_MISMATCH)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_eval(a: EvalArgs) -> Result<ExitCode> {
    let f1: F1Averaging = a.f1.parse().map_err(|e: String| anyhow!(e))?;
    let pipeline = eval::pipeline_by_id(&a.pipeline, a.fixtures.as_deref())?;
    let records = eval::load_dataset(&a.dataset)?;
    let cfg = MetricsConfig {
        f1_averaging: f1,
        ..MetricsConfig::default()
    };
    let report = eval::evaluate(&records, pipeline.as_ref(), &cfg)?;
    if a.json {
        println!("{}", report.summary_json());
    } else {
        print!("{}", report.render_table());
    }
    if let Some(p) = &a.metrics_out {
        write_file(p, &report.summary_json())?;
    }
    if let Some(p) = &a.report_out {
        write_file(p, &report.to_json())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    let mut f = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    writeln!(f, "{text}")?;
    Ok(())
}

fn cmd_normalize(a: NormalizeArgs) -> Result<ExitCode> {
    let mode: Mode = a.mode.parse().map_err(|e: String| anyhow!(e))?;
    let engine: Engine = a.engine.parse().map_err(|e: String| anyhow!(e))?;
    let text = a.input.read()?;
    let result = match engine {
        Engine::Rules => normalize::normalize_argument(&text, mode, &RulesNormalizer)?,
        Engine::Fixture => {
            let path = a
                .fixtures
                .as_deref()
                .ok_or_else(|| anyhow!("--engine fixture needs --fixtures"))?;
            normalize::normalize_argument(&text, mode, &FixtureNormalizer::load(path)?)?
        }
        Engine::Remote => {
            let remote = RemoteNormalizer::new(RemoteConfig::load(a.config.as_deref())?);
            match &a.record {
                Some(path) => {
                    let store = if path.exists() {
                        FixtureStore::load(path)?
                    } else {
                        FixtureStore::new()
                    };
                    let recorder = RecordingNormalizer::new(remote, store);
                    let r = normalize::normalize_argument(&text, mode, &recorder)?;
                    recorder.into_store().save(path)?;
                    r
                }
                None => normalize::normalize_argument(&text, mode, &remote)?,
            }
        }
    };
    let mut out = serde_json::to_value(&result)?;
    out["schema_version"] = json!(SCHEMA_VERSION);
    out["mode"] = json!(mode);
    print_json(&out);
    Ok(ExitCode::SUCCESS)
}

fn cmd_synth(a: SynthArgs) -> Result<ExitCode> {
    let records = match a.kind.as_str() {
        "corpus" => synthetic::synthetic_corpus(a.seed),
        "relevance" => synthetic::relevance_corpus(a.valid, a.invalid, a.seed),
        other => bail!("unknown corpus kind `{other}` (expected corpus or relevance)"),
    };
    let mut buf = Vec::new();
    eval::dataset::write_dataset(&records, &mut buf)?;
    match &a.out {
        Some(p) => std::fs::write(p, &buf).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(ExitCode::SUCCESS)
}
