//! The `nda` command-line front end.
//!
//! Reports are JSON on stdout; `--pretty` switches to human-readable text
//! (coloured when `DEALLOC_COLOR=1`). Exit codes: 0 success, 1 usage or parse
//! error, 2 semantic failure, 3 internal invariant breach.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::automaton::SAutomaton;
use crate::constructions::{determinize_pipeline, discipline, name_drop, restrict};
use crate::error::{Error, ErrorKind};
use crate::expressions::{dnfa_to_regex, enumerate, is_regdex, profile_regex, regex_to_dnfa, Regex};
use crate::names::{fresh_many, parse_name_set, NameSet};
use crate::semantics::{bounded_language, lang_compare, CompareStatus, Flavor};
use crate::words::{alpha_eq, alpha_eq_oracle, classify, db, disc, is_disciplined, is_rns, Word};

/// Top-level invocation.
#[derive(Debug, Parser)]
#[command(name = "nda", version, about = "Data words with allocation and deallocation binders")]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Name pool, e.g. `a,b,c` (the target pool for `nda restrict`).
    #[arg(long, global = true, value_name = "NAMES")]
    pub pool: Option<String>,
    /// Extra fresh names added to an inferred pool.
    #[arg(long, global = true, value_name = "N")]
    pub spare: Option<usize>,
    /// The operation.
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommand groups.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Operations on single words.
    #[command(subcommand)]
    Word(WordCmd),
    /// Regular deallocation expressions.
    #[command(subcommand)]
    Rdx(RdxCmd),
    /// Automata and constructions.
    #[command(subcommand)]
    Nda(NdaCmd),
    /// Bounded languages.
    #[command(subcommand)]
    Lang(LangCmd),
}

/// `nda word …`
#[derive(Debug, Subcommand)]
pub enum WordCmd {
    /// rc, lo and lc of a word.
    Classify { word: String },
    /// Whether the word is right-non-shadowing.
    Rns { word: String },
    /// Whether two words are α-equivalent.
    AlphaEq {
        left: String,
        right: String,
        /// Also run the rule-closure oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// The disciplined word.
    Disc { word: String },
    /// The debracketing.
    Db { word: String },
    /// Whether the word is disciplined.
    Disciplined { word: String },
}

/// Output file option.
#[derive(Debug, Args)]
pub struct OutArg {
    /// Write the automaton here instead of stdout.
    #[arg(short = 'o', long = "output", value_name = "FILE")]
    pub output: Option<PathBuf>,
}

/// `nda rdx …`
#[derive(Debug, Subcommand)]
pub enum RdxCmd {
    /// Profile and grammar side conditions.
    Check { regex: String },
    /// Compile to an automaton.
    Compile {
        regex: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// An expression for an automaton's literal language.
    FromAutomaton { file: PathBuf },
    /// Enumerate the language of an expression or automaton file.
    Enum {
        /// An automaton file (`*.json` or an existing path) or an expression.
        input: String,
        #[arg(long, default_value_t = 3)]
        maxlen: usize,
    },
}

/// `nda nda …`
#[derive(Debug, Subcommand)]
pub enum NdaCmd {
    /// Check the deallocation-automaton conditions.
    Validate { file: PathBuf },
    /// The name-dropping modification.
    Namedrop {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Restrict to the names given by `--pool`.
    Restrict {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Name dropping, restriction and disciplining.
    Discipline {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// The full determinization pipeline.
    Determinize {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
        /// Write every intermediate automaton into this directory.
        #[arg(long, value_name = "DIR")]
        emit_stages: Option<PathBuf>,
    },
    /// Run a word.
    Run {
        file: PathBuf,
        word: String,
        /// Accept up to α-equivalence.
        #[arg(long)]
        alpha: bool,
    },
    /// Whether the automaton is deterministic.
    Deterministic { file: PathBuf },
    /// Replace deallocating letters by plain ones.
    ToRnna {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Graphviz rendering.
    ExportDot {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

/// `nda lang …`
#[derive(Debug, Subcommand)]
pub enum LangCmd {
    /// Enumerate a bounded language.
    Enum {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Flavor::Literal)]
        flavor: Flavor,
        #[arg(long, default_value_t = 3)]
        maxlen: usize,
    },
    /// Compare two bounded languages.
    Compare {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = Flavor::Literal)]
        flavor: Flavor,
        #[arg(long, default_value_t = 3)]
        maxlen: usize,
    },
}

/// What a command produced.
struct Output {
    /// JSON report.
    json: Value,
    /// Human-readable text.
    text: String,
    /// Exit code.
    code: i32,
}

impl Output {
    fn ok(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), code: 0 }
    }
}

struct Style {
    color: bool,
}

impl Style {
    fn verdict(&self, yes: bool) -> String {
        let text = if yes { "yes" } else { "no" };
        if self.color {
            format!("\x1b[{}m{text}\x1b[0m", if yes { 32 } else { 31 })
        } else {
            text.to_string()
        }
    }
}

fn set_text(s: &NameSet) -> String {
    format!("{{{}}}", crate::words::join_names(s))
}

fn names_json(s: &NameSet) -> Value {
    Value::from(s.iter().map(|a| a.to_string()).collect::<Vec<_>>())
}

fn load(path: &Path) -> anyhow::Result<SAutomaton> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(SAutomaton::from_json(&text)?)
}

fn emit_automaton(a: &SAutomaton, out: &OutArg, extra: Value) -> anyhow::Result<Output> {
    match &out.output {
        Some(path) => {
            fs::write(path, a.to_json_pretty() + "\n").with_context(|| format!("cannot write {}", path.display()))?;
            let mut json = json!({ "written": path.display().to_string(), "states": a.num_states(), "transitions": a.num_transitions() });
            if let (Value::Object(map), Value::Object(more)) = (&mut json, extra) {
                map.extend(more);
            }
            let text = format!("wrote {} ({} states, {} transitions)", path.display(), a.num_states(), a.num_transitions());
            Ok(Output::ok(json, text))
        }
        None => {
            let value: Value = serde_json::from_str(&a.to_json()).expect("valid JSON");
            Ok(Output::ok(value, a.to_json_pretty()))
        }
    }
}

fn declared_pool(cli: &Cli) -> anyhow::Result<Option<NameSet>> {
    Ok(match &cli.pool {
        Some(text) => Some(parse_name_set(text)?),
        None => None,
    })
}

fn inferred_pool(cli: &Cli, names: NameSet, default_spare: usize) -> anyhow::Result<NameSet> {
    if let Some(pool) = declared_pool(cli)? {
        return Ok(pool);
    }
    let mut pool = names.clone();
    pool.extend(fresh_many(&names, cli.spare.unwrap_or(default_spare)));
    Ok(pool)
}

fn word_cmd(cli: &Cli, cmd: &WordCmd, style: &Style) -> anyhow::Result<Output> {
    let parse = |s: &str| Word::parse(s);
    Ok(match cmd {
        WordCmd::Classify { word } => {
            let w = parse(word)?;
            let p = classify(&w);
            let rns = is_rns(&w);
            Output::ok(
                json!({ "word": w.to_string(), "rc": names_json(&p.rc), "lo": names_json(&p.lo), "lc": names_json(&p.lc), "rns": rns }),
                format!("rc={} lo={} lc={} rns={}", set_text(&p.rc), set_text(&p.lo), set_text(&p.lc), style.verdict(rns)),
            )
        }
        WordCmd::Rns { word } => {
            let w = parse(word)?;
            let rns = is_rns(&w);
            Output::ok(json!({ "word": w.to_string(), "rns": rns }), style.verdict(rns))
        }
        WordCmd::AlphaEq { left, right, oracle } => {
            let (w, v) = (parse(left)?, parse(right)?);
            let eq = alpha_eq(&w, &v)?;
            let mut json = json!({ "left": w.to_string(), "right": v.to_string(), "alpha_eq": eq });
            let mut text = style.verdict(eq);
            if *oracle {
                let mut names = w.names();
                names.extend(v.names());
                let pool = inferred_pool(cli, names, 2)?;
                let o = alpha_eq_oracle(&w, &v, &pool)?;
                json["oracle"] = Value::from(o);
                json["pool"] = names_json(&pool);
                text = format!("{text} (oracle: {})", style.verdict(o));
            }
            Output::ok(json, text)
        }
        WordCmd::Disc { word } => {
            let w = parse(word)?;
            let d = disc(&w);
            Output::ok(json!({ "word": w.to_string(), "disc": d.to_string() }), d.display_or_epsilon())
        }
        WordCmd::Db { word } => {
            let w = parse(word)?;
            let d = db(&w);
            let text = if d.is_empty() { "ε".to_string() } else { d.to_string() };
            Output::ok(json!({ "word": w.to_string(), "db": d.to_string() }), text)
        }
        WordCmd::Disciplined { word } => {
            let w = parse(word)?;
            let d = is_disciplined(&w);
            Output::ok(json!({ "word": w.to_string(), "disciplined": d }), style.verdict(d))
        }
    })
}

fn words_output(words: Vec<String>, maxlen: usize) -> Output {
    let text = words.join("\n");
    Output::ok(json!({ "maxlen": maxlen, "count": words.len(), "words": words }), text)
}

fn rdx_cmd(cli: &Cli, cmd: &RdxCmd) -> anyhow::Result<Output> {
    Ok(match cmd {
        RdxCmd::Check { regex } => {
            let r = Regex::parse(regex)?;
            let check = is_regdex(&r);
            let profile = profile_regex(&r);
            let mut text = if check.ok { "ok".to_string() } else { "not a regular deallocation expression".to_string() };
            for v in &check.violations {
                text.push_str(&format!("\n  {} `{}` clashes on {}", v.node, v.subtree, set_text(&v.clash)));
            }
            Output::ok(
                json!({ "regex": r.to_string(), "regdex": check.ok, "violations": check.violations, "profile": profile }),
                text,
            )
        }
        RdxCmd::Compile { regex, out } => {
            let r = Regex::parse(regex)?;
            let mut a = regex_to_dnfa(&r)?;
            let mut pool = inferred_pool(cli, r.pool(), 0)?;
            pool.extend(r.pool());
            a.pool = pool;
            emit_automaton(&a, out, json!({}))?
        }
        RdxCmd::FromAutomaton { file } => {
            let a = load(file)?;
            if !a.eliminate_epsilon().is_dnfa() {
                return Err(Error::precondition("the automaton is not a D-NFA").into());
            }
            let r = dnfa_to_regex(&a);
            Output::ok(json!({ "regex": r.to_string() }), r.to_string())
        }
        RdxCmd::Enum { input, maxlen } => {
            let path = Path::new(input);
            let words = if input.ends_with(".json") || path.exists() {
                load(path)?.enum_literal(*maxlen)
            } else {
                enumerate(&Regex::parse(input)?, *maxlen)
            };
            words_output(words.iter().map(Word::display_or_epsilon).collect(), *maxlen)
        }
    })
}

fn nda_cmd(cli: &Cli, cmd: &NdaCmd, style: &Style) -> anyhow::Result<Output> {
    Ok(match cmd {
        NdaCmd::Validate { file } => {
            let a = load(file)?;
            let report = a.validate_nda();
            let mut text = format!("valid: {}", style.verdict(report.is_valid()));
            for v in &report.violations {
                text.push_str(&format!("\n  {}: {}", v.kind, v.witness));
            }
            let code = if report.is_valid() { 0 } else { 2 };
            Output { json: serde_json::to_value(&report)?, text, code }
        }
        NdaCmd::Namedrop { file, out } => emit_automaton(&name_drop(&load(file)?)?, out, json!({}))?,
        NdaCmd::Restrict { file, out } => {
            let pool = declared_pool(cli)?.ok_or_else(|| Error::precondition("restrict needs --pool"))?;
            emit_automaton(&restrict(&load(file)?, &pool)?, out, json!({}))?
        }
        NdaCmd::Discipline { file, out } => {
            let dropped = name_drop(&load(file)?)?;
            let pool = match declared_pool(cli)? {
                Some(pool) => pool,
                None => crate::constructions::restriction_pool(&dropped, dropped.degree())?,
            };
            emit_automaton(&discipline(&restrict(&dropped, &pool)?)?, out, json!({}))?
        }
        NdaCmd::Determinize { file, out, emit_stages } => {
            let a = load(file)?;
            let pipeline = determinize_pipeline(&a)?;
            if let Some(dir) = emit_stages {
                fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
                for (i, (name, stage)) in pipeline.stages().into_iter().enumerate() {
                    let path = dir.join(format!("{i}-{name}.json"));
                    fs::write(&path, stage.to_json_pretty() + "\n").with_context(|| format!("cannot write {}", path.display()))?;
                }
                fs::write(dir.join("report.json"), serde_json::to_string_pretty(&pipeline.report)? + "\n")?;
            }
            if !pipeline.report.deterministic {
                return Err(Error::Internal("the determinization post-check failed".to_string()).into());
            }
            let report = serde_json::to_value(&pipeline.report)?;
            let mut text = String::new();
            for s in &pipeline.report.stages {
                text.push_str(&format!("{:<11} {:>6} states {:>7} transitions\n", s.stage, s.states, s.transitions));
            }
            match &out.output {
                Some(_) => {
                    let mut o = emit_automaton(&pipeline.output, out, json!({ "report": report }))?;
                    o.text = format!("{text}{}", o.text);
                    o
                }
                None => {
                    let automaton: Value = serde_json::from_str(&pipeline.output.to_json())?;
                    Output::ok(json!({ "report": report, "automaton": automaton }), text.trim_end().to_string())
                }
            }
        }
        NdaCmd::Run { file, word, alpha } => {
            let a = load(file)?;
            let w = Word::parse(word)?;
            let accepted = if *alpha { a.accepts_alpha(&w)? } else { a.run_literal(&w)? };
            Output::ok(
                json!({ "word": w.to_string(), "mode": if *alpha { "alpha" } else { "literal" }, "accepted": accepted }),
                style.verdict(accepted),
            )
        }
        NdaCmd::Deterministic { file } => {
            let d = load(file)?.is_deterministic();
            Output::ok(json!({ "deterministic": d }), style.verdict(d))
        }
        NdaCmd::ToRnna { file, out } => emit_automaton(&load(file)?.to_rnna(), out, json!({}))?,
        NdaCmd::ExportDot { file, out } => {
            let dot = load(file)?.to_dot();
            match &out.output {
                Some(path) => {
                    fs::write(path, &dot).with_context(|| format!("cannot write {}", path.display()))?;
                    Output::ok(json!({ "written": path.display().to_string() }), format!("wrote {}", path.display()))
                }
                None => Output::ok(json!({ "dot": dot }), dot.trim_end().to_string()),
            }
        }
    })
}

fn lang_cmd(cmd: &LangCmd) -> anyhow::Result<Output> {
    Ok(match cmd {
        LangCmd::Enum { file, flavor, maxlen } => {
            let l = bounded_language(&load(file)?, *flavor, *maxlen);
            let mut o = words_output(l.words.lines(), *maxlen);
            o.json["flavor"] = Value::from(flavor.to_string());
            o
        }
        LangCmd::Compare { left, right, flavor, maxlen } => {
            let c = lang_compare(&load(left)?, &load(right)?, *flavor, *maxlen)?;
            let mut text = match c.status {
                CompareStatus::Equal => "equal".to_string(),
                _ => "different".to_string(),
            };
            for w in c.left_only.iter().take(10) {
                text.push_str(&format!("\n  left only:  {w}"));
            }
            for w in c.right_only.iter().take(10) {
                text.push_str(&format!("\n  right only: {w}"));
            }
            Output::ok(serde_json::to_value(&c)?, text)
        }
    })
}

fn exit_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<Error>().map(Error::kind) {
        Some(ErrorKind::Parse) | None => 1,
        Some(ErrorKind::Semantic) => 2,
        Some(ErrorKind::Internal) => 3,
    }
}

/// Runs the CLI on `args` (including the program name), writing reports to
/// `stdout` and diagnostics to `stderr`; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            if code == 0 {
                let _ = write!(stdout, "{e}");
            } else {
                let _ = write!(stderr, "{e}");
            }
            return code;
        }
    };
    let style = Style { color: cli.pretty && std::env::var("DEALLOC_COLOR").is_ok_and(|v| v == "1") };
    let result = match &cli.command {
        Command::Word(cmd) => word_cmd(&cli, cmd, &style),
        Command::Rdx(cmd) => rdx_cmd(&cli, cmd),
        Command::Nda(cmd) => nda_cmd(&cli, cmd, &style),
        Command::Lang(cmd) => lang_cmd(cmd),
    };
    match result {
        Ok(output) => {
            let body = if cli.pretty {
                output.text
            } else {
                serde_json::to_string_pretty(&output.json).expect("serialisable")
            };
            if !body.is_empty() {
                let _ = writeln!(stdout, "{body}");
            }
            output.code
        }
        Err(e) => {
            let code = exit_code(&e);
            let kind = match code {
                1 => "parse",
                2 => "semantic",
                _ => "internal",
            };
            let message = format!("{e:#}");
            if cli.pretty {
                let _ = writeln!(stderr, "error: {message}");
            } else {
                let _ = writeln!(stderr, "{}", json!({ "error": kind, "message": message }));
            }
            code
        }
    }
}
