//! Command-line front end. JSON goes to standard output, diagnostics to standard error.
//!
//! Exit status: 0 on success, 1 when a property violation or invalid
//! certificate is found, 2 on usage, parse or size-limit errors.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::epd::{bound_th1, bound_th2, cover_exact, epgap_winwin, kostochka_threshold, pack_exact, verify_certificate};
use crate::error::{Error, Result};
use crate::graph::{generate, Family, Graph};
use crate::harness::{replay_trial, reports_json, run_verification_suite, LemmaId, SuiteConfig, TrialOutcome};
use crate::io::{parse_graph_auto, write_dot, write_edge_list, write_graph6};
use crate::limits::Limits;
use crate::minors::find_minor_model;
use crate::width::{pathwidth_exact, treewidth_exact, verify_decomposition};

#[derive(Debug, Parser)]
#[command(name = "epgap", version, about = "Exact minor packing/covering, treewidth and win/win certificates")]
pub struct Cli {
    /// Indent JSON; `verify` prints a table instead.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph of a named family.
    Gen(GenArgs),
    /// Exact treewidth with a verified decomposition.
    Tw(Input),
    /// Exact pathwidth with a verified path decomposition.
    Pw(Input),
    /// Search for a model of the pattern in the input graph.
    Minor(PatternInput),
    /// Maximum number of disjoint models of the pattern.
    Pack(PatternInput),
    /// Minimum number of vertices meeting every model of the pattern.
    Cover(PatternInput),
    /// Packing-or-cover certificate for `k` models of the pattern.
    Epgap {
        #[command(flatten)]
        input: PatternInput,
        #[arg(long)]
        k: usize,
    },
    /// Evaluate a bound exactly.
    Bound {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        /// Clique size for `kost`.
        #[arg(long)]
        t: Option<u64>,
    },
    /// Run the seeded verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Theorem {
    Th1,
    Th2,
    Kost,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Graph6,
    Edgelist,
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyName {
    Complete,
    CompleteBipartite,
    Xi,
    Cycle,
    Path,
    Star,
    Grid,
    Gnp,
    TernaryTree,
    Pw2,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    /// Edge probability for `gnp`.
    #[arg(long)]
    pub prob: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Disjoint copies of the graph.
    #[arg(long)]
    pub copies: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Input {
    /// graph6 or edge-list file; standard input when absent or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PatternInput {
    /// Pattern: K3, K2,3, C4, P3, S3, Xi3, graph6 text, or a file.
    #[arg(long)]
    pub pattern: String,
    #[command(flatten)]
    pub host: Input,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Lemma id, repeatable; `all` runs every lemma.
    #[arg(long, default_value = "all")]
    pub lemma: Vec<String>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Corrupt every checked output (harness self-test).
    #[arg(long)]
    pub fault: bool,
    /// Rerun one recorded failure from its hex seed.
    #[arg(long)]
    pub replay: Option<String>,
}

/// A command's result: what to print and the exit status.
struct Outcome {
    stdout: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    } else {
        value.to_string()
    }
}

fn read_graph(input: &Input, stdin: &mut dyn Read) -> Result<Graph> {
    let mut text = String::new();
    match &input.input {
        Some(path) if path.as_os_str() != "-" => {
            text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parameter(format!("cannot read {}: {e}", path.display())))?;
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Error::Parameter(format!("cannot read standard input: {e}")))?;
        }
    }
    parse_graph_auto(&text)
}

/// Parses a pattern shorthand (`K4`, `K2,3`, `C5`, `P3`, `S3`, `Xi2`), a file path, or graph6 text.
pub fn parse_pattern(spec: &str) -> Result<Graph> {
    let s = spec.trim();
    let lower = s.to_ascii_lowercase().replace(['_', '{', '}'], "");
    let num = |t: &str| t.parse::<usize>().ok();
    let family = if let Some(rest) = lower.strip_prefix("xi") {
        num(rest).map(|r| Family::Xi { r })
    } else if let Some(rest) = lower.strip_prefix('k') {
        match rest.split_once(',') {
            Some((p, q)) => num(p).zip(num(q)).map(|(p, q)| Family::CompleteBipartite { p, q }),
            None => num(rest).map(|n| Family::Complete { n }),
        }
    } else if let Some(rest) = lower.strip_prefix('c') {
        num(rest).map(|n| Family::Cycle { n })
    } else if let Some(rest) = lower.strip_prefix('p') {
        num(rest).map(|n| Family::Path { n })
    } else if let Some(rest) = lower.strip_prefix('s') {
        num(rest).map(|n| Family::Star { n })
    } else {
        None
    };
    if let Some(f) = family {
        return generate(&f);
    }
    if std::path::Path::new(s).is_file() {
        let text = std::fs::read_to_string(s).map_err(|e| Error::Parameter(format!("cannot read {s}: {e}")))?;
        return parse_graph_auto(&text);
    }
    parse_graph_auto(s)
}

fn need(value: Option<usize>, name: &str) -> Result<usize> {
    value.ok_or_else(|| Error::Parameter(format!("--{name} is required for this family")))
}

fn gen(args: &GenArgs) -> Result<String> {
    let family = match args.family {
        FamilyName::Complete => Family::Complete { n: need(args.n, "n")? },
        FamilyName::CompleteBipartite => Family::CompleteBipartite {
            p: need(args.p, "p")?,
            q: need(args.q, "q")?,
        },
        FamilyName::Xi => Family::Xi { r: need(args.r, "r")? },
        FamilyName::Cycle => Family::Cycle { n: need(args.n, "n")? },
        FamilyName::Path => Family::Path { n: need(args.n, "n")? },
        FamilyName::Star => Family::Star { n: need(args.n, "n")? },
        FamilyName::Grid => Family::Grid {
            rows: need(args.rows, "rows")?,
            cols: need(args.cols, "cols")?,
        },
        FamilyName::Gnp => Family::RandomGnp {
            n: need(args.n, "n")?,
            p: args.prob.ok_or_else(|| Error::Parameter("--prob is required for gnp".into()))?,
            seed: args.seed,
        },
        FamilyName::TernaryTree => Family::RandomTernaryTree {
            n: need(args.n, "n")?,
            seed: args.seed,
        },
        FamilyName::Pw2 => Family::RandomPw2 {
            n: need(args.n, "n")?,
            seed: args.seed,
        },
    };
    let family = match args.copies {
        Some(k) => Family::DisjointCopies {
            k,
            base: Box::new(family),
        },
        None => family,
    };
    let g = generate(&family)?;
    Ok(match args.format {
        Format::Graph6 => write_graph6(&g)? + "\n",
        Format::Edgelist => write_edge_list(&g),
        Format::Dot => write_dot(&g, "G"),
        Format::Json => serde_json::to_string(&g).expect("graphs serialize") + "\n",
    })
}

fn width(g: &Graph, path: bool, limits: &Limits, pretty: bool) -> Result<Outcome> {
    let (w, td) = if path { pathwidth_exact(g, limits)? } else { treewidth_exact(g, limits)? };
    let verdict = verify_decomposition(g, &td);
    let key = if path { "pathwidth" } else { "treewidth" };
    let value = json!({ key: w, "n": g.n(), "m": g.m(), "decomposition": td, "verdict": verdict });
    Ok(Outcome {
        stdout: render(&value, pretty),
        code: if verdict.is_valid() { 0 } else { 1 },
    })
}

fn bound(theorem: Theorem, k: Option<u64>, r: Option<u64>, t: Option<u64>, pretty: bool) -> Result<Outcome> {
    let arg = |v: Option<u64>, name: &str| v.ok_or_else(|| Error::Parameter(format!("--{name} is required")));
    let value = match theorem {
        Theorem::Th2 => {
            let (k, r) = (arg(k, "k")?, arg(r, "r")?);
            json!({ "theorem": "th2", "k": k, "r": r, "value": bound_th2(k, r)?.to_string() })
        }
        Theorem::Th1 => {
            let (k, r) = (arg(k, "k")?, arg(r, "r")?);
            let b = bound_th1(k, r)?;
            json!({
                "theorem": "th1",
                "k": k,
                "r": r,
                "value": b.ceiling.to_string(),
                "symbolic": b.symbolic(),
                "exact": b.log_term_exact.is_some() && b.s == 0.into(),
            })
        }
        Theorem::Kost => {
            let t = arg(t.or(k), "t")?;
            json!({ "theorem": "kost", "t": t, "value": kostochka_threshold(t)? })
        }
    };
    Ok(Outcome::ok(render(&value, pretty)))
}

fn verify(args: &VerifyArgs, pretty: bool, stderr: &mut dyn Write) -> Result<Outcome> {
    let lemmas: Vec<LemmaId> = if args.lemma.iter().any(|l| l == "all") {
        LemmaId::ALL.to_vec()
    } else {
        args.lemma.iter().map(|l| l.parse()).collect::<Result<_>>()?
    };
    let limits = Limits::from_env();
    if let Some(seed) = &args.replay {
        let [lemma] = lemmas[..] else {
            return Err(Error::Parameter("--replay needs exactly one --lemma".into()));
        };
        let outcome = replay_trial(lemma, seed, args.fault, &limits)?;
        let code = i32::from(matches!(outcome, TrialOutcome::Failed { .. }));
        let value = json!({ "lemma": lemma, "seed": seed, "result": outcome });
        return Ok(Outcome {
            stdout: render(&value, pretty),
            code,
        });
    }
    let config = SuiteConfig {
        seed: args.seed,
        trials: args.trials,
        lemmas,
        threads: args.threads,
        fault: args.fault,
        limits,
    };
    let start = std::time::Instant::now();
    let reports = run_verification_suite(&config)?;
    let _ = writeln!(stderr, "verification took {:.2?}", start.elapsed());
    let failed = reports.iter().any(|r| !r.passed());
    let stdout = if pretty {
        let mut table = format!("{:<16} {:>7} {:>8} {:>8} {:>9}\n", "lemma", "trials", "checked", "vacuous", "failures");
        for r in &reports {
            table.push_str(&format!(
                "{:<16} {:>7} {:>8} {:>8} {:>9}\n",
                r.lemma.as_str(),
                r.trials,
                r.checked,
                r.vacuous,
                r.failures
            ));
            for f in &r.failure_records {
                table.push_str(&format!("  trial {} seed {}: {}: {}\n", f.trial, f.seed, f.clause, f.detail));
            }
        }
        table.trim_end().to_string()
    } else {
        reports_json(&reports, false)
    };
    Ok(Outcome {
        stdout,
        code: i32::from(failed),
    })
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, stderr: &mut dyn Write) -> Result<Outcome> {
    let limits = Limits::from_env();
    let pretty = cli.pretty;
    match &cli.command {
        Command::Gen(args) => Ok(Outcome {
            stdout: gen(args)?.trim_end().to_string(),
            code: 0,
        }),
        Command::Tw(input) => width(&read_graph(input, stdin)?, false, &limits, pretty),
        Command::Pw(input) => width(&read_graph(input, stdin)?, true, &limits, pretty),
        Command::Minor(pi) => {
            let h = parse_pattern(&pi.pattern)?;
            let g = read_graph(&pi.host, stdin)?;
            let model = find_minor_model(&g, &h, &limits)?;
            let value = json!({ "found": model.is_some(), "model": model.map(|m| m.to_json()) });
            Ok(Outcome::ok(render(&value, pretty)))
        }
        Command::Pack(pi) => {
            let h = parse_pattern(&pi.pattern)?;
            let g = read_graph(&pi.host, stdin)?;
            let (pack, models) = pack_exact(&g, &h, &limits)?;
            let models: Vec<Value> = models.iter().map(|m| m.to_json()).collect();
            Ok(Outcome::ok(render(&json!({ "pack": pack, "models": models }), pretty)))
        }
        Command::Cover(pi) => {
            let h = parse_pattern(&pi.pattern)?;
            let g = read_graph(&pi.host, stdin)?;
            let (cover, set) = cover_exact(&g, &h, &limits)?;
            Ok(Outcome::ok(render(&json!({ "cover": cover, "vertices": set.to_vec() }), pretty)))
        }
        Command::Epgap { input, k } => {
            let h = parse_pattern(&input.pattern)?;
            let g = read_graph(&input.host, stdin)?;
            let ww = epgap_winwin(&g, &h, *k, &limits)?;
            let verdict = verify_certificate(&g, &h, *k, &ww.certificate, &limits)?;
            let mut value = serde_json::to_value(&ww).expect("certificates serialize");
            value["verdict"] = serde_json::to_value(&verdict).expect("verdicts serialize");
            Ok(Outcome {
                stdout: render(&value, pretty),
                code: if verdict.is_valid() { 0 } else { 1 },
            })
        }
        Command::Bound { theorem, k, r, t } => bound(*theorem, *k, *r, *t, pretty),
        Command::Verify(args) => verify(args, pretty, stderr),
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit status.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(&cli, stdin, stderr) {
        Ok(out) => {
            let _ = writeln!(stdout, "{}", out.stdout);
            out.code
        }
        Err(e) => {
            log::debug!("{e:?}");
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Invariant(_) | Error::InvalidWitness(_) => 1,
                _ => 2,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("epgap").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn patterns() {
        assert_eq!(parse_pattern("K4").unwrap().m(), 6);
        assert_eq!(parse_pattern("K2,3").unwrap().n(), 5);
        assert_eq!(parse_pattern("K_{2,3}").unwrap().m(), 6);
        assert_eq!(parse_pattern("C5").unwrap().m(), 5);
        assert_eq!(parse_pattern("xi3").unwrap().n(), 9);
        assert_eq!(parse_pattern("C~").unwrap().m(), 6);
        assert!(parse_pattern("K").is_err());
    }

    #[test]
    fn bound_and_usage() {
        let (code, out, _) = call(&["bound", "--theorem", "th2", "--k", "1", "--r", "2"], "");
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], "67");
        let (code, _, err) = call(&["bound", "--bogus"], "");
        assert_eq!(code, 2);
        assert!(err.contains("Usage"), "{err}");
        let (code, _, _) = call(&["bound", "--theorem", "th1", "--k", "1", "--r", "5"], "");
        assert_eq!(code, 2);
    }

    #[test]
    fn size_guard_exits_two() {
        let (code, _, err) = call(&["pack", "--pattern", "K2,3"], &format!("{}\n", write_graph6(&generate(&Family::Grid { rows: 5, cols: 5 }).unwrap()).unwrap()));
        assert_eq!(code, 2, "{err}");
        assert!(err.contains("size limit"));
    }
}
