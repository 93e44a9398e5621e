//! The `coopkit` command line. Exit codes: 0 for an affirmative result, 1
//! for a negative one (a failed check or a countermodel), 2 for bad input.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use crate::algebra::{
    check_laws, check_laws_subset, check_sequent, enumerate_class, eval_formula, search_countermodel, Algebra,
    AlgebraClass, Assignment, LawMode, LawStatus, Model, SearchError,
};
use crate::eqchain::{chain_from_json, chain_to_json, translate_proof, verify_chain, Justification};
use crate::envelope::verify_envelope;
use crate::kernel::{check_proof, proof_from_json, LogicId};
use crate::lab::{all_ideals, classify, monolith_and_decomposition};
use crate::pl::{decide_universal, parse_matrix, Ambient};
use crate::syntax::{parse_formula, parse_sequent, render_formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "coopkit", version, about = "Proofs, models and decision procedures for affine, Łukasiewicz and continuous logics")]
pub struct Cli {
    #[command(flatten)]
    pub shared: Shared,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Shared {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Search budget (countermodel: largest table size or grid exponent).
    #[arg(long, global = true)]
    pub budget: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a formula or sequent and print its normal rendering.
    Parse { text: String },
    /// Check a proof file in a logic.
    CheckProof {
        file: String,
        #[arg(long)]
        logic: String,
    },
    /// Evaluate a formula, or check a sequent, at an assignment.
    Eval {
        text: String,
        /// Model spec (`dyadic-capped:1`, `luk:3`, …) or algebra JSON file.
        #[arg(long)]
        model: String,
        /// `P=1/2,Q=1/4`
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Check the algebraic laws in a model.
    Laws {
        model: String,
        #[arg(long)]
        class: Option<String>,
        /// Sample tuples per law for dense models.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Search for a model and assignment falsifying a sequent.
    Countermodel {
        sequent: String,
        #[arg(long)]
        class: String,
    },
    /// Classify a finite hoop and decompose it when subdirectly irreducible.
    Analyze { file: String },
    /// List the members of a class up to a size, up to isomorphism.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "hoop")]
        class: String,
    },
    /// Translate an LLu proof into an equational chain.
    Translate {
        file: String,
        /// Also write the chain file here.
        #[arg(long, short)]
        output: Option<String>,
    },
    /// Verify an equational chain file.
    VerifyChain { file: String },
    /// Verify the enveloping constructions over a capped base by sampling.
    Envelope {
        #[arg(long, default_value = "dyadic-capped:1")]
        base: String,
        #[arg(long, default_value_t = 1000)]
        verify_samples: usize,
    },
    /// Decide a universal sentence over the standard models.
    Decide {
        /// An equation `s = t`.
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        eq: Option<String>,
        /// A quantifier-free matrix such as `x + y = x => y = 0`.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value = "wajsberg")]
        ambient: String,
    },
}

struct Report {
    code: i32,
    json: Json,
    text: String,
}

fn report(code: i32, json: Json, text: impl Into<String>) -> Result<Report, String> {
    Ok(Report {
        code,
        json,
        text: text.into(),
    })
}

fn read(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
}

fn load_model(spec: &str) -> Result<Model, String> {
    if Path::new(spec).is_file() {
        Model::from_json(&read(spec)?).map_err(|e| e.to_string())
    } else {
        Model::from_spec(spec).map_err(|e| e.to_string())
    }
}

fn load_finite(path: &str) -> Result<crate::algebra::FiniteAlgebra, String> {
    crate::algebra::FiniteAlgebra::from_json(&read(path)?).map_err(|e| e.to_string())
}

fn class_arg(s: &str) -> Result<AlgebraClass, String> {
    AlgebraClass::parse(s).ok_or_else(|| format!("unknown class `{s}`"))
}

fn show_assignment(asg: &Assignment<crate::algebra::Value>) -> BTreeMap<String, String> {
    asg.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

fn pairs(m: &BTreeMap<String, String>) -> String {
    m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
}

fn cmd_parse(text: &str) -> Result<Report, String> {
    if text.contains("|-") {
        let s = parse_sequent(text).map_err(|e| e.to_string())?;
        let j = json!({ "kind": "sequent", "text": s.to_string(), "language": s.language().name() });
        report(0, j, format!("sequent {s}\nlanguage {}", s.language().name()))
    } else {
        let f = parse_formula(text).map_err(|e| e.to_string())?;
        let lang = crate::syntax::classify_language(&f);
        let j = json!({ "kind": "formula", "text": render_formula(&f), "language": lang.name(), "size": f.size() });
        report(0, j, format!("formula {}\nlanguage {}", render_formula(&f), lang.name()))
    }
}

fn cmd_check_proof(file: &str, logic: &str) -> Result<Report, String> {
    let p = proof_from_json(&read(file)?).map_err(|e| e.to_string())?;
    let l = LogicId::parse(logic).ok_or_else(|| format!("unknown logic `{logic}`"))?;
    let r = check_proof(&p, l);
    let mut text = format!("{} in {}: {}", p.conclusion(), l, if r.ok { "ok" } else { "rejected" });
    for f in &r.failures {
        text.push_str(&format!("\n  at {:?}: {}", f.path, f.reason));
    }
    let j = json!({ "conclusion": p.conclusion().to_string(), "logic": l.name(), "ok": r.ok, "failures": r.failures });
    report(if r.ok { 0 } else { 1 }, j, text)
}

fn cmd_eval(text: &str, model: &str, assign: &str) -> Result<Report, String> {
    let m = load_model(model)?;
    let mut asg = Assignment::new();
    for part in assign.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("bad assignment `{part}`"))?;
        asg.insert(k.trim().to_string(), m.parse_value(v.trim()).map_err(|e| e.to_string())?);
    }
    if text.contains("|-") {
        let s = parse_sequent(text).map_err(|e| e.to_string())?;
        let holds = check_sequent(&s, &asg, &m).map_err(|e| e.to_string())?;
        let j = json!({ "sequent": s.to_string(), "model": m.describe(), "holds": holds });
        report(if holds { 0 } else { 1 }, j, format!("{s}: {}", if holds { "holds" } else { "fails" }))
    } else {
        let f = parse_formula(text).map_err(|e| e.to_string())?;
        let v = eval_formula(&f, &asg, &m).map_err(|e| e.to_string())?;
        let j = json!({ "formula": render_formula(&f), "model": m.describe(), "value": v.to_string() });
        report(0, j, v.to_string())
    }
}

fn cmd_laws(model: &str, class: Option<&str>, samples: usize, seed: u64) -> Result<Report, String> {
    let m = load_model(model)?;
    let mode = if m.elements().is_some() {
        LawMode::Exhaustive
    } else {
        LawMode::Sampled { count: samples, seed }
    };
    let (r, ok) = match class {
        Some(c) => {
            let laws = class_arg(c)?.required_laws();
            let r = check_laws_subset(&m, &laws, mode);
            let ok = r.passes_all(&laws);
            (r, ok)
        }
        None => {
            let r = check_laws(&m, mode);
            let ok = r.failures().is_empty();
            (r, ok)
        }
    };
    let mut text = format!("{} ({})", m.describe(), r.mode);
    for o in &r.outcomes {
        let status = match o.status {
            LawStatus::Pass => "pass",
            LawStatus::Fail => "FAIL",
            LawStatus::NotApplicable => "n/a",
        };
        text.push_str(&format!("\n  {:<4} {status}", o.law.name()));
        if let Some(w) = &o.witness {
            text.push_str(&format!(" at ({})", w.join(", ")));
        }
    }
    let j = json!({ "model": m.describe(), "ok": ok, "report": r });
    report(if ok { 0 } else { 1 }, j, text)
}

fn cmd_countermodel(sequent: &str, class: &str, budget: usize) -> Result<Report, String> {
    let s = parse_sequent(sequent).map_err(|e| e.to_string())?;
    let c = class_arg(class)?;
    match search_countermodel(&s, c, budget) {
        Ok(cm) => {
            let asg = show_assignment(&cm.assignment);
            let table = match &cm.model {
                Model::Finite(a) => serde_json::to_value(a).expect("tables serialize"),
                _ => Json::Null,
            };
            let j = json!({ "sequent": s.to_string(), "class": c.name(), "found": true,
                "model": cm.model.describe(), "table": table, "assignment": asg });
            report(1, j, format!("countermodel in {}: {}", cm.model.describe(), pairs(&asg)))
        }
        Err(SearchError::Exhausted(b)) => {
            let j = json!({ "sequent": s.to_string(), "class": c.name(), "found": false, "budget": b });
            report(0, j, format!("no countermodel within budget {b}"))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_analyze(file: &str) -> Result<Report, String> {
    let h = load_finite(file)?;
    let c = classify(&h);
    let ideals: Vec<Vec<usize>> = all_ideals(&h).iter().map(|i| i.elements()).collect();
    match monolith_and_decomposition(&h) {
        Err(e) => {
            let j = json!({ "hoop": false, "error": e.to_string() });
            report(1, j, e.to_string())
        }
        Ok(d) => {
            let mut text = format!(
                "simple {}\narchimedean {}\nlinear {}\ndepths {:?}\nideals {}",
                c.simple,
                c.archimedean,
                c.linear,
                c.depths,
                ideals.len()
            );
            match &d {
                None => text.push_str("\nnot subdirectly irreducible"),
                Some(d) => {
                    text.push_str(&format!(
                        "\nmonolith {:?}\nsupport {:?}\nfixed {:?}\nsupport wajsberg {}",
                        d.monolith.elements(),
                        d.support,
                        d.fixed,
                        d.support_wajsberg
                    ));
                    for p in &d.properties {
                        let v = match p.holds {
                            Some(true) => "holds",
                            Some(false) => "FAILS",
                            None => "n/a",
                        };
                        text.push_str(&format!("\n  ({}) {v}", p.name));
                    }
                }
            }
            let verified = d.as_ref().is_none_or(|d| d.verified());
            let j = json!({ "hoop": true, "classification": c, "ideals": ideals, "decomposition": d, "verified": verified });
            report(if verified { 0 } else { 1 }, j, text)
        }
    }
}

fn cmd_enumerate(size: usize, class: &str) -> Result<Report, String> {
    let c = class_arg(class)?;
    let all = enumerate_class(c, size);
    let mut counts = BTreeMap::new();
    for a in &all {
        *counts.entry(a.size).or_insert(0usize) += 1;
    }
    let text = counts.iter().map(|(n, k)| format!("size {n}: {k}")).collect::<Vec<_>>().join("\n");
    let j = json!({ "class": c.name(), "max_size": size, "counts": counts, "algebras": all });
    report(0, j, text)
}

fn cmd_translate(file: &str, output: Option<&str>) -> Result<Report, String> {
    let p = proof_from_json(&read(file)?).map_err(|e| e.to_string())?;
    match translate_proof(&p) {
        Ok(c) => {
            let text = chain_to_json(&c);
            if let Some(out) = output {
                std::fs::write(out, &text).map_err(|e| format!("cannot write {out}: {e}"))?;
            }
            let mut lines = vec![format!("    {}", c.start)];
            for s in &c.steps {
                let why = match &s.justification {
                    Justification::Rearrange => "AC".to_string(),
                    Justification::Equation {
                        eq, position, direction, ..
                    } => format!("{} {:?} at {:?}", eq.name(), direction, position),
                };
                lines.push(format!("  = {}    [{why}]", s.to));
            }
            let chain: Json = serde_json::from_str(&text).expect("chain JSON parses");
            let j = json!({ "conclusion": p.conclusion().to_string(), "steps": c.steps.len(), "chain": chain });
            report(0, j, lines.join("\n"))
        }
        Err(e) => report(1, json!({ "conclusion": p.conclusion().to_string(), "error": e.to_string() }), e.to_string()),
    }
}

fn cmd_verify_chain(file: &str) -> Result<Report, String> {
    let c = chain_from_json(&read(file)?).map_err(|e| e.to_string())?;
    match verify_chain(&c) {
        Ok(()) => report(0, json!({ "ok": true, "steps": c.steps.len() }), format!("ok ({} steps)", c.steps.len())),
        Err(e) => report(1, json!({ "ok": false, "error": e.to_string() }), e.to_string()),
    }
}

fn cmd_envelope(base: &str, samples: usize, seed: u64) -> Result<Report, String> {
    let r = match Model::from_spec(base).map_err(|e| e.to_string())? {
        Model::Dyadic(m) => verify_envelope(&m, samples, seed),
        Model::Rational(m) => verify_envelope(&m, samples, seed),
        Model::Finite(_) => return Err("the envelope needs a dense base".into()),
    }
    .map_err(|e| e.to_string())?;
    let mut text = format!("base {} seed {}", r.base, r.seed);
    for c in &r.checks {
        text.push_str(&format!("\n  {:<24} {}/{} ok", c.name, c.samples - c.failures, c.samples));
        if let Some(f) = &c.first_failure {
            text.push_str(&format!(" (first failure {f})"));
        }
    }
    let ok = r.passed();
    report(if ok { 0 } else { 1 }, json!({ "ok": ok, "report": r }), text)
}

fn cmd_decide(eq: Option<&str>, matrix: Option<&str>, ambient: &str) -> Result<Report, String> {
    let src = eq.or(matrix).expect("clap requires one");
    let m = parse_matrix(src).map_err(|e| e.to_string())?;
    let ambients = Ambient::parse_set(ambient).ok_or_else(|| format!("unknown ambient `{ambient}`"))?;
    let v = decide_universal(&m, &ambients).map_err(|e| e.to_string())?;
    let mut j = v.to_json();
    j["matrix"] = json!(m.to_string());
    j["ambients"] = json!(ambients.iter().map(|a| a.name()).collect::<Vec<_>>());
    match v.countermodel() {
        None => report(0, j, "valid"),
        Some(c) => {
            let asg: BTreeMap<String, String> =
                c.assignment.iter().map(|(k, q)| (k.clone(), crate::numeric::fmt_rational(q))).collect();
            report(1, j, format!("countermodel in {}: {}", c.ambient.name(), pairs(&asg)))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report, String> {
    let sh = &cli.shared;
    match &cli.command {
        Command::Parse { text } => cmd_parse(text),
        Command::CheckProof { file, logic } => cmd_check_proof(file, logic),
        Command::Eval { text, model, assign } => cmd_eval(text, model, assign),
        Command::Laws { model, class, samples } => cmd_laws(model, class.as_deref(), *samples, sh.seed),
        Command::Countermodel { sequent, class } => cmd_countermodel(sequent, class, sh.budget.unwrap_or(4)),
        Command::Analyze { file } => cmd_analyze(file),
        Command::Enumerate { size, class } => cmd_enumerate(*size, class),
        Command::Translate { file, output } => cmd_translate(file, output.as_deref()),
        Command::VerifyChain { file } => cmd_verify_chain(file),
        Command::Envelope { base, verify_samples } => cmd_envelope(base, *verify_samples, sh.seed),
        Command::Decide { eq, matrix, ambient } => cmd_decide(eq.as_deref(), matrix.as_deref(), ambient),
    }
}

/// Runs the command line `argv` (program name first), writing the report
/// to `out`; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    let (code, body) = match dispatch(&cli) {
        Ok(r) => (
            r.code,
            match cli.shared.format {
                Format::Text => r.text,
                Format::Json => serde_json::to_string_pretty(&r.json).expect("reports serialize"),
            },
        ),
        Err(msg) => (
            2,
            match cli.shared.format {
                Format::Text => format!("error: {msg}"),
                Format::Json => serde_json::to_string_pretty(&json!({ "error": msg })).expect("reports serialize"),
            },
        ),
    };
    let _ = writeln!(out, "{body}");
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("coopkit").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn decide_exit_codes() {
        let (code, out) = go(&["decide", "--eq", "x + x = x", "--ambient", "interval"]);
        assert_eq!(code, 1);
        assert!(out.contains("x=1/2"), "{out}");
        let (code, _) = go(&["decide", "--eq", "x + (x -> y) = y + (y -> x)", "--ambient", "nonneg"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(go(&["frobnicate"]).0, 2);
        assert_eq!(go(&["decide", "--eq", "x +", "--ambient", "interval"]).0, 2);
        assert_eq!(go(&["check-proof", "/nonexistent.json", "--logic", "CLc"]).0, 2);
        assert_eq!(go(&["--help"]).0, 0);
    }

    #[test]
    fn eval_and_parse() {
        let (code, out) = go(&["eval", "P -o 1", "--model", "dyadic-capped:1", "--assign", "P=1/4"]);
        assert_eq!((code, out.trim()), (0, "3/4"));
        let (code, _) = go(&["eval", "P |- P * P", "--model", "dyadic-capped:1", "--assign", "P=1/2"]);
        assert_eq!(code, 1);
        let (code, out) = go(&["--format", "json", "parse", "P -o Q -o P"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"kind\": \"formula\""));
    }
}
