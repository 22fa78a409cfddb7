//! `hopf-strict`: check documents, strictify weak actions, search for
//! obstructions and run the packaged D4 demo.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad input
//! or usage.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use hopf_strict::action::{weak_action_from_extension, GHopfAlgebra};
use hopf_strict::document::{Document, Workspace};
use hopf_strict::group::GroupExtension;
use hopf_strict::module::check_module;
use hopf_strict::obstruction::{
    forced_constraint_replay, search_solutions, ObstructionProblem, ObstructionReport, ReplayStatus, DEFAULT_MAX_CARRIER,
};
use hopf_strict::ribbon::check_support;
use hopf_strict::strict::strictify_unchecked;
use hopf_strict::suite::{d4_table_check, equivalence_suite, module_corpus};
use hopf_strict::verdict::{Check, Verdict};
use hopf_strict::FieldSpec;
use rand::SeedableRng;

#[derive(Parser)]
#[command(name = "hopf-strict", version, about = "Weak Hopf algebras with weak group actions, and their strictification")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable axiom suite on a document (or one named object).
    Check {
        doc: PathBuf,
        #[arg(long)]
        target: Option<String>,
    },
    /// Build the strictification of a named action and verify it.
    Strictify {
        doc: PathBuf,
        action: String,
        /// Directory for the output document.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the input check; a broken input then shows up as failed
        /// axioms of the output.
        #[arg(long)]
        force: bool,
    },
    /// Look for unit solutions of the twisting equation, or replay the
    /// forced constraints.
    Obstruct {
        doc: PathBuf,
        action: String,
        /// Field to search over: Q or a prime p.
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long)]
        replay: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_CARRIER)]
        max_carrier: u128,
    },
    /// Packaged end-to-end runs. Only `d4` exists.
    Demo {
        name: String,
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
        /// Write the input and strict documents here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Exit {
    Ok,
    CheckFailed,
    InputError,
}

impl Exit {
    fn code(self) -> u8 {
        match self {
            Exit::Ok => 0,
            Exit::CheckFailed => 1,
            Exit::InputError => 2,
        }
    }
}

#[derive(Serialize)]
struct Timing {
    stage: String,
    ms: f64,
}

#[derive(Serialize)]
struct Report {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<String>,
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<serde_json::Value>,
    /// Free-form lines for the human rendering.
    #[serde(skip)]
    lines: Vec<String>,
    timings: Vec<Timing>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    exit: Exit,
}

impl Report {
    fn new(command: &str, target: Option<String>) -> Self {
        Report { command: command.into(), target, checks: vec![], data: None, lines: vec![], timings: vec![], error: None, exit: Exit::Ok }
    }

    fn extend(&mut self, prefix: &str, v: Verdict) {
        for mut c in v.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }

    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings.push(Timing { stage: stage.into(), ms: t.elapsed().as_secs_f64() * 1e3 });
        out
    }

    fn finish(mut self) -> Self {
        if self.exit == Exit::Ok && !self.checks.iter().all(|c| c.passed) {
            self.exit = Exit::CheckFailed;
        }
        self
    }

    fn render(&self) -> String {
        let mut s = format!("hopf-strict {}", self.command);
        if let Some(t) = &self.target {
            s += &format!(" {t}");
        }
        s.push('\n');
        for c in &self.checks {
            s += &format!("  {c}\n");
        }
        for l in &self.lines {
            s += &format!("  {l}\n");
        }
        for t in &self.timings {
            s += &format!("  time {}: {:.1} ms\n", t.stage, t.ms);
        }
        if let Some(e) = &self.error {
            s += &format!("  error: {e}\n");
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        s += &match self.exit {
            Exit::Ok if self.checks.is_empty() => "ok\n".to_string(),
            Exit::Ok => format!("ok: {} checks passed\n", self.checks.len()),
            Exit::CheckFailed => format!("FAILED: {failed} of {} checks\n", self.checks.len()),
            Exit::InputError => "input error\n".to_string(),
        };
        s
    }
}

fn load(path: &Path) -> anyhow::Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Document::from_json(&text)?)
}

fn cmd_check(doc: &Path, target: Option<String>) -> anyhow::Result<Report> {
    let d = load(doc)?;
    let mut r = Report::new("check", target.clone());
    let ws = r.time("load", || Workspace::resolve(&d))?;
    let known = |name: &str| {
        ws.algebras.contains_key(name) || ws.actions.contains_key(name) || ws.modules.contains_key(name) || ws.ribbon.contains_key(name)
    };
    if let Some(t) = &target {
        if !known(t) {
            bail!("no algebra, action, module or ribbon named {t:?}");
        }
    }
    let wanted = |name: &str| target.as_deref().is_none_or(|t| t == name);
    let t = Instant::now();
    let mut classes = serde_json::Map::new();
    for (name, a) in ws.algebras.iter().filter(|(n, _)| wanted(n)) {
        let v = a.verify();
        classes.insert(name.clone(), json!(v.classification));
        r.lines.push(format!("algebra {name}: {:?}", v.classification));
        r.extend(name, v.checks);
    }
    for name in ws.actions.keys().filter(|n| wanted(n)) {
        let gh = ws.g_hopf(name)?;
        r.extend(name, gh.check()?);
    }
    for (name, m) in ws.modules.iter().filter(|(n, _)| wanted(n)) {
        r.extend(name, Verdict { checks: check_module(m) });
    }
    for (name, rb) in ws.ribbon.iter().filter(|(n, _)| wanted(n)) {
        let ok = check_support(rb.algebra(), rb.r())?;
        r.checks.push(if ok { Check::pass(format!("{name}.support")) } else { Check::fail(format!("{name}.support"), vec![]) });
    }
    r.timings.push(Timing { stage: "checks".into(), ms: t.elapsed().as_secs_f64() * 1e3 });
    if !classes.is_empty() {
        r.data = Some(json!({ "classification": classes }));
    }
    Ok(r.finish())
}

fn write_doc(dir: &Path, file: &str, d: &Document) -> anyhow::Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(file);
    fs::write(&path, d.to_json()).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn cmd_strictify(doc: &Path, action: &str, out: Option<&Path>, force: bool) -> anyhow::Result<Report> {
    let d = load(doc)?;
    let mut r = Report::new("strictify", Some(action.into()));
    let ws = r.time("load", || Workspace::resolve(&d))?;
    let gh = ws.g_hopf(action)?;
    if !force {
        let v = r.time("input", || gh.check())?;
        r.extend("input", v);
        if !r.checks.iter().all(|c| c.passed) {
            r.lines.push("input does not pass check; nothing built (use --force to build anyway)".into());
            return Ok(r.finish());
        }
    }
    let s = r.time("build", || strictify_unchecked(&gh))?;
    let v = r.time("verify", || s.verify())?;
    let passed = v.all_passed();
    r.extend("strict", v);
    let (dim_in, dim_out) = (gh.algebra().dim(), s.algebra().dim());
    r.lines.push(format!("dim A = {dim_in}, |G| = {}, dim A^str = {dim_out}", gh.group().order()));
    let mut data = json!({ "input_dim": dim_in, "group_order": gh.group().order(), "strict_dim": dim_out });
    if let Some(dir) = out {
        if passed {
            let mut od = Document::new(ws.field);
            od.add_g_hopf(&format!("{action}_str"), s.output());
            let path = write_doc(dir, &format!("{action}_str.json"), &od)?;
            r.lines.push(format!("wrote {}", path.display()));
            data["out"] = json!(path);
        } else {
            r.lines.push("verification failed; nothing written".into());
        }
    }
    r.data = Some(data);
    Ok(r.finish())
}

fn cmd_obstruct(doc: &Path, action: &str, field: Option<FieldSpec>, replay: bool, max_carrier: u128) -> anyhow::Result<Report> {
    let mut d = load(doc)?;
    let mut r = Report::new("obstruct", Some(action.into()));
    if let Some(f) = field {
        // scalars are reread over the requested field
        d.field = f;
    }
    let ws = r.time("load", || Workspace::resolve(&d))?;
    let act = ws.actions.get(action).with_context(|| format!("no action named {action:?}"))?;
    let prob = ObstructionProblem::new(act.clone())?.with_max_carrier(max_carrier);
    let alg = act.algebra();
    let report = if replay {
        let rep = r.time("replay", || forced_constraint_replay(&prob))?;
        r.lines.extend(rep.steps.iter().cloned());
        r.lines.push(format!("{}: {:?}", rep.field, rep.status));
        ObstructionReport::from_replay(alg, &rep)
    } else {
        if ws.field == FieldSpec::Rationals {
            bail!("the search needs a finite field; pass --field p, or --replay");
        }
        let res = r.time("search", || search_solutions(&prob))?;
        let rep = ObstructionReport::from_search(alg, &res);
        if rep.solutions.is_empty() {
            r.lines.push(format!("{}: no solutions ({} units, exhaustive)", rep.field, res.units));
        } else {
            r.lines.push(format!("{}: {} solutions", rep.field, rep.solutions.len()));
            for s in &rep.solutions {
                r.lines.push(format!("a = ({})", s.join(", ")));
            }
        }
        rep
    };
    r.data = Some(serde_json::to_value(&report)?);
    Ok(r.finish())
}

fn cmd_demo(name: &str, field: FieldSpec, out: Option<&Path>) -> anyhow::Result<Report> {
    if name != "d4" {
        bail!("unknown demo {name:?} (available: d4)");
    }
    let mut r = Report::new("demo", Some(format!("d4 over {field}")));
    let table = r.time("table", d4_table_check)?;
    r.checks.push(table);
    let act = weak_action_from_extension(&GroupExtension::d4(), field)?;
    let gh = GHopfAlgebra::with_trivial_grading(act);
    let v = r.time("input", || gh.check())?;
    r.extend("input", v);
    let s = r.time("strictify", || strictify_unchecked(&gh))?;
    let v = r.time("verify", || s.verify())?;
    r.extend("strict", v);
    r.lines.push(format!("dim A^str = {}", s.algebra().dim()));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let corpus = module_corpus(s.base(), 3, 4, &mut rng)?;
    let v = r.time("modules", || equivalence_suite(&s, &corpus, 2))?;
    r.extend("modules", v);
    let f3 = FieldSpec::prime(3)?;
    let prob = ObstructionProblem::new(weak_action_from_extension(&GroupExtension::d4(), f3)?)?;
    let res = r.time("obstruction", || search_solutions(&prob))?;
    r.checks.push(Check::from_witness("obstruction.no_solutions_F3", res.solutions.first().map(|_| vec![])));
    r.lines.push(format!("F3: {} solutions among {} units (exhaustive)", res.solutions.len(), res.units));
    let replay = forced_constraint_replay(&ObstructionProblem::new(gh.action().clone())?)?;
    if replay.status != ReplayStatus::OutOfScope {
        let ok = replay.status == ReplayStatus::Contradiction;
        r.checks.push(if ok { Check::pass("obstruction.replay") } else { Check::fail("obstruction.replay", vec![]) });
    }
    r.lines.push(format!("replay over {field}: {:?}", replay.status));
    if let Some(dir) = out {
        let mut d = Document::new(field);
        d.add_g_hopf("d4", &gh);
        let p = write_doc(dir, "d4.json", &d)?;
        let mut sd = Document::new(field);
        sd.add_g_hopf("d4_str", s.output());
        let q = write_doc(dir, "d4_str.json", &sd)?;
        r.lines.push(format!("wrote {} and {}", p.display(), q.display()));
    }
    r.data = Some(json!({ "strict_dim": s.algebra().dim(), "corpus_dims": corpus.iter().map(|m| m.dim()).collect::<Vec<_>>() }));
    Ok(r.finish())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, target) = match &cli.command {
        Command::Check { target, .. } => ("check", target.clone()),
        Command::Strictify { action, .. } => ("strictify", Some(action.clone())),
        Command::Obstruct { action, .. } => ("obstruct", Some(action.clone())),
        Command::Demo { name, .. } => ("demo", Some(name.clone())),
    };
    let result = match &cli.command {
        Command::Check { doc, target } => cmd_check(doc, target.clone()),
        Command::Strictify { doc, action, out, force } => cmd_strictify(doc, action, out.as_deref(), *force),
        Command::Obstruct { doc, action, field, replay, max_carrier } => cmd_obstruct(doc, action, *field, *replay, *max_carrier),
        Command::Demo { name, field, out } => cmd_demo(name, *field, out.as_deref()),
    };
    let report = result.unwrap_or_else(|e| {
        let mut r = Report::new(name, target);
        r.error = Some(format!("{e:#}"));
        r.exit = Exit::InputError;
        r
    });
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else if report.exit == Exit::InputError {
        eprint!("{}", report.render());
    } else {
        print!("{}", report.render());
    }
    ExitCode::from(report.exit.code())
}
