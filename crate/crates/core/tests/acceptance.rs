//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::time::{Duration, Instant};

use hopf_strict::action::{counterexample_action, WeakGAction};
use hopf_strict::module::{functor_f, ModuleRep};
use hopf_strict::obstruction::{forced_constraint_replay, search_solutions, ObstructionProblem, ReplayStatus};
use hopf_strict::ribbon::{check_extraction, check_ribbon, transfer_ribbon, RibbonData};
use hopf_strict::suite::{d4_strictification, d4_table_check, equivalence_suite, fuzz_case, module_corpus};
use hopf_strict::verdict::Verdict;
use hopf_strict::{FieldSpec, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn first_failure(v: &Verdict) -> String {
    v.first_failure().map(|c| c.to_string()).unwrap_or_default()
}

fn f(p: u64) -> FieldSpec {
    FieldSpec::prime(p).expect("prime")
}

fn criterion_1() -> Result<Outcome> {
    let t = Instant::now();
    let c = d4_table_check()?;
    let el = t.elapsed();
    Ok(outcome(c.passed && el < Duration::from_millis(100), format!("16 table entries, {c}, {el:.2?}")))
}

fn criterion_2() -> Result<Outcome> {
    let mut details = Vec::new();
    let mut ok = true;
    for field in [FieldSpec::Rationals, f(5)] {
        let t = Instant::now();
        let s = d4_strictification(field)?;
        let v = s.verify()?;
        let el = t.elapsed();
        let laws = [
            "associativity",
            "unit",
            "coproduct_multiplicative",
            "weak_unit",
            "weak_counit",
            "antipode_source",
            "antipode_target",
            "antipode_sandwich",
        ];
        let all_laws = laws.iter().all(|l| v.passed(&format!("algebra.{l}")));
        ok &= s.algebra().dim() == 32 && all_laws && v.all_passed() && el < Duration::from_secs(5);
        details.push(format!("{field}: dim {}, {} checks, {el:.2?} {}", s.algebra().dim(), v.checks.len(), first_failure(&v)));
    }
    Ok(outcome(ok, details.join("; ")))
}

fn criterion_3() -> Result<Outcome> {
    let s = d4_strictification(FieldSpec::Rationals)?;
    let checks: Vec<_> = s.check_closed_forms()?.into_iter().chain(s.check_counital_subalgebras()?).collect();
    let ok = checks.iter().all(|c| c.passed);
    let names: Vec<String> = checks.iter().map(|c| c.to_string()).collect();
    Ok(outcome(ok, names.join(", ")))
}

fn criterion_4() -> Result<Outcome> {
    let s = d4_strictification(FieldSpec::Rationals)?;
    let v = s.verify()?;
    let hom = s.check_homomorphism();
    let structure = v.checks.iter().filter(|c| c.name.starts_with("hopf_action.") || c.name.starts_with("action."));
    let grading: Vec<_> = v.checks.iter().filter(|c| c.name.starts_with("grading.")).collect();
    let ok = hom.passed && structure.clone().all(|c| c.passed) && !grading.is_empty() && grading.iter().all(|c| c.passed);
    Ok(outcome(ok, format!("{hom}, {} action checks, {} grading checks", structure.count(), grading.len())))
}

fn criterion_5() -> Result<Outcome> {
    let s = d4_strictification(f(7))?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let corpus = module_corpus(s.base(), 5, 4, &mut rng)?;
    let dims: Vec<usize> = corpus.iter().map(ModuleRep::dim).collect();
    let t = Instant::now();
    let v = equivalence_suite(&s, &corpus, 4)?;
    Ok(outcome(
        v.all_passed(),
        format!("corpus dims {dims:?}, {} checks, {:.2?} {}", v.checks.len(), t.elapsed(), first_failure(&v)),
    ))
}

fn criterion_6() -> Result<Outcome> {
    let mut ok = true;
    let mut details = Vec::new();
    for p in [3, 5, 7] {
        let t = Instant::now();
        let table = search_solutions(&ObstructionProblem::new(counterexample_action(f(p)))?)?;
        let a = counterexample_action(f(p));
        let control = search_solutions(&ObstructionProblem::new(WeakGAction::trivial(a.group().clone(), a.algebra().clone()))?)?;
        let el = t.elapsed();
        ok &= table.solutions.is_empty() && table.exhaustive && !control.solutions.is_empty() && el < Duration::from_secs(1);
        details.push(format!("F{p}: {} vs {} control solutions, {el:.2?}", table.solutions.len(), control.solutions.len()));
    }
    let replay = forced_constraint_replay(&ObstructionProblem::new(counterexample_action(FieldSpec::Rationals))?)?;
    ok &= replay.status == ReplayStatus::Contradiction;
    details.push(format!("Q replay: {:?}", replay.status));
    Ok(outcome(ok, details.join("; ")))
}

fn criterion_7() -> Result<Outcome> {
    let s = d4_strictification(FieldSpec::Rationals)?;
    let base = RibbonData::trivial(s.base().clone())?;
    let out = transfer_ribbon(&s, &base)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let corpus = module_corpus(s.base(), 2, 2, &mut rng)?;
    let moved: Vec<(ModuleRep, usize)> = corpus.iter().map(|m| functor_f(&s, m).map(|x| (x, 0))).collect::<Result<_>>()?;
    let v = check_ribbon(s.output(), &out, &moved)?;
    let mut extraction = true;
    for (x, _) in &moved {
        for (y, _) in &moved {
            extraction &= check_extraction(&s, &base, &out, x, 0, y)?.iter().all(|c| c.passed);
        }
    }
    Ok(outcome(
        v.all_passed() && extraction,
        format!("{} transported modules, {} checks, extraction {extraction} {}", moved.len(), v.checks.len(), first_failure(&v)),
    ))
}

fn criterion_8() -> Result<Outcome> {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut fields = std::collections::BTreeSet::new();
    let mut max_order = 0;
    for seed in 0..50 {
        let c = fuzz_case(seed)?;
        fields.insert(c.field.to_string());
        max_order = max_order.max(c.total_order);
        if !c.passed() || !c.control_caught() {
            bad.push(seed);
        }
    }
    Ok(outcome(
        bad.is_empty() && max_order <= 16,
        format!("50 seeds, fields {fields:?}, largest extension {max_order}, failing seeds {bad:?}, {:.2?}", t.elapsed()),
    ))
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 8] = [
        ("D4 compositor table", criterion_1),
        ("strictification axioms over Q and F5", criterion_2),
        ("counital closed forms and subalgebras", criterion_3),
        ("strict action and grading", criterion_4),
        ("module-category equivalence data over F7", criterion_5),
        ("obstruction search and replay", criterion_6),
        ("ribbon transfer", criterion_7),
        ("randomized extensions with negative controls", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = match run() {
            Ok(o) => (o.ok, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failures += 1;
        }
        println!("{} criterion {}: {name} ({detail})", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
