//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test --release -p uclab-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use num_rational::Ratio;
use uclab::antichain::{enumerate_antichains, maximize_objective, symmetric_chains, AntichainState};
use uclab::bounds::{irreducible_bound, removal_trace};
use uclab::harness::{run_suite, Finding, SuiteConfig, VerificationReport, WordMode};
use uclab::rising::burnside_report;
use uclab::setfam::binomial;
use uclab::{GroundSet, SetFamily, Word};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Verdict { ok, detail: detail.into() }
    }
}

fn suite(n: usize, exhaustive: bool, count: usize, words: WordMode, checks: &[&str]) -> VerificationReport {
    let base = if exhaustive { SuiteConfig::exhaustive(n) } else { SuiteConfig::sample(n, count, 0x5eed + n as u64) };
    run_suite(&base.with_words(words).with_checks(checks)).expect("valid configuration")
}

/// Folds several suite runs into one verdict naming the first failure, if any.
fn suites(runs: Vec<VerificationReport>) -> (Verdict, Vec<Finding>) {
    let mut cases = 0;
    let mut first = None;
    let mut findings = Vec::new();
    for r in &runs {
        for c in &r.checks {
            cases += c.cases;
            if first.is_none() {
                if let Some(cx) = &c.first_counterexample {
                    first = Some(format!(
                        "n={} {}: {{{}}} word {:?} failed {:?}",
                        r.config.n,
                        cx.check,
                        cx.members.join(", "),
                        cx.word,
                        cx.failed
                    ));
                }
            }
        }
        findings.extend(r.findings.iter().cloned());
    }
    let ok = runs.iter().all(VerificationReport::ok);
    (Verdict::new(ok, first.unwrap_or_else(|| format!("{cases} cases"))), findings)
}

fn rising_correctness() -> Verdict {
    suites(vec![suite(3, true, 0, WordMode::All, &["rising", "orbits"])]).0
}

fn orbits_are_max_fibers() -> Verdict {
    suites(vec![suite(3, true, 0, WordMode::All, &["orbits"]), suite(4, true, 0, WordMode::All, &["orbits"])]).0
}

fn stabilizer_counts() -> Verdict {
    let (sweep, _) =
        suites(vec![suite(3, true, 0, WordMode::All, &["orbits"]), suite(4, true, 0, WordMode::All, &["orbits"])]);
    let f = SetFamily::parse(GroundSet::new(3).unwrap(), &["a", "abc"]).unwrap();
    let b = burnside_report(&f).unwrap();
    let example = b.word_stabilizer_sum == 12 && b.inequality_lhs == Ratio::new(5, 6);
    let detail = format!("{}; example sum {} and lhs {}", sweep.detail, b.word_stabilizer_sum, b.inequality_lhs);
    Verdict::new(sweep.ok && example, detail)
}

fn accounting_identities() -> Verdict {
    let mut runs: Vec<_> = (1..=3).map(|n| suite(n, true, 0, WordMode::All, &["sp-balance"])).collect();
    runs.extend((1..=3).map(|n| suite(n, true, 0, WordMode::All, &["accounts", "hyper"])));
    runs.push(suite(4, true, 0, WordMode::Sample(3), &["accounts", "hyper"]));
    suites(runs).0
}

fn average_bounds() -> Verdict {
    let mut runs: Vec<_> = (1..=3).map(|n| suite(n, true, 0, WordMode::All, &["average-bounds"])).collect();
    runs.push(suite(4, true, 0, WordMode::Sample(2), &["average-bounds"]));
    suites(runs).0
}

fn swapping() -> Verdict {
    let (sweep, _) = suites(vec![
        suite(3, true, 0, WordMode::All, &["removal"]),
        suite(5, false, 10_000, WordMode::Sample(1), &["removal"]),
    ]);
    let f = SetFamily::parse(GroundSet::new(3).unwrap(), &["a", "ab", "abc"]).unwrap();
    let g = f.ground().clone();
    let t = removal_trace(&f, g.parse_subset("ab").unwrap(), &Word::identity(3)).unwrap();
    let lost = t.before.image().minus(t.after.image());
    let example = t.bar() == Some(g.parse_subset("a").unwrap()) && lost.format() == ["ac"];
    let detail =
        format!("{}; example bar {:?}, lost {:?}", sweep.detail, t.bar().map(|m| g.format_subset(m)), lost.format());
    Verdict::new(sweep.ok && example, detail)
}

fn irreducible_counts() -> Verdict {
    let (sweep, _) = suites((1..=4).map(|n| suite(n, true, 0, WordMode::All, &["irreducible-bound"])).collect());
    let mut witnesses = Vec::new();
    let all = (1..=6).all(|n| {
        let ground = GroundSet::new(n).unwrap();
        let f = SetFamily::power_set(ground).filter(|z| z.len() >= n / 2);
        let r = irreducible_bound(&f, &Word::identity(n)).unwrap();
        witnesses.push(r.j_count);
        // At n = 1 the family is {∅, a} and both members are irreducible, so only the lower sandwich applies.
        let sandwich = if n == 1 { r.j_count as u64 >= binomial(n, 0) } else { r.j_count as u64 == binomial(n, n / 2) };
        sandwich && r.assertions().iter().all(|a| a.holds)
    });
    Verdict::new(sweep.ok && all, format!("{}; upper-half |J| for n=1..6: {witnesses:?}", sweep.detail))
}

fn antichain_extremes() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, bound, witness) in [(3, 9, 1), (4, 16, 2)] {
        let ground = GroundSet::new(n).unwrap();
        let all = enumerate_antichains(ground.clone()).unwrap();
        let states: Vec<AntichainState> =
            all.iter().filter(|a| !a.is_empty()).map(|a| AntichainState::new(a.clone()).unwrap()).collect();
        let best = states.iter().map(|s| s.objective).max().unwrap();
        let level = AntichainState::new(SetFamily::level(ground, witness)).unwrap();
        ok &= best == bound && level.objective == bound;
        parts.push(format!("n={n}: {} antichains, max {best}", all.len()));
        if n == 4 {
            ok &= all.len() == 168;
        }
    }
    let six = maximize_objective(6).unwrap();
    let level = SetFamily::level(GroundSet::new(6).unwrap(), 3);
    ok &= six.best.objective == 55 && six.best.antichain == level;
    parts.push(format!("maximize(6) = {}", six.best.objective));
    Verdict::new(ok, parts.join(", "))
}

fn augmentation_soundness() -> Verdict {
    let mut steps = 0;
    let mut ok = true;
    for n in [2, 4, 6, 8] {
        match maximize_objective(n) {
            Ok(out) => {
                for r in &out.runs {
                    steps += r.steps.len();
                    ok &= r.steps.iter().all(|s| s.is_sound()) && r.fixpoint.is_augmentable();
                }
            }
            Err(e) => return Verdict::new(false, format!("n={n}: {e}")),
        }
    }
    Verdict::new(ok, format!("{steps} steps over n in {{2,4,6,8}}"))
}

fn chain_decomposition() -> Verdict {
    let mut chains = 0;
    let ok = (1..=10).all(|n| {
        let scd = symmetric_chains(n).unwrap();
        chains += scd.chains.len();
        scd.chains.len() as u64 == binomial(n, n / 2) && scd.assertions().iter().all(|a| a.holds)
    });
    Verdict::new(ok, format!("{chains} chains for n=1..10"))
}

fn frankl_witnesses() -> Verdict {
    let mut runs: Vec<_> = (1..=4).map(|n| suite(n, true, 0, WordMode::Sample(1), &["frankl"])).collect();
    runs.extend((5..=7).map(|n| suite(n, false, 5_000, WordMode::Sample(1), &["frankl"])));
    let (verdict, findings) = suites(runs);
    if findings.is_empty() {
        Verdict::new(verdict.ok, format!("{}; every family has a witness", verdict.detail))
    } else {
        for f in &findings {
            println!("FINDING: no witness element for {{{}}}", f.members.join(", "));
        }
        Verdict::new(verdict.ok, format!("{}; {} families without a witness", verdict.detail, findings.len()))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("rising correctness", rising_correctness),
        ("orbits are maximal fibers", orbits_are_max_fibers),
        ("word stabilizer counts", stabilizer_counts),
        ("accounting identities", accounting_identities),
        ("average bounds", average_bounds),
        ("swapping machinery", swapping),
        ("join-irreducible bound", irreducible_counts),
        ("antichain extremal values", antichain_extremes),
        ("augmentation soundness", augmentation_soundness),
        ("symmetric chain decomposition", chain_decomposition),
        ("frankl witnesses", frankl_witnesses),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let status = if v.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {name} ({:.2}s): {}", i + 1, start.elapsed().as_secs_f64(), v.detail);
        failed += usize::from(!v.ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
