use std::path::PathBuf;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::{check_ids, lookup, Check, Domain, Finding, Outcome};
use super::{enumerate_families, enumerate_union_closed, sample_families, sample_union_closed, MAX_EXHAUSTIVE_N};
use crate::error::{Error, Result};
use crate::setfam::{GroundSet, SetFamily, Word, MAX_N};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

/// Largest `n` for which every word is tried on every family.
const MAX_ALL_WORDS_N: usize = 5;

/// Findings kept per check; the count is always exact.
const MAX_FINDINGS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordMode {
    All,
    /// This many random words per family.
    Sample(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub n: usize,
    pub mode: Mode,
    /// Families drawn per domain in sample mode.
    pub sample_count: usize,
    pub seed: u64,
    pub words: WordMode,
    /// Empty means every registered check.
    pub checks: Vec<String>,
    /// Where `run_suite` writes the JSON report, if anywhere.
    pub output: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn exhaustive(n: usize) -> Self {
        SuiteConfig {
            n,
            mode: Mode::Exhaustive,
            sample_count: 0,
            seed: 0,
            words: WordMode::All,
            checks: Vec::new(),
            output: None,
        }
    }

    pub fn sample(n: usize, sample_count: usize, seed: u64) -> Self {
        SuiteConfig {
            n,
            mode: Mode::Sample,
            sample_count,
            seed,
            words: WordMode::Sample(1),
            checks: Vec::new(),
            output: None,
        }
    }

    pub fn with_checks(mut self, ids: &[&str]) -> Self {
        self.checks = ids.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn with_words(mut self, words: WordMode) -> Self {
        self.words = words;
        self
    }

    /// Resolves the check list, rejecting bad configurations before any work starts.
    pub fn validate(&self) -> Result<Vec<Check>> {
        if !(1..=MAX_N).contains(&self.n) {
            return Err(Error::GroundSize(self.n));
        }
        if self.mode == Mode::Exhaustive && self.n > MAX_EXHAUSTIVE_N {
            return Err(Error::TooLarge { what: "exhaustive mode", n: self.n, max: MAX_EXHAUSTIVE_N });
        }
        if self.words == WordMode::All && self.n > MAX_ALL_WORDS_N {
            return Err(Error::TooLarge { what: "all-words mode", n: self.n, max: MAX_ALL_WORDS_N });
        }
        if self.checks.is_empty() {
            return check_ids().into_iter().map(lookup).collect();
        }
        self.checks.iter().map(|id| lookup(id)).collect()
    }
}

/// One input: a family and, for word-dependent checks, a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub family: SetFamily,
    pub word: Option<Word>,
}

/// A failing case in a self-contained, replayable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub ground: Vec<String>,
    pub members: Vec<String>,
    pub word: Option<String>,
    pub failed: Vec<String>,
}

impl Counterexample {
    fn new(check: &Check, case: &Case, failed: Vec<String>) -> Self {
        let ground = case.family.ground();
        Counterexample {
            check: check.id.to_string(),
            ground: ground.labels().to_vec(),
            members: case.family.format(),
            word: case.word.as_ref().map(|w| w.format(ground)),
            failed,
        }
    }

    pub fn case(&self) -> Result<Case> {
        let ground = GroundSet::with_labels(self.ground.iter().cloned())?;
        let members: Vec<&str> = self.members.iter().map(String::as_str).collect();
        let family = SetFamily::parse(ground.clone(), &members)?;
        let word = self.word.as_deref().map(|w| Word::parse(&ground, w)).transpose()?;
        Ok(Case { family, word })
    }
}

/// Re-runs the recorded check on the recorded case.
pub fn replay(cx: &Counterexample) -> Result<Outcome> {
    let check = lookup(&cx.check)?;
    let case = cx.case()?;
    Ok(check.evaluate(&case.family, case.word.as_ref()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub cases: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub findings: u64,
    pub elapsed_ms: u64,
    /// The failing case with the smallest index, so reruns report the same one.
    pub first_counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub config: SuiteConfig,
    pub checks: Vec<CheckReport>,
    pub findings: Vec<Finding>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(CheckReport::ok)
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    passed: u64,
    failed: u64,
    skipped: u64,
    findings: Vec<(usize, Finding)>,
    finding_count: u64,
    first: Option<(usize, Counterexample)>,
}

impl Tally {
    fn record(&mut self, check: &Check, index: usize, case: &Case, outcome: Outcome) {
        self.cases += 1;
        match outcome {
            Outcome::Pass => self.passed += 1,
            Outcome::Skip => self.skipped += 1,
            Outcome::Fail(names) if check.finding_only => {
                self.passed += 1;
                self.finding_count += 1;
                if self.findings.len() < MAX_FINDINGS {
                    let ground = case.family.ground();
                    self.findings.push((
                        index,
                        Finding {
                            check: check.id.to_string(),
                            ground: ground.labels().to_vec(),
                            members: case.family.format(),
                            note: names.join("; "),
                        },
                    ));
                }
            }
            Outcome::Fail(names) => {
                self.failed += 1;
                if self.first.as_ref().is_none_or(|(i, _)| index < *i) {
                    self.first = Some((index, Counterexample::new(check, case, names)));
                }
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
        self.finding_count += other.finding_count;
        self.findings.extend(other.findings);
        self.findings.sort_by_key(|(i, _)| *i);
        self.findings.truncate(MAX_FINDINGS);
        self.first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }

    fn into_report(self, check: &Check, elapsed_ms: u64) -> (CheckReport, Vec<Finding>) {
        let report = CheckReport {
            id: check.id.to_string(),
            cases: self.cases,
            passed: self.passed,
            failed: self.failed,
            skipped: self.skipped,
            findings: self.finding_count,
            elapsed_ms,
            first_counterexample: self.first.map(|(_, cx)| cx),
        };
        (report, self.findings.into_iter().map(|(_, f)| f).collect())
    }
}

/// Runs one check over an explicit list of cases, whatever their domain.
pub fn run_cases(check: &Check, cases: &[Case]) -> (CheckReport, Vec<Finding>) {
    let start = Instant::now();
    let tally = cases
        .par_iter()
        .enumerate()
        .fold(Tally::default, |mut t, (i, case)| {
            t.record(check, i, case, check.evaluate(&case.family, case.word.as_ref()));
            t
        })
        .reduce(Tally::default, Tally::merge);
    tally.into_report(check, start.elapsed().as_millis() as u64)
}

fn words_for(config: &SuiteConfig, family_index: usize) -> Vec<Word> {
    match config.words {
        WordMode::All => Word::all(config.n).collect(),
        WordMode::Sample(k) => {
            let stream = config.seed ^ (family_index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
            let mut rng = ChaCha8Rng::seed_from_u64(stream);
            (0..k.max(1)).map(|_| Word::random(config.n, &mut rng)).collect()
        }
    }
}

fn run_over(check: &Check, config: &SuiteConfig, families: &[SetFamily]) -> (CheckReport, Vec<Finding>) {
    let start = Instant::now();
    let per_family = match (check.uses_word, config.words) {
        (false, _) => 1,
        (true, WordMode::All) => (1..=config.n).product(),
        (true, WordMode::Sample(k)) => k.max(1),
    };
    let tally = families
        .par_iter()
        .enumerate()
        .fold(Tally::default, |mut t, (fi, family)| {
            let words: Vec<Option<Word>> =
                if check.uses_word { words_for(config, fi).into_iter().map(Some).collect() } else { vec![None] };
            for (wi, word) in words.into_iter().enumerate() {
                let outcome = check.evaluate(family, word.as_ref());
                let needs_case = !matches!(outcome, Outcome::Pass | Outcome::Skip);
                if needs_case {
                    let case = Case { family: family.clone(), word };
                    t.record(check, fi * per_family + wi, &case, outcome);
                } else {
                    t.cases += 1;
                    match outcome {
                        Outcome::Pass => t.passed += 1,
                        _ => t.skipped += 1,
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    tally.into_report(check, start.elapsed().as_millis() as u64)
}

fn families_for(config: &SuiteConfig, domain: Domain) -> Result<Vec<SetFamily>> {
    match (config.mode, domain) {
        (Mode::Exhaustive, Domain::UnionClosed) => enumerate_union_closed(config.n),
        (Mode::Exhaustive, Domain::AnyFamily) => enumerate_families(config.n),
        (Mode::Sample, Domain::UnionClosed) => {
            Ok(sample_union_closed(config.n, config.sample_count, config.seed)?.collect())
        }
        (Mode::Sample, Domain::AnyFamily) => Ok(sample_families(config.n, config.sample_count, config.seed)?.collect()),
    }
}

/// Runs every configured check over its domain and collects one report per check.
pub fn run_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    let checks = config.validate()?;
    let start = Instant::now();
    let mut union_closed = None;
    let mut any = None;
    let mut reports = Vec::with_capacity(checks.len());
    let mut findings = Vec::new();
    for check in &checks {
        let slot = match check.domain {
            Domain::UnionClosed => &mut union_closed,
            Domain::AnyFamily => &mut any,
        };
        if slot.is_none() {
            *slot = Some(families_for(config, check.domain)?);
        }
        let (report, found) = run_over(check, config, slot.as_ref().expect("filled above"));
        reports.push(report);
        findings.extend(found);
    }
    let report = VerificationReport {
        schema: SCHEMA,
        config: config.clone(),
        checks: reports,
        findings,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    if let Some(path) = &config.output {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}
