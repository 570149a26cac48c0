//! `uclab`: command-line front end to the union-closed families toolkit.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use uclab::accounting::{hyper_accounts, local_characterization_of, pure_lower_bound, rising_accounts};
use uclab::antichain::{augmentable_closure, maximize_objective, symmetric_chains, AntichainState, Run};
use uclab::bounds::{average_report, irreducible_bound, AverageReport, IrreducibleBoundReport};
use uclab::harness::{check_ids, lookup, run_suite, sample_families, sample_union_closed, Mode, SuiteConfig, WordMode};
use uclab::rising::{rise, transcript_assertions};
use uclab::setfam::{parse_fam, write_fam};
use uclab::{Assertion, GroundSet, Rational, SetFamily, SubsetMask, Word};

#[derive(Parser)]
#[command(name = "uclab", version, about = "Exact computation with union-closed set families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Rise a family along a word and dump the transcript.
    Rise(FamilyWord),
    /// Spurious and pure accounts per element.
    Account(FamilyWord),
    /// Localized average and its lower bounds.
    Bounds(BoundsArgs),
    /// Antichain augmentation tools.
    #[command(subcommand)]
    Antichain(AntichainCommand),
    /// Print sampled families in `.fam` format.
    Sample(SampleArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    /// Scan every family on the ground set (n <= 4).
    #[arg(long, conflicts_with = "count")]
    exhaustive: bool,
    /// Families drawn per domain when sampling.
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `all`, or the number of random words per family.
    #[arg(long, default_value = "all")]
    words: String,
    /// Comma-separated check ids; all by default.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// List check ids and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct FamilyWord {
    /// A `.fam` file.
    #[arg(long)]
    family: PathBuf,
    /// Word as labels, e.g. `abc` or `x1,x2,x3`; identity by default.
    #[arg(long)]
    word: Option<String>,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    input: FamilyWord,
    /// `min`, or members separated by `;` such as `a,b;c`.
    #[arg(long, default_value = "min")]
    localizer: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum AntichainCommand {
    /// Maximize 2|A| + |min shade(A)| over antichains of 2^X.
    Maximize {
        #[arg(long)]
        n: usize,
    },
    /// Close an antichain under augmentability and report its state.
    Check {
        #[arg(long)]
        family: PathBuf,
    },
    /// Symmetric chain decomposition of 2^X.
    Scd {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Arbitrary families instead of union-closed ones.
    #[arg(long)]
    any: bool,
}

/// Distinguishes input problems (exit 2) from failed statements (exit 1).
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Verify(args) => verify(args),
        Command::Rise(args) => rise_cmd(args),
        Command::Account(args) => account(args),
        Command::Bounds(args) => bounds(args),
        Command::Antichain(cmd) => antichain(cmd),
        Command::Sample(args) => sample(args),
    }
}

fn load(path: &PathBuf) -> Result<SetFamily> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_fam(&text)?)
}

fn load_with_word(args: &FamilyWord) -> Result<(SetFamily, Word)> {
    let family = load(&args.family)?;
    let word = match &args.word {
        Some(w) => Word::parse(family.ground(), w)?,
        None => Word::identity(family.n()),
    };
    Ok((family, word))
}

fn members(f: &SetFamily) -> Value {
    json!(f.format())
}

fn subset(ground: &GroundSet, m: SubsetMask) -> Value {
    json!(ground.format_subset(m))
}

fn ratio(r: &Rational) -> Value {
    json!(r.to_string())
}

fn assertions_json(list: &[Assertion]) -> Value {
    list.iter().map(|a| (a.name.clone(), json!(a.holds))).collect::<serde_json::Map<_, _>>().into()
}

fn outcome_of(list: &[Assertion]) -> Outcome {
    if list.iter().all(|a| a.holds) {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn print_json(v: &Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<Outcome> {
    if args.list {
        for id in check_ids() {
            println!("{id:24} {}", lookup(id)?.about);
        }
        return Ok(Outcome::Pass);
    }
    let words = match args.words.as_str() {
        "all" => WordMode::All,
        k => WordMode::Sample(k.parse().with_context(|| format!("--words expects `all` or a count, got `{k}`"))?),
    };
    let config = SuiteConfig {
        n: args.n,
        mode: if args.exhaustive { Mode::Exhaustive } else { Mode::Sample },
        sample_count: args.count,
        seed: args.seed,
        words,
        checks: args.checks,
        output: args.json,
    };
    let report = run_suite(&config)?;
    for c in &report.checks {
        let status = if c.ok() { "ok  " } else { "FAIL" };
        println!(
            "{status} {:24} cases {:>8}  failed {:>6}  skipped {:>6}  findings {:>4}  {:>7} ms",
            c.id, c.cases, c.failed, c.skipped, c.findings, c.elapsed_ms
        );
        if let Some(cx) = &c.first_counterexample {
            println!("     counterexample: {}", serde_json::to_string(cx)?);
        }
    }
    for f in &report.findings {
        println!("finding [{}] {{{}}}: {}", f.check, f.members.join(", "), f.note);
    }
    Ok(if report.ok() { Outcome::Pass } else { Outcome::Fail })
}

fn rise_cmd(args: FamilyWord) -> Result<Outcome> {
    let (family, word) = load_with_word(&args)?;
    let t = rise(&family, &word)?;
    let g = family.ground();
    let checks = transcript_assertions(&t);
    print_json(&json!({
        "word": word.format(g),
        "sections": t.sections().iter().map(members).collect::<Vec<_>>(),
        "forward": t.forward_pairs().map(|(a, b)| json!([subset(g, a), subset(g, b)])).collect::<Vec<_>>(),
        "image": members(t.image()),
        "assertions": assertions_json(&checks),
    }))?;
    Ok(outcome_of(&checks))
}

fn account(args: FamilyWord) -> Result<Outcome> {
    let (family, word) = load_with_word(&args)?;
    family.require_union_closed()?;
    let acc = rising_accounts(&family, &word)?;
    let hyper = hyper_accounts(&family)?;
    let g = family.ground();
    let mut checks = acc.assertions();
    checks.push(Assertion::new("local characterization", local_characterization_of(&acc).violations.is_empty()));
    checks.extend(pure_lower_bound(&family, &word)?.assertions(&acc));
    checks.extend(hyper.assertions());
    let mut elements = serde_json::Map::new();
    for a in 0..family.n() {
        let (lo, mid, hi) = hyper.sandwich(a);
        elements.insert(
            g.label(a).to_string(),
            json!({
                "spurious": members(&acc.sigma_by_element[a]),
                "pure": members(&acc.pi_by_element[a]),
                "hyper_spurious": members(&hyper.sigma_by_element[a]),
                "hyper_pure": members(&hyper.pi_by_element[a]),
                "s": members(&acc.sp[a].s),
                "p": members(&acc.sp[a].p),
                "sandwich": [lo, mid, hi],
            }),
        );
    }
    print_json(&json!({
        "word": word.format(g),
        "image": members(acc.image()),
        "invariant": members(&hyper.invariant),
        "elements": elements,
        "assertions": assertions_json(&checks),
    }))?;
    Ok(outcome_of(&checks))
}

fn parse_localizer(family: &SetFamily, text: &str) -> Result<SetFamily> {
    if text == "min" {
        return Ok(family.minimal());
    }
    let parts: Vec<&str> = text.split(';').map(str::trim).collect();
    Ok(SetFamily::parse(family.ground().clone(), &parts)?)
}

fn average_json(r: &AverageReport, g: &GroundSet) -> Value {
    json!({
        "localizer": members(&r.localizer),
        "word": r.word.format(g),
        "family_size": r.family_size,
        "ideal_size": r.ideal_size,
        "length_sum": r.length_sum,
        "average": ratio(&r.average),
        "upset_size": r.upset_size,
        "pure_sum": r.pure_sum,
        "spurious_sum": r.spurious_sum,
        "bound_local": ratio(&r.bound_local),
        "bound_general": { "value": r.bound_general.value, "holds": r.bound_general.holds(), "attained": r.bound_general.attained() },
        "bound_max_antichain": r.bound_max_antichain.as_ref().map(ratio),
        "bound_max_antichain_search": r.bound_max_antichain_search.as_ref().map(|b| json!({
            "antichain": members(&b.antichain), "max_len": b.max_len, "bound": ratio(&b.bound),
        })),
        "sigma_s": r.sigma_s,
        "bound_invariant": ratio(&r.bound_invariant),
        "hyper_spurious_sum": r.hyper_spurious_sum,
        "hyper_pure_sum": r.hyper_pure_sum,
        "bound_hyper": ratio(&r.bound_hyper),
        "bound_hyper_rewritten": ratio(&r.bound_hyper_rewritten),
        "pure_floor": r.pure_floor,
        "reimer": r.reimer,
    })
}

fn irreducible_json(r: &IrreducibleBoundReport) -> Value {
    json!({
        "j_count": r.j_count,
        "min_image": r.min_image,
        "second_level": r.second_level,
        "bound": r.layer_bound,
        "sperner_bound": r.sperner_bound,
    })
}

fn bounds(args: BoundsArgs) -> Result<Outcome> {
    let (family, word) = load_with_word(&args.input)?;
    family.require_union_closed()?;
    let s = parse_localizer(&family, &args.localizer)?;
    let avg = average_report(&family, &s, &word)?;
    let irr = irreducible_bound(&family, &word)?;
    let mut checks = avg.assertions();
    checks.extend(irr.assertions());
    if args.json {
        print_json(&json!({
            "average": average_json(&avg, family.ground()),
            "irreducible": irreducible_json(&irr),
            "assertions": assertions_json(&checks),
        }))?;
    } else {
        println!("localized average      {}", avg.average);
        println!("local bound            {}", avg.bound_local);
        println!("general bound          {:.6}", avg.bound_general.value);
        println!("invariant bound        {}", avg.bound_invariant);
        println!("hyper bound            {}", avg.bound_hyper);
        if let Some(b) = &avg.bound_max_antichain {
            println!("max-antichain bound    {b}");
        }
        println!("|J(F)|                 {} <= {} <= {}", irr.j_count, irr.layer_bound, irr.sperner_bound);
        for a in checks.iter().filter(|a| !a.holds) {
            println!("FAILED: {}", a.name);
        }
    }
    Ok(outcome_of(&checks))
}

fn state_json(s: &AntichainState) -> Value {
    json!({
        "antichain": members(&s.antichain),
        "nabla_bar": members(&s.nabla_bar),
        "objective": s.objective,
        "min_len": s.min_len,
        "max_len": s.max_len,
        "augmentable": s.is_augmentable(),
    })
}

fn run_json(r: &Run) -> Value {
    json!({
        "seed": members(&r.seed),
        "steps": r.steps.iter().map(|s| json!({
            "kind": format!("{:?}", s.kind).to_lowercase(),
            "objective": [s.objective_before, s.objective_after],
            "sound": s.is_sound(),
        })).collect::<Vec<_>>(),
        "fixpoint": state_json(&r.fixpoint),
    })
}

fn antichain(cmd: AntichainCommand) -> Result<Outcome> {
    match cmd {
        AntichainCommand::Maximize { n } => {
            let out = maximize_objective(n)?;
            let sound = out.runs.iter().all(|r| r.steps.iter().all(|s| s.is_sound()));
            print_json(&json!({
                "n": n,
                "best": state_json(&out.best),
                "runs": out.runs.iter().map(run_json).collect::<Vec<_>>(),
                "sound": sound,
            }))?;
            Ok(if sound { Outcome::Pass } else { Outcome::Fail })
        }
        AntichainCommand::Check { family } => {
            let a = load(&family)?;
            let input = AntichainState::new(a.clone())?;
            let closed = augmentable_closure(&a)?;
            print_json(&json!({ "input": state_json(&input), "closure": state_json(&closed) }))?;
            Ok(Outcome::Pass)
        }
        AntichainCommand::Scd { n } => {
            let scd = symmetric_chains(n)?;
            let g = GroundSet::new(n)?;
            let checks = scd.assertions();
            print_json(&json!({
                "n": n,
                "chains": scd.chains.iter().map(|c| c.iter().map(|&z| subset(&g, z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "assertions": assertions_json(&checks),
            }))?;
            Ok(outcome_of(&checks))
        }
    }
}

fn sample(args: SampleArgs) -> Result<Outcome> {
    let families: Vec<SetFamily> = if args.any {
        sample_families(args.n, args.count, args.seed)?.collect()
    } else {
        sample_union_closed(args.n, args.count, args.seed)?.collect()
    };
    let mut out = std::io::stdout().lock();
    for (i, f) in families.iter().enumerate() {
        writeln!(out, "# sample {i}\n{}", write_fam(f))?;
    }
    Ok(Outcome::Pass)
}
