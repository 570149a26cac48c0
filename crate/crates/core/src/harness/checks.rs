use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::accounting::{
    covering_equivalences, hyper_accounts, hyper_by_words, local_characterization_of, pure_lower_bound,
    rising_accounts, sp_counts, spurious_monotonicity,
};
use crate::bounds::{average_report, frankl_witness, irreducible_bound, removal_trace};
use crate::error::{Error, Result};
use crate::rising::{rise, star_criterion_agrees, transcript_assertions, word_sweep_assertions};
use crate::setfam::{SetFamily, Word};
use crate::Assertion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    UnionClosed,
    AnyFamily,
}

type RunFn = fn(&SetFamily, Option<&Word>) -> Result<Vec<Assertion>>;

/// One named statement bound to the inputs it quantifies over.
#[derive(Clone, Copy)]
pub struct Check {
    pub id: &'static str,
    pub domain: Domain,
    /// Evaluated once per (family, word) instead of once per family.
    pub uses_word: bool,
    /// Families on larger ground sets are skipped.
    pub max_n: usize,
    /// Failures are reported as findings, never as check failures.
    pub finding_only: bool,
    pub about: &'static str,
    run: RunFn,
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check").field("id", &self.id).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Skip,
    /// Names of the failing statements, or `error: …` when the check could not run.
    Fail(Vec<String>),
}

/// A result worth reporting that is not a check failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub ground: Vec<String>,
    pub members: Vec<String>,
    pub note: String,
}

impl Check {
    pub fn applies_to(&self, family: &SetFamily) -> bool {
        family.n() <= self.max_n && (self.domain == Domain::AnyFamily || family.is_union_closed())
    }

    pub fn evaluate(&self, family: &SetFamily, word: Option<&Word>) -> Outcome {
        if family.n() > self.max_n {
            return Outcome::Skip;
        }
        match (self.run)(family, word) {
            Ok(list) => {
                let failed: Vec<String> = list.into_iter().filter(|a| !a.holds).map(|a| a.name).collect();
                if failed.is_empty() {
                    Outcome::Pass
                } else {
                    Outcome::Fail(failed)
                }
            }
            Err(Error::TrivialFamily) => Outcome::Skip,
            Err(e) => Outcome::Fail(vec![format!("error: {e}")]),
        }
    }
}

fn word_of(family: &SetFamily, word: Option<&Word>) -> Word {
    word.cloned().unwrap_or_else(|| Word::identity(family.n()))
}

/// A stable 64-bit digest of the case, used to seed per-case randomness.
fn digest(family: &SetFamily, word: Option<&Word>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        h ^= x;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    eat(family.n() as u64);
    family.iter().for_each(|m| eat(m.0 as u64));
    word.into_iter().flat_map(|w| w.order().iter()).for_each(|&i| eat(i as u64 + 1_000));
    h
}

fn rising(family: &SetFamily, word: Option<&Word>) -> Result<Vec<Assertion>> {
    Ok(transcript_assertions(&rise(family, &word_of(family, word))?))
}

fn orbits(family: &SetFamily, _: Option<&Word>) -> Result<Vec<Assertion>> {
    word_sweep_assertions(family)
}

fn star_criterion(family: &SetFamily, _: Option<&Word>) -> Result<Vec<Assertion>> {
    Ok(vec![Assertion::new("star criterion", star_criterion_agrees(family))])
}

fn sp_balance(family: &SetFamily, _: Option<&Word>) -> Result<Vec<Assertion>> {
    (0..family.n())
        .map(|a| {
            Ok(Assertion::new(format!("balance [{}]", family.ground().label(a)), sp_counts(family, a)?.balance_holds()))
        })
        .collect()
}

fn accounts(family: &SetFamily, word: Option<&Word>) -> Result<Vec<Assertion>> {
    let w = word_of(family, word);
    let acc = rising_accounts(family, &w)?;
    let mut out = acc.assertions();
    out.push(Assertion::new("local characterization", local_characterization_of(&acc).violations.is_empty()));
    out.extend(pure_lower_bound(family, &w)?.assertions(&acc));
    Ok(out)
}

fn hyper(family: &SetFamily, _: Option<&Word>) -> Result<Vec<Assertion>> {
    let h = hyper_accounts(family)?;
    let mut out = h.assertions();
    out.push(Assertion::new("covering equivalences", covering_equivalences(family)?.is_empty()));
    if family.n() <= 5 {
        let (sigma, pi) = hyper_by_words(family)?;
        out.push(Assertion::new("hyper-spurious by words", sigma == h.sigma_local));
        out.push(Assertion::new("hyper-pure by words", pi == h.pi_local));
    }
    Ok(out)
}

fn monotonicity(family: &SetFamily, _: Option<&Word>) -> Result<Vec<Assertion>> {
    let mut out = Vec::new();
    for f in family.iter() {
        for g in family.iter().filter(|g| f.is_subset_of(*g)) {
            out.push(Assertion::new(
                format!("witness word [{} ⊆ {}]", family.ground().format_subset(f), family.ground().format_subset(g)),
                spurious_monotonicity(family, f, g).is_ok(),
            ));
        }
    }
    Ok(out)
}

/// `min(F)` and five random antichains inside `F`, drawn from a digest of the case.
pub(crate) fn localizers(family: &SetFamily, word: Option<&Word>) -> Vec<SetFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(digest(family, word));
    let mut out = vec![family.minimal()];
    for _ in 0..5 {
        let k = rng.random_range(1..=family.len());
        let picked = family.iter().choose_multiple(&mut rng, k);
        out.push(family.with_members(picked).minimal());
    }
    out
}

fn average_bounds(family: &SetFamily, word: Option<&Word>) -> Result<Vec<Assertion>> {
    let w = word_of(family, word);
    let mut out = Vec::new();
    for (i, s) in localizers(family, word).iter().enumerate() {
        let r = average_report(family, s, &w)?;
        out.extend(r.assertions().into_iter().map(|a| Assertion::new(format!("{} [localizer {i}]", a.name), a.holds)));
    }
    Ok(out)
}

fn removal(family: &SetFamily, word: Option<&Word>) -> Result<Vec<Assertion>> {
    if family.len() < 2 {
        return Ok(Vec::new());
    }
    let w = word_of(family, word);
    let mut out = Vec::new();
    for m in family.iter() {
        let t = removal_trace(family, m, &w)?;
        let label = family.ground().format_subset(m);
        out.extend(t.assertions().into_iter().map(|a| Assertion::new(format!("{} [{label}]", a.name), a.holds)));
    }
    Ok(out)
}

fn irreducible(family: &SetFamily, word: Option<&Word>) -> Result<Vec<Assertion>> {
    Ok(irreducible_bound(family, &word_of(family, word))?.assertions())
}

fn frankl(family: &SetFamily, _: Option<&Word>) -> Result<Vec<Assertion>> {
    Ok(vec![Assertion::new("frankl witness exists", frankl_witness(family)?.is_some())])
}

const REGISTRY: &[Check] = &[
    Check {
        id: "rising",
        domain: Domain::UnionClosed,
        uses_word: true,
        max_n: 16,
        finding_only: false,
        about: "image, inverse, ideal correspondence, fixed points, matching, embedding",
        run: rising,
    },
    Check {
        id: "rising-any",
        domain: Domain::AnyFamily,
        uses_word: true,
        max_n: 16,
        finding_only: false,
        about: "rising structure and matching property for arbitrary families",
        run: rising,
    },
    Check {
        id: "orbits",
        domain: Domain::UnionClosed,
        uses_word: false,
        max_n: 6,
        finding_only: false,
        about: "orbit = max fiber, intervals, fibers, U(F) routes, word stabilizers",
        run: orbits,
    },
    Check {
        id: "star-criterion",
        domain: Domain::AnyFamily,
        uses_word: false,
        max_n: 16,
        finding_only: false,
        about: "union-closed iff star maps the upset of minima into the family",
        run: star_criterion,
    },
    Check {
        id: "sp-balance",
        domain: Domain::AnyFamily,
        uses_word: false,
        max_n: 16,
        finding_only: false,
        about: "|H_a| - |H_abar| = |P| - |S|",
        run: sp_balance,
    },
    Check {
        id: "accounts",
        domain: Domain::UnionClosed,
        uses_word: true,
        max_n: 16,
        finding_only: false,
        about: "spurious/pure partition, alternative formulation, local characterization, pure lower bound",
        run: accounts,
    },
    Check {
        id: "hyper",
        domain: Domain::UnionClosed,
        uses_word: false,
        max_n: 8,
        finding_only: false,
        about: "hyper sets, covering sets, sandwich, word-sweep agreement",
        run: hyper,
    },
    Check {
        id: "spurious-monotonicity",
        domain: Domain::UnionClosed,
        uses_word: false,
        max_n: 5,
        finding_only: false,
        about: "containment witness words for comparable pairs",
        run: monotonicity,
    },
    Check {
        id: "average-bounds",
        domain: Domain::UnionClosed,
        uses_word: true,
        max_n: 8,
        finding_only: false,
        about: "localized average bounds and attainment",
        run: average_bounds,
    },
    Check {
        id: "removal",
        domain: Domain::AnyFamily,
        uses_word: true,
        max_n: 16,
        finding_only: false,
        about: "swap chains when one member is removed",
        run: removal,
    },
    Check {
        id: "irreducible-bound",
        domain: Domain::UnionClosed,
        uses_word: true,
        max_n: 16,
        finding_only: false,
        about: "|J(F)| <= 2|min C| + |min(C - min C)| <= Sperner bound",
        run: irreducible,
    },
    Check {
        id: "frankl",
        domain: Domain::UnionClosed,
        uses_word: false,
        max_n: 16,
        finding_only: true,
        about: "an element in at least half the members",
        run: frankl,
    },
];

pub fn check_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.id).collect()
}

pub fn lookup(id: &str) -> Result<Check> {
    REGISTRY.iter().find(|c| c.id == id).copied().ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfam::GroundSet;

    fn fam(xs: &[&str]) -> SetFamily {
        SetFamily::parse(GroundSet::new(3).unwrap(), xs).unwrap()
    }

    #[test]
    fn every_check_passes_on_the_running_example() {
        let f = fam(&["a", "abc"]);
        for id in check_ids() {
            let c = lookup(id).unwrap();
            let w = Word::identity(3);
            assert_eq!(c.evaluate(&f, Some(&w)), Outcome::Pass, "{id}");
        }
    }

    #[test]
    fn union_closed_checks_fail_loudly_on_other_families() {
        let f = fam(&["a", "b"]);
        let c = lookup("accounts").unwrap();
        assert!(!c.applies_to(&f));
        assert_eq!(c.evaluate(&f, None), Outcome::Fail(vec!["error: family not union-closed".into()]));
        assert!(lookup("removal").unwrap().applies_to(&f));
    }

    #[test]
    fn unknown_check() {
        assert_eq!(lookup("nope").unwrap_err(), Error::UnknownCheck("nope".into()));
    }

    #[test]
    fn localizers_are_antichains_in_the_family() {
        let f = fam(&["a", "b", "ab", "abc", "bc"]).close_under_union().unwrap();
        let ls = localizers(&f, None);
        assert_eq!(ls.len(), 6);
        assert!(ls.iter().all(|s| s.is_antichain() && s.is_subfamily_of(&f) && !s.is_empty()));
        assert_eq!(ls, localizers(&f, None));
    }
}
