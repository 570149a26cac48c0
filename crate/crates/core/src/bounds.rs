//! Frankl witnesses, lower bounds on localized averages, removal traces and the
//! join-irreducible count bound.

use num_bigint::BigUint;
use num_traits::One;

use crate::accounting::{hyper_accounts, rising_accounts};
use crate::antichain::{enumerate_antichains, first_upward_level, is_maximal_antichain};
use crate::error::{Error, Result};
use crate::rising::{fibers, rise, RisingTranscript, StarTable};
use crate::setfam::{binomial, SetFamily, SubsetMask, Word};
use crate::{Assertion, Rational};

/// Largest ground set for the search over maximal antichains inside `F`.
pub const MAX_ANTICHAIN_SEARCH_N: usize = 4;

/// The smallest element contained in at least half the members, if any.
pub fn frankl_witness(family: &SetFamily) -> Result<Option<usize>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family.len() == 1 && family.members()[0].is_empty() {
        return Err(Error::TrivialFamily);
    }
    family.require_union_closed()?;
    Ok((0..family.n()).find(|&a| 2 * family.iter().filter(|z| z.contains(a)).count() >= family.len()))
}

/// `2^(2L) ≥ |F|^|F|`, i.e. the average member size is at least `½log₂|F|`.
pub fn reimer_holds(family: &SetFamily) -> bool {
    let size = family.len() as u32;
    let lhs = BigUint::one() << (2 * family.length_sum());
    lhs >= BigUint::from(size).pow(size)
}

/// `n/2 + P/(2I) − ½log₂(U/I)` kept exact: with `D = 2L − nI − P` the bound holds iff
/// `U^I ≥ 2^(−D)·I^I`, and is attained iff equality holds there.
#[derive(Clone, Debug, PartialEq)]
pub struct LogBound {
    pub deficit: i64,
    pub upset_size: usize,
    pub ideal_size: usize,
    /// Floating value of the right-hand side, for display only.
    pub value: f64,
}

impl LogBound {
    fn sides(&self) -> (BigUint, BigUint) {
        let i = self.ideal_size as u32;
        let lhs = BigUint::from(self.upset_size).pow(i);
        let rhs = BigUint::from(self.ideal_size).pow(i) << (-self.deficit).max(0) as u64;
        (lhs, rhs)
    }

    pub fn holds(&self) -> bool {
        self.deficit >= 0 || {
            let (lhs, rhs) = self.sides();
            lhs >= rhs
        }
    }

    pub fn attained(&self) -> bool {
        self.deficit <= 0 && {
            let (lhs, rhs) = self.sides();
            lhs == rhs
        }
    }
}

/// A maximal antichain of `2^X` inside `F` with small members, and the bound it gives.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxAntichainBound {
    pub antichain: SetFamily,
    pub max_len: usize,
    pub bound: Rational,
}

/// The localized average of `F` on `S` together with every lower bound for it.
#[derive(Clone, Debug)]
pub struct AverageReport {
    pub localizer: SetFamily,
    pub word: Word,
    pub family_size: usize,
    /// `|F[S]|`.
    pub ideal_size: usize,
    /// `Σ_{f ∈ F[S]} |f|`.
    pub length_sum: usize,
    pub average: Rational,
    /// `|S↑|` in `2^X`.
    pub upset_size: usize,
    /// `Σ_a |π_w(a) ∩ S↑|`.
    pub pure_sum: usize,
    /// `Σ_a |σ_w(a) ∩ S↑|`.
    pub spurious_sum: usize,
    /// `n/2 + (pure_sum − spurious_sum)/(2I)`, exact when `S = min(F)`.
    pub bound_local: Rational,
    pub bound_general: LogBound,
    /// Present iff `min(F)` is a maximal antichain of `2^X` other than `{∅}`.
    pub bound_max_antichain: Option<Rational>,
    /// Best maximal antichain of `2^X` contained in `F`, searched for `n ≤ 4`.
    pub bound_max_antichain_search: Option<MaxAntichainBound>,
    /// `max |η ∖ f|` over `f ∈ S` and `η ∈ max Fib(f)`.
    pub sigma_s: usize,
    pub bound_invariant: Rational,
    /// `Σ_{f ∈ F[S]} |Σ(F, f)|`.
    pub hyper_spurious_sum: usize,
    /// `Σ_a |Π(F, a) ∩ S↑|`.
    pub hyper_pure_sum: usize,
    /// `Σ_{f ∈ F[S]} |f ∪ ⋃_{f ⋖ h} h|`.
    pub cover_union_sum: usize,
    pub bound_hyper: Rational,
    pub bound_hyper_rewritten: Rational,
    /// `Σ_{g ∈ F[S]} |{a ∈ g : no member lies below g ∖ {a}}|`.
    pub pure_floor: usize,
    pub minimal_localizer: bool,
    pub upward_closed: bool,
    pub reimer: bool,
}

fn check_localizer(family: &SetFamily, s: &SetFamily) -> Result<()> {
    if family.ground() != s.ground() {
        return Err(Error::GroundMismatch);
    }
    if s.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if !s.is_antichain() {
        return Err(Error::NotAntichain);
    }
    if !s.is_subfamily_of(family) {
        return Err(Error::NotSubfamily(format!("{{{}}}", s.format().join(","))));
    }
    Ok(())
}

/// `max |η ∖ f|` over `f ∈ S` and maximal fiber elements `η` of `f`.
pub fn localizer_spread(family: &SetFamily, s: &SetFamily) -> Result<usize> {
    let fib = fibers(family)?;
    Ok(s.iter()
        .filter_map(|f| family.index_of(f))
        .flat_map(|i| fib[i].max_fiber.iter().map(|eta| eta.difference(fib[i].owner).len()).collect::<Vec<_>>())
        .max()
        .unwrap_or(0))
}

/// `max |φ_w(f) ∖ f|` over `f ∈ S` and every word `w`.
pub fn localizer_spread_by_words(family: &SetFamily, s: &SetFamily) -> Result<usize> {
    let mut best = 0;
    for w in Word::all(family.n()) {
        let t = rise(family, &w)?;
        for f in s.iter() {
            best = best
                .max(t.forward(f).ok_or_else(|| Error::NotMember(s.ground().format_subset(f)))?.difference(f).len());
        }
    }
    Ok(best)
}

fn half_plus(n: usize, num: i64, ideal: usize) -> Rational {
    Rational::new(n as i64, 2) + Rational::new(num, 2 * ideal as i64)
}

fn max_antichain_search(family: &SetFamily, pure_sum: usize, ideal: usize) -> Result<Option<MaxAntichainBound>> {
    let n = family.n();
    if n > MAX_ANTICHAIN_SEARCH_N {
        return Ok(None);
    }
    let mut best: Option<MaxAntichainBound> = None;
    for a in enumerate_antichains(family.ground().clone())? {
        if a.is_empty() || a.contains(SubsetMask::EMPTY) || !a.is_subfamily_of(family) || !is_maximal_antichain(&a) {
            continue;
        }
        let k = a.iter().map(SubsetMask::len).max().unwrap_or(0);
        if best.as_ref().is_none_or(|b| k < b.max_len) {
            let bound = half_plus(n, pure_sum as i64, ideal) - Rational::new(k as i64, 2);
            best = Some(MaxAntichainBound { antichain: a, max_len: k, bound });
        }
    }
    Ok(best)
}

pub fn average_report(family: &SetFamily, s: &SetFamily, word: &Word) -> Result<AverageReport> {
    family.require_union_closed()?;
    check_localizer(family, s)?;
    let n = family.n();
    let ideal = family.ideal(s);
    let ideal_size = ideal.len();
    let length_sum = ideal.length_sum();
    let upset = s.upset();
    let acc = rising_accounts(family, word)?;
    let pure_sum: usize = acc.pi_by_element.iter().map(|p| p.iter().filter(|z| upset.contains(*z)).count()).sum();
    let spurious_sum: usize =
        acc.sigma_by_element.iter().map(|p| p.iter().filter(|z| upset.contains(*z)).count()).sum();

    let i = ideal_size as i64;
    let deficit = 2 * length_sum as i64 - n as i64 * i - pure_sum as i64;
    let value = n as f64 / 2.0 + pure_sum as f64 / (2.0 * i as f64) - 0.5 * (upset.len() as f64 / i as f64).log2();
    let bound_general = LogBound { deficit, upset_size: upset.len(), ideal_size, value };

    let minimal = family.minimal();
    let bound_max_antichain = (is_maximal_antichain(&minimal) && !minimal.contains(SubsetMask::EMPTY)).then(|| {
        let k = minimal.iter().map(SubsetMask::len).max().unwrap_or(0);
        half_plus(n, pure_sum as i64, ideal_size) - Rational::new(k as i64, 2)
    });
    let bound_max_antichain_search = max_antichain_search(family, pure_sum, ideal_size)?;

    let sigma_s = localizer_spread(family, s)?;
    let bound_invariant = half_plus(n, pure_sum as i64, ideal_size) - Rational::new(sigma_s as i64, 2);

    let hyper = hyper_accounts(family)?;
    let hyper_spurious_sum: usize = ideal.iter().map(|f| hyper.sigma_of(f).expect("member").len()).sum();
    let hyper_pure_sum: usize =
        hyper.pi_by_element.iter().map(|p| p.iter().filter(|z| upset.contains(*z)).count()).sum();
    let cover_union_sum: usize =
        ideal.iter().map(|f| family.upper_covers(f).into_iter().fold(f, SubsetMask::union).len()).sum();
    let bound_hyper = half_plus(n, hyper_pure_sum as i64 - hyper_spurious_sum as i64, ideal_size);
    let bound_hyper_rewritten = Rational::new((cover_union_sum + hyper_pure_sum) as i64, 2 * i);

    let table = StarTable::build(family);
    let pure_floor = ideal.iter().map(|g| g.elements().filter(|&a| !table.covered(g.without(a))).count()).sum();

    Ok(AverageReport {
        localizer: s.clone(),
        word: word.clone(),
        family_size: family.len(),
        ideal_size,
        length_sum,
        average: Rational::new(length_sum as i64, i),
        upset_size: upset.len(),
        pure_sum,
        spurious_sum,
        bound_local: half_plus(n, pure_sum as i64 - spurious_sum as i64, ideal_size),
        bound_general,
        bound_max_antichain,
        bound_max_antichain_search,
        sigma_s,
        bound_invariant,
        hyper_spurious_sum,
        hyper_pure_sum,
        cover_union_sum,
        bound_hyper,
        bound_hyper_rewritten,
        pure_floor,
        minimal_localizer: *s == minimal,
        upward_closed: family.is_upward_closed(),
        reimer: reimer_holds(family),
    })
}

/// The word-free bounds; word-dependent fields are filled in for the identity word.
pub fn hyper_average_report(family: &SetFamily, s: &SetFamily) -> Result<AverageReport> {
    average_report(family, s, &Word::identity(family.n()))
}

impl AverageReport {
    pub fn assertions(&self) -> Vec<Assertion> {
        let avg = self.average;
        let tight = self.minimal_localizer && self.upward_closed;
        let mut out = vec![
            Assertion::new("local averaging", avg >= self.bound_local),
            Assertion::new("local averaging equality", !self.minimal_localizer || avg == self.bound_local),
            Assertion::new("general bound", self.bound_general.holds()),
            Assertion::new("general bound attained", !tight || self.bound_general.attained()),
            Assertion::new("invariant bound", avg >= self.bound_invariant),
            Assertion::new("hyper bound", avg >= self.bound_hyper),
            Assertion::new("hyper bound rewritten", self.bound_hyper == self.bound_hyper_rewritten),
            Assertion::new("hyper bound attained", !tight || avg == self.bound_hyper),
            Assertion::new("pure floor", self.pure_sum >= self.pure_floor),
            Assertion::new("pure floor attained", !tight || self.pure_sum == self.pure_floor),
            Assertion::new("hyper pure floor", self.hyper_pure_sum >= self.pure_floor),
            Assertion::new("reimer", self.reimer),
        ];
        if let Some(b) = self.bound_max_antichain {
            out.push(Assertion::new("maximal antichain bound", avg >= b));
        }
        if let Some(b) = &self.bound_max_antichain_search {
            out.push(Assertion::new("maximal antichain search bound", avg >= b.bound));
        }
        out
    }
}

/// How removing a join-irreducible member changes the rising.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemovalCase {
    NoSwap,
    BarSwap,
}

/// Two risings along the same word, of `F` and of `F ∖ {m}`, matched up.
#[derive(Clone, Debug)]
pub struct RemovalTrace {
    pub removed: SubsetMask,
    pub word: Word,
    /// `m₀ = m, m₁, …, m_k`.
    pub chain: Vec<SubsetMask>,
    /// 1-based steps at which the missing element moved to the next chain member.
    pub swap_indices: Vec<usize>,
    /// `μ_0, …, μ_n`: the one member of each section of `F` absent from the reduced section.
    pub missing: Vec<SubsetMask>,
    /// Set when `F` is union-closed, `m ∈ J(F)` and the chain has at most one swap.
    pub case: Option<RemovalCase>,
    pub irreducible: bool,
    pub before: RisingTranscript,
    pub after: RisingTranscript,
}

pub fn removal_trace(family: &SetFamily, m: SubsetMask, word: &Word) -> Result<RemovalTrace> {
    family.require_member(m)?;
    if family.len() < 2 {
        return Err(Error::EmptyFamily);
    }
    let reduced = family.without(m);
    let before = rise(family, word)?;
    let after = rise(&reduced, word)?;
    let n = family.n();

    let mut missing = Vec::with_capacity(n + 1);
    for (i, (full, part)) in before.sections().iter().zip(after.sections()).enumerate() {
        let diff = full.minus(part);
        if diff.len() != 1 || part.len() + 1 != full.len() {
            return Err(Error::InvariantViolation(format!("section {i} does not lose exactly one member")));
        }
        missing.push(diff.members()[0]);
    }

    let mut chain = vec![m];
    let mut swap_indices = Vec::new();
    for step in 1..=n {
        let a = word.at_step(step);
        let mu = missing[step - 1];
        let hit = reduced.iter().find(|&z| {
            let at = after.forward_at(z, step - 1).expect("member");
            at != mu && at.with(a) == mu
        });
        if let Some(z) = hit {
            chain.push(z);
            swap_indices.push(step);
        }
    }

    let irreducible = family.is_union_closed() && family.join_irreducibles()?.contains(m);
    let case = match (irreducible, swap_indices.len()) {
        (true, 0) => Some(RemovalCase::NoSwap),
        (true, 1) => Some(RemovalCase::BarSwap),
        _ => None,
    };
    Ok(RemovalTrace { removed: m, word: word.clone(), chain, swap_indices, missing, case, irreducible, before, after })
}

impl RemovalTrace {
    pub fn k(&self) -> usize {
        self.swap_indices.len()
    }

    /// `⋃{f ∈ F : f ⊊ m}` when some member lies strictly below `m`.
    pub fn bar(&self) -> Option<SubsetMask> {
        let f = self.before.input();
        let mut below = f.iter().filter(|g| g.is_strict_subset_of(self.removed)).peekable();
        below.peek()?;
        Some(below.fold(SubsetMask::EMPTY, SubsetMask::union))
    }

    pub fn assertions(&self) -> Vec<Assertion> {
        let phi = |z| self.before.forward(z).expect("member");
        let phi2 = |z| self.after.forward(z).expect("member");
        let n = self.word.len();
        let k = self.k();
        let chain = &self.chain;
        let image = self.before.image();
        let last = phi(chain[k]);

        let distinct = (0..chain.len()).all(|i| (0..i).all(|j| chain[i] != chain[j]));
        let increasing = self.swap_indices.windows(2).all(|w| w[0] < w[1])
            && self.swap_indices.iter().all(|&i| (1..=n).contains(&i));
        let missing_follows_chain = (0..=n).all(|i| {
            let s = self.swap_indices.iter().filter(|&&j| j <= i).count();
            self.missing[i] == self.before.forward_at(chain[s], i).expect("member")
        });
        let shifted = (1..=k).all(|j| phi2(chain[j]) == phi(chain[j - 1]));
        let others = self.after.input().iter().filter(|z| !chain.contains(z)).all(|z| phi2(z) == phi(z));
        let image_drop = *self.after.image() == image.without(last) && self.missing[n] == last;
        let minimal_drop = image.minimal().contains(last);
        let swap_letters = (1..=k).all(|j| {
            let a = self.word.at_step(self.swap_indices[j - 1]);
            chain[j - 1].contains(a) && !phi(chain[j]).contains(a)
        });
        let mut out = vec![
            Assertion::new("chain members distinct", distinct),
            Assertion::new("swap indices increasing", increasing),
            Assertion::new("missing element follows chain", missing_follows_chain),
            Assertion::new("chain images shift", shifted),
            Assertion::new("other images unchanged", others),
            Assertion::new("image loses last chain image", image_drop),
            Assertion::new("lost image is minimal", minimal_drop),
            Assertion::new("swap letters", swap_letters),
        ];
        if self.irreducible {
            out.push(Assertion::new("irreducible removal swaps at most once", k <= 1));
            if k == 0 {
                out.push(Assertion::new("no swap keeps a minimal image", image.minimal().contains(phi(self.removed))));
            }
            if k == 1 {
                let ok = self.bar().is_some_and(|bar| {
                    chain[1] == bar
                        && phi2(bar) == phi(self.removed)
                        && *self.after.image() == image.without(phi(bar))
                        && image.minimal().contains(phi(bar))
                });
                out.push(Assertion::new("bar swap", ok));
            }
        }
        out
    }
}

/// `|J(F)|` against the minimal layers of the risen family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleBoundReport {
    pub j_count: usize,
    pub min_image: usize,
    pub second_level: usize,
    pub layer_bound: u64,
    pub sperner_bound: u64,
    /// `min(C ∖ min C)` equals the first upward level of `min C`.
    pub second_level_is_upward_level: bool,
}

pub fn sperner_bound(n: usize) -> u64 {
    2 * binomial(n, n / 2) + binomial(n, n / 2 + 1)
}

pub fn irreducible_bound(family: &SetFamily, word: &Word) -> Result<IrreducibleBoundReport> {
    let j = family.join_irreducibles()?;
    let image = rise(family, word)?.image().clone();
    let lowest = image.minimal();
    let second = image.minus(&lowest).minimal();
    Ok(IrreducibleBoundReport {
        j_count: j.len(),
        min_image: lowest.len(),
        second_level: second.len(),
        layer_bound: 2 * lowest.len() as u64 + second.len() as u64,
        sperner_bound: sperner_bound(family.n()),
        second_level_is_upward_level: first_upward_level(&lowest)? == second,
    })
}

impl IrreducibleBoundReport {
    pub fn assertions(&self) -> Vec<Assertion> {
        vec![
            Assertion::new("irreducibles below layer count", self.j_count as u64 <= self.layer_bound),
            Assertion::new("layer count below sperner bound", self.layer_bound <= self.sperner_bound),
            Assertion::new("second layer is first upward level", self.second_level_is_upward_level),
        ]
    }
}
