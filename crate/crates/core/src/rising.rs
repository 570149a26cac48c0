//! The rising operator, the star closure, fibers and the invariant upward-closed family.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::setfam::{binomial, factorial, MaskSet, SetFamily, SubsetMask, Word};
use crate::{Assertion, Rational};

/// Largest ground set for which sweeps over all `n!` words are allowed.
pub const MAX_WORD_SWEEP_N: usize = 8;

/// Largest ground set for the word-stabilizer count.
pub const MAX_BURNSIDE_N: usize = 7;

/// A complete record of one rising run.
#[derive(Clone, Debug)]
pub struct RisingTranscript {
    input: SetFamily,
    word: Word,
    sections: Vec<SetFamily>,
    // trajectories[i] follows input.members()[i] through steps 0..=n
    trajectories: Vec<Vec<SubsetMask>>,
    image: SetFamily,
    // (image member, input member), sorted by image member
    inverse: Vec<(SubsetMask, SubsetMask)>,
}

/// Rises every member of `family` along `word`.
///
/// The family does not have to be union-closed.
pub fn rise(family: &SetFamily, word: &Word) -> Result<RisingTranscript> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = family.n();
    word.check_len(n)?;

    let mut cur: Vec<SubsetMask> = family.members().to_vec();
    let mut present = MaskSet::from_masks(n, cur.iter().copied());
    let mut trajectories: Vec<Vec<SubsetMask>> = cur
        .iter()
        .map(|&z| {
            let mut t = Vec::with_capacity(n + 1);
            t.push(z);
            t
        })
        .collect();
    let mut sections = Vec::with_capacity(n + 1);
    sections.push(family.clone());

    for &a in word.order() {
        let next: Vec<SubsetMask> = cur
            .iter()
            .map(|&z| {
                let up = z.with(a);
                if up == z || present.contains(up) {
                    z
                } else {
                    up
                }
            })
            .collect();
        for &z in &cur {
            present.remove(z);
        }
        for (t, &z) in trajectories.iter_mut().zip(&next) {
            present.insert(z);
            t.push(z);
        }
        sections.push(family.with_members(next.iter().copied()));
        cur = next;
    }

    let image = sections[n].clone();
    let mut inverse: Vec<(SubsetMask, SubsetMask)> = cur.iter().copied().zip(family.iter()).collect();
    inverse.sort_unstable();
    Ok(RisingTranscript { input: family.clone(), word: word.clone(), sections, trajectories, image, inverse })
}

/// Just the image `φ_w(F)`, without keeping sections.
pub fn rise_image(family: &SetFamily, word: &Word) -> Result<SetFamily> {
    Ok(rise(family, word)?.image)
}

impl RisingTranscript {
    pub fn input(&self) -> &SetFamily {
        &self.input
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// `sections()[i]` is the family after `i` steps.
    pub fn sections(&self) -> &[SetFamily] {
        &self.sections
    }

    pub fn image(&self) -> &SetFamily {
        &self.image
    }

    /// The trajectory `z_0, ..., z_n` of input member `g`.
    pub fn trajectory(&self, g: SubsetMask) -> Option<&[SubsetMask]> {
        self.input.index_of(g).map(|i| &self.trajectories[i][..])
    }

    /// Trajectories indexed like `input().members()`.
    pub fn trajectories(&self) -> &[Vec<SubsetMask>] {
        &self.trajectories
    }

    /// `φ_w(g)`.
    pub fn forward(&self, g: SubsetMask) -> Option<SubsetMask> {
        self.trajectory(g).map(|t| t[t.len() - 1])
    }

    /// `φ_w` restricted to the first `step` steps.
    pub fn forward_at(&self, g: SubsetMask, step: usize) -> Option<SubsetMask> {
        self.trajectory(g).map(|t| t[step])
    }

    /// `φ_w⁻¹(η)` for `η` in the image.
    pub fn backward(&self, eta: SubsetMask) -> Option<SubsetMask> {
        self.inverse.binary_search_by_key(&eta, |&(img, _)| img).ok().map(|i| self.inverse[i].1)
    }

    /// Pairs `(g, φ_w(g))` in input order.
    pub fn forward_pairs(&self) -> impl Iterator<Item = (SubsetMask, SubsetMask)> + '_ {
        self.input.iter().zip(self.trajectories.iter().map(|t| t[t.len() - 1]))
    }

    /// Checks the structural invariants of the transcript itself.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let n = self.input.n();
        if self.sections.len() != n + 1 || self.sections[0] != self.input {
            return Err("sections do not start at the input".into());
        }
        if let Some(i) = self.sections.iter().position(|s| s.len() != self.input.len()) {
            return Err(format!("section {i} lost members"));
        }
        for t in &self.trajectories {
            for (step, pair) in t.windows(2).enumerate() {
                let a = self.word.order()[step];
                let diff = pair[1].difference(pair[0]);
                if !pair[0].is_subset_of(pair[1]) || !(diff.is_empty() || diff == SubsetMask::singleton(a)) {
                    return Err(format!("trajectory step {} adds more than its element", step + 1));
                }
            }
        }
        if !self.image.is_upward_closed() {
            return Err("image is not upward-closed".into());
        }
        if self.inverse.len() != self.image.len() {
            return Err("forward map is not injective".into());
        }
        Ok(())
    }
}

/// `z* = ⋃ {h ∈ F : h ⊆ z}` for every `z`, together with membership of `z` in `min(F)↑`.
#[derive(Clone, Debug)]
pub struct StarTable {
    star: Vec<u32>,
    covered: Vec<bool>,
}

impl StarTable {
    /// Tabulates the star of `family` over all of `2^X`. The family may be arbitrary; the values
    /// are only guaranteed to lie in the family when it is union-closed.
    pub fn build(family: &SetFamily) -> Self {
        let size = family.ground().power();
        let member = family.mask_set();
        let mut star = vec![0u32; size];
        let mut covered = vec![false; size];
        for z in 0..size as u32 {
            let m = SubsetMask(z);
            let own = member.contains(m);
            let mut acc = if own { z } else { 0 };
            let mut cov = own;
            for i in m.elements() {
                let below = m.without(i).0 as usize;
                acc |= star[below];
                cov |= covered[below];
            }
            star[z as usize] = acc;
            covered[z as usize] = cov;
        }
        StarTable { star, covered }
    }

    #[inline]
    pub fn star(&self, z: SubsetMask) -> SubsetMask {
        SubsetMask(self.star[z.0 as usize])
    }

    /// `z ∈ min(F)↑`.
    #[inline]
    pub fn covered(&self, z: SubsetMask) -> bool {
        self.covered[z.0 as usize]
    }
}

/// `z*` for a union-closed family; `∅` when no member lies below `z`.
pub fn star(family: &SetFamily, z: SubsetMask) -> Result<SubsetMask> {
    family.require_union_closed()?;
    family.ground().check(z)?;
    Ok(star_any(family, z))
}

/// The union of all members below `z`, for any family.
pub fn star_any(family: &SetFamily, z: SubsetMask) -> SubsetMask {
    family.iter().filter(|h| h.is_subset_of(z)).fold(SubsetMask::EMPTY, SubsetMask::union)
}

/// The fiber of a member: masks above `min(F)` whose star is that member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub owner: SubsetMask,
    pub fiber: SetFamily,
    pub max_fiber: SetFamily,
}

fn fiber_with(family: &SetFamily, table: &StarTable, g: SubsetMask) -> FiberReport {
    let free = family.ground().full().difference(g);
    let fiber: Vec<SubsetMask> =
        free.submasks().map(|extra| g.union(extra)).filter(|&z| table.covered(z) && table.star(z) == g).collect();
    let max_fiber: Vec<SubsetMask> =
        fiber.iter().copied().filter(|&z| free.difference(z).elements().all(|i| table.star(z.with(i)) != g)).collect();
    FiberReport { owner: g, fiber: family.with_members(fiber), max_fiber: family.with_members(max_fiber) }
}

pub fn fiber(family: &SetFamily, g: SubsetMask) -> Result<FiberReport> {
    family.require_union_closed()?;
    family.require_member(g)?;
    Ok(fiber_with(family, &StarTable::build(family), g))
}

/// Fibers of every member, in member order.
pub fn fibers(family: &SetFamily) -> Result<Vec<FiberReport>> {
    family.require_union_closed()?;
    let table = StarTable::build(family);
    Ok(family.iter().map(|g| fiber_with(family, &table, g)).collect())
}

/// All words `w` with `φ_w(g) = η`, found by rising along every word.
pub fn words_realizing(family: &SetFamily, g: SubsetMask, eta: SubsetMask) -> Result<Vec<Word>> {
    let n = family.n();
    if n > MAX_WORD_SWEEP_N {
        return Err(Error::TooLarge { what: "word sweep", n, max: MAX_WORD_SWEEP_N });
    }
    let rep = fiber(family, g)?;
    if !rep.max_fiber.contains(eta) {
        return Err(Error::NotMember(format!(
            "{} in max fiber of {}",
            family.ground().format_subset(eta),
            family.ground().format_subset(g)
        )));
    }
    let words: Vec<Word> = Word::all(n).collect();
    let hits: Vec<Option<Word>> = words
        .into_par_iter()
        .map(|w| {
            let t = rise(family, &w).expect("validated input");
            (t.forward(g) == Some(eta)).then_some(w)
        })
        .collect();
    Ok(hits.into_iter().flatten().collect())
}

/// `U(F)` with its rank and the owner `x*` of each member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFamily {
    pub family: SetFamily,
    pub rank: usize,
    /// `(x, x*)`, sorted by `x`.
    pub orbit_index: Vec<(SubsetMask, SubsetMask)>,
}

impl InvariantFamily {
    pub fn owner(&self, x: SubsetMask) -> Option<SubsetMask> {
        self.orbit_index.binary_search_by_key(&x, |&(m, _)| m).ok().map(|i| self.orbit_index[i].1)
    }

    /// Number of distinct owners.
    pub fn orbit_count(&self) -> usize {
        let mut owners: Vec<SubsetMask> = self.orbit_index.iter().map(|&(_, o)| o).collect();
        owners.sort_unstable();
        owners.dedup();
        owners.len()
    }

    /// Members owned by `g`.
    pub fn class_of(&self, g: SubsetMask) -> Vec<SubsetMask> {
        self.orbit_index.iter().filter(|&&(_, o)| o == g).map(|&(x, _)| x).collect()
    }
}

fn finish_invariant(family: &SetFamily, mut pairs: Vec<(SubsetMask, SubsetMask)>) -> InvariantFamily {
    pairs.sort_unstable();
    pairs.dedup();
    let u = family.with_members(pairs.iter().map(|&(x, _)| x));
    let rank = u.iter().map(SubsetMask::len).min().unwrap_or(0);
    InvariantFamily { family: u, rank, orbit_index: pairs }
}

/// `U(F)` as the union of the maximal fiber elements of every member.
pub fn invariant_family(family: &SetFamily) -> Result<InvariantFamily> {
    let pairs = fibers(family)?
        .into_iter()
        .flat_map(|r| r.max_fiber.members().iter().map(move |&x| (x, r.owner)).collect::<Vec<_>>())
        .collect();
    Ok(finish_invariant(family, pairs))
}

/// `U(F)` as the union of `φ_w(F)` over all `n!` words.
pub fn invariant_family_by_words(family: &SetFamily) -> Result<InvariantFamily> {
    family.require_union_closed()?;
    let n = family.n();
    if n > MAX_WORD_SWEEP_N {
        return Err(Error::TooLarge {
            what: "all-words invariant family (use the fiber route)",
            n,
            max: MAX_WORD_SWEEP_N,
        });
    }
    let words: Vec<Word> = Word::all(n).collect();
    let pairs: Vec<(SubsetMask, SubsetMask)> = words
        .par_iter()
        .flat_map_iter(|w| {
            let t = rise(family, w).expect("validated input");
            t.forward_pairs().map(|(g, x)| (x, g)).collect::<Vec<_>>()
        })
        .collect();
    Ok(finish_invariant(family, pairs))
}

/// Word-stabilizer counts standing in for the orbit-counting argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnsideReport {
    pub orbit_count: usize,
    /// `Σ_{x ∈ U(F)} |W(x)|` with `W(x) = {θ : φ_{wθ}(x*) = x}`.
    pub word_stabilizer_sum: u64,
    /// `(1/|F|) Σ_f Σ_{x ∈ max Fib(f)} 1 / C(n, |x ∖ x*|)`.
    #[serde(serialize_with = "crate::ser_rational")]
    pub inequality_lhs: Rational,
    /// `(x, |W(x)|)` sorted by `x`.
    pub stabilizers: Vec<(SubsetMask, u64)>,
}

impl BurnsideReport {
    /// Every stabilizer holds at least the `k!(n-k)!` words with a prefix spelling `x ∖ x*`.
    pub fn prefix_counts_hold(&self, inv: &InvariantFamily, n: usize) -> bool {
        self.stabilizers.iter().all(|&(x, c)| {
            let k = inv.owner(x).map(|o| x.difference(o).len()).unwrap_or(0);
            c >= factorial(k) * factorial(n - k)
        })
    }
}

pub fn burnside_report(family: &SetFamily) -> Result<BurnsideReport> {
    family.require_union_closed()?;
    let n = family.n();
    if n > MAX_BURNSIDE_N {
        return Err(Error::TooLarge { what: "word-stabilizer count", n, max: MAX_BURNSIDE_N });
    }
    let inv = invariant_family(family)?;
    let words: Vec<Word> = Word::all(n).collect();
    let counts: HashMap<SubsetMask, u64> = words
        .par_iter()
        .fold(HashMap::new, |mut acc, w| {
            let t = rise(family, w).expect("validated input");
            for (_, x) in t.forward_pairs() {
                *acc.entry(x).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut stabilizers: Vec<(SubsetMask, u64)> = counts.into_iter().collect();
    stabilizers.sort_unstable();
    let word_stabilizer_sum = stabilizers.iter().map(|&(_, c)| c).sum();
    let total: Rational =
        inv.orbit_index.iter().map(|&(x, owner)| Rational::new(1, binomial(n, x.difference(owner).len()) as i64)).sum();
    Ok(BurnsideReport {
        orbit_count: inv.orbit_count(),
        word_stabilizer_sum,
        inequality_lhs: total / Rational::from_integer(family.len() as i64),
        stabilizers,
    })
}

/// The per-transcript statements about a rising run.
pub fn transcript_assertions(t: &RisingTranscript) -> Vec<Assertion> {
    let f = t.input();
    let image = t.image();
    let n = f.n();
    let mut out = vec![Assertion::new("transcript structure", t.validate().is_ok())];
    let matching = (0..n).all(|i| {
        let a = t.word().order()[i];
        let section = &t.sections()[i];
        let at = |g: SubsetMask| t.forward_at(g, i).expect("member");
        f.iter().all(|zp| {
            let up = at(zp).with(a);
            up == at(zp) || !section.contains(up) || {
                let z = t.trajectories()[section_owner(t, i, up)][0];
                z.contains(a) && !t.forward(zp).expect("member").contains(a)
            }
        })
    });
    out.push(Assertion::new("matching property", matching));
    if f.is_union_closed() {
        let embedding = (0..n).all(|a| {
            let risen: Vec<SubsetMask> = t.forward_pairs().filter(|(g, _)| g.contains(a)).map(|(_, x)| x).collect();
            image.iter().filter(|eta| !eta.contains(a)).all(|eta| risen.contains(&eta.with(a)))
        });
        out.push(Assertion::new("embedding", embedding));
        let table = StarTable::build(f);
        out.push(Assertion::new("inverse is star", image.iter().all(|eta| t.backward(eta) == Some(table.star(eta)))));
        let ideals = f.iter().all(|g| {
            let above = f.filter(|h| g.is_subset_of(h));
            let mapped = image.with_members(above.iter().map(|h| t.forward(h).expect("member")));
            mapped.len() == above.len() && mapped == image.filter(|eta| g.is_subset_of(eta))
        });
        out.push(Assertion::new("ideal correspondence", ideals));
        let sections = t.sections().iter().all(|sec| sec.iter().all(|z| f.iter().all(|g| sec.contains(z.union(g)))));
        out.push(Assertion::new("sections closed under members", sections));
        let full = f.ground().full();
        let fixed = f.iter().all(|g| {
            let stays = t.forward(g) == Some(g);
            stays == full.difference(g).elements().all(|a| f.contains(g.with(a)))
        });
        out.push(Assertion::new("fixed points", fixed));
    }
    out
}

fn section_owner(t: &RisingTranscript, step: usize, z: SubsetMask) -> usize {
    t.trajectories().iter().position(|tr| tr[step] == z).expect("section member has an owner")
}

/// Statements that quantify over every word: orbits, fibers, interval disjointness, `U(F)`
/// computed both ways and the word-stabilizer count.
pub fn word_sweep_assertions(family: &SetFamily) -> Result<Vec<Assertion>> {
    family.require_union_closed()?;
    let n = family.n();
    if n > MAX_WORD_SWEEP_N {
        return Err(Error::TooLarge { what: "word sweep", n, max: MAX_WORD_SWEEP_N });
    }
    let fib = fibers(family)?;
    let mut orbits: Vec<Vec<SubsetMask>> = vec![Vec::new(); family.len()];
    for w in Word::all(n) {
        let t = rise(family, &w)?;
        for (i, (_, x)) in t.forward_pairs().enumerate() {
            orbits[i].push(x);
        }
    }
    for o in &mut orbits {
        o.sort_unstable();
        o.dedup();
    }
    let orbits_are_max_fibers = orbits.iter().zip(&fib).all(|(o, r)| o[..] == *r.max_fiber.members());
    let intervals = family.iter().enumerate().all(|(i, f)| {
        family.iter().enumerate().skip(i + 1).all(|(j, g)| {
            let both = f.union(g);
            orbits[i].iter().all(|eta| orbits[j].iter().all(|nu| !both.is_subset_of(eta.intersection(*nu))))
        })
    });
    let min_up = family.minimal().upset();
    let mut seen = 0usize;
    let fibers_ok = fib.iter().zip(&orbits).all(|(r, o)| {
        seen += r.fiber.len();
        let spans = r.fiber.iter().all(|h| o.iter().any(|eta| r.owner.is_subset_of(h) && h.is_subset_of(*eta)))
            && o.iter().all(|eta| eta.difference(r.owner).submasks().all(|d| r.fiber.contains(r.owner.union(d))));
        spans && r.max_fiber.is_antichain()
    });
    let union: SetFamily = fib.iter().fold(SetFamily::empty(family.ground().clone()), |acc, r| acc.union(&r.fiber));
    let by_fibers = invariant_family(family)?;
    let by_words = invariant_family_by_words(family)?;
    let mut out = vec![
        Assertion::new("orbit is maximal fiber", orbits_are_max_fibers),
        Assertion::new("interval disjointness", intervals),
        Assertion::new("fibers are unions of intervals", fibers_ok),
        Assertion::new("fibers partition the upset of minima", seen == union.len() && union == min_up),
        Assertion::new("invariant family routes agree", by_fibers == by_words),
        Assertion::new("invariant family upward-closed", by_fibers.family.is_upward_closed()),
    ];
    if n <= MAX_BURNSIDE_N {
        let b = burnside_report(family)?;
        out.push(Assertion::new("orbit count", b.orbit_count == family.len()));
        out.push(Assertion::new("word stabilizer sum", b.word_stabilizer_sum == family.len() as u64 * factorial(n)));
        out.push(Assertion::new("stabilizer inequality", b.inequality_lhs <= Rational::from_integer(1)));
        out.push(Assertion::new("stabilizer prefix counts", b.prefix_counts_hold(&by_fibers, n)));
    }
    Ok(out)
}

/// `H` is union-closed iff the star of `H` maps `min(H)↑` into `H`.
pub fn star_criterion_agrees(h: &SetFamily) -> bool {
    let table = StarTable::build(h);
    let maps_in = h.minimal().upset().iter().all(|z| h.contains(table.star(z)));
    maps_in == h.is_union_closed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfam::GroundSet;

    fn fam(n: usize, xs: &[&str]) -> SetFamily {
        SetFamily::parse(GroundSet::new(n).unwrap(), xs).unwrap()
    }

    fn word(n: usize, s: &str) -> Word {
        Word::parse(&GroundSet::new(n).unwrap(), s).unwrap()
    }

    // Direct simulation: one step raises z by a unless z ∪ a already sits in the section.
    fn simulate(f: &[u32], order: &[usize]) -> Vec<u32> {
        let mut cur = f.to_vec();
        for &a in order {
            let before = cur.clone();
            cur = before.iter().map(|&z| if before.contains(&(z | 1 << a)) { z } else { z | 1 << a }).collect();
        }
        cur
    }

    #[test]
    fn rise_examples() {
        let f = fam(3, &["a", "abc"]);
        let t = rise(&f, &word(3, "abc")).unwrap();
        assert_eq!(t.image(), &fam(3, &["ab", "abc"]));
        assert_eq!(simulate(&[1, 7], &[0, 1, 2]), vec![3, 7]);
        let t2 = rise(&f, &word(3, "acb")).unwrap();
        assert_eq!(t2.image(), &fam(3, &["ac", "abc"]));
        assert_ne!(t.image(), t2.image());
        t.validate().unwrap();
        assert_eq!(t.backward(SubsetMask(3)), Some(SubsetMask(1)));
        assert_eq!(t.trajectory(SubsetMask(1)).unwrap(), &[SubsetMask(1), SubsetMask(1), SubsetMask(3), SubsetMask(3)]);
    }

    #[test]
    fn rise_fixes_upward_closed() {
        let up = fam(3, &["a"]).upset();
        for w in Word::all(3) {
            let t = rise(&up, &w).unwrap();
            assert!(t.forward_pairs().all(|(g, x)| g == x));
        }
    }

    #[test]
    fn rise_rejects_bad_input() {
        let f = fam(3, &["a"]);
        assert!(matches!(rise(&f, &Word::identity(2)), Err(Error::WordLength { .. })));
        assert_eq!(
            rise(&SetFamily::empty(GroundSet::new(3).unwrap()), &Word::identity(3)).unwrap_err(),
            Error::EmptyFamily
        );
    }

    #[test]
    fn star_examples() {
        let f = fam(3, &["a", "abc"]);
        assert_eq!(star(&f, SubsetMask(0b011)).unwrap(), SubsetMask(1));
        assert_eq!(star(&f, SubsetMask(0b110)).unwrap(), SubsetMask::EMPTY);
        assert_eq!(star(&f, SubsetMask(7)).unwrap(), SubsetMask(7));
        assert_eq!(star(&fam(3, &["a", "b"]), SubsetMask(3)), Err(Error::NotUnionClosed));
        let table = StarTable::build(&f);
        for z in 0..8 {
            assert_eq!(table.star(SubsetMask(z)), star_any(&f, SubsetMask(z)));
        }
    }

    #[test]
    fn fiber_examples() {
        let f = fam(3, &["a", "abc"]);
        let r = fiber(&f, SubsetMask(1)).unwrap();
        assert_eq!(r.fiber, fam(3, &["a", "ab", "ac"]));
        assert_eq!(r.max_fiber, fam(3, &["ab", "ac"]));
        assert_eq!(fiber(&f, SubsetMask(7)).unwrap().fiber, fam(3, &["abc"]));
        assert!(matches!(fiber(&f, SubsetMask(2)), Err(Error::NotMember(_))));

        let up = fam(3, &["b"]).upset();
        for g in up.iter() {
            let r = fiber(&up, g).unwrap();
            assert_eq!(r.fiber.members(), &[g]);
            assert_eq!(r.max_fiber.members(), &[g]);
        }
    }

    #[test]
    fn words_realizing_examples() {
        let f = fam(3, &["a", "abc"]);
        let g = GroundSet::new(3).unwrap();
        let names = |ws: Vec<Word>| ws.iter().map(|w| w.format(&g)).collect::<Vec<_>>();
        assert_eq!(names(words_realizing(&f, SubsetMask(1), SubsetMask(3)).unwrap()), ["abc", "bac", "bca"]);
        assert_eq!(names(words_realizing(&f, SubsetMask(1), SubsetMask(5)).unwrap()), ["acb", "cab", "cba"]);
        assert_eq!(words_realizing(&f, SubsetMask(7), SubsetMask(7)).unwrap().len(), 6);
        assert!(words_realizing(&f, SubsetMask(1), SubsetMask(7)).is_err());
    }

    #[test]
    fn invariant_family_examples() {
        let f = fam(3, &["a", "abc"]);
        let u = invariant_family(&f).unwrap();
        assert_eq!(u.family, fam(3, &["ab", "ac", "abc"]));
        assert_eq!(u.rank, 2);
        assert_eq!(invariant_family_by_words(&f).unwrap(), u);
        // 2^(n-rank) <= |F| <= sum_{i >= rank} C(n, i)
        assert!(1 << (3 - u.rank) <= f.len());
        assert!(f.len() as u64 <= (u.rank..=3).map(|i| binomial(3, i)).sum::<u64>());

        let up = fam(3, &["a", "bc"]).upset();
        let uu = invariant_family(&up).unwrap();
        assert_eq!(uu.family, up);
        assert_eq!(uu.rank, 1);
    }

    #[test]
    fn burnside_examples() {
        let f = fam(3, &["a", "abc"]);
        let b = burnside_report(&f).unwrap();
        assert_eq!(b.word_stabilizer_sum, 12);
        assert_eq!(b.inequality_lhs, Rational::new(5, 6));
        assert_eq!(b.orbit_count, 2);

        let up = fam(3, &["a"]).upset();
        assert_eq!(up.len(), 4);
        let b = burnside_report(&up).unwrap();
        assert_eq!(b.word_stabilizer_sum, 24);
        assert_eq!(b.inequality_lhs, Rational::from_integer(1));

        let top = fam(3, &["abc"]);
        let b = burnside_report(&top).unwrap();
        assert_eq!((b.orbit_count, b.inequality_lhs), (1, Rational::from_integer(1)));
    }
}
