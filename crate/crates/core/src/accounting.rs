//! Counting sets around an element: S/P, spurious/pure along a word, their word-independent
//! (hyper) versions and the covering sets `Cov_a(g)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rising::{fibers, rise, FiberReport, RisingTranscript, StarTable, MAX_WORD_SWEEP_N};
use crate::setfam::{SetFamily, SubsetMask, Word};
use crate::Assertion;

fn check_element(h: &SetFamily, a: usize) -> Result<()> {
    if a < h.n() {
        Ok(())
    } else {
        Err(Error::UnknownElement(format!("#{a}")))
    }
}

/// `S(H, a)` and `P(H, a)` for one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpCounts {
    pub element: usize,
    /// Members `z` with `z ∪ {a} ∉ H`.
    pub s: SetFamily,
    /// Members `z ∋ a` with `z ∖ {a} ∉ H`.
    pub p: SetFamily,
    pub with_element: usize,
    pub without_element: usize,
}

impl SpCounts {
    /// `|H_a| − |H_ā| = |P| − |S|`.
    pub fn balance_holds(&self) -> bool {
        self.with_element as i64 - self.without_element as i64 == self.p.len() as i64 - self.s.len() as i64
    }
}

/// S/P sets of an arbitrary family.
pub fn sp_counts(h: &SetFamily, a: usize) -> Result<SpCounts> {
    check_element(h, a)?;
    let s = h.filter(|z| !h.contains(z.with(a)));
    let p = h.filter(|z| z.contains(a) && !h.contains(z.without(a)));
    let with_element = h.iter().filter(|z| z.contains(a)).count();
    Ok(SpCounts { element: a, s, p, with_element, without_element: h.len() - with_element })
}

/// Spurious and pure sets of `C = φ_w(F)`.
#[derive(Clone, Debug)]
pub struct RisingAccounts {
    pub transcript: RisingTranscript,
    /// `σ_w(a) = {η ∈ C : a ∈ η ∖ φ_w⁻¹(η)}`.
    pub sigma_by_element: Vec<SetFamily>,
    /// `π_w(a) = {η ∈ φ_w(F_a) : η ∖ {a} ∉ C}`.
    pub pi_by_element: Vec<SetFamily>,
    /// `(η, σ_w(η))` in image order.
    pub sigma_local: Vec<(SubsetMask, SubsetMask)>,
    /// `(η, π_w(η))` in image order.
    pub pi_local: Vec<(SubsetMask, SubsetMask)>,
    /// S/P sets of `F` itself, per element.
    pub sp: Vec<SpCounts>,
}

pub fn rising_accounts(family: &SetFamily, word: &Word) -> Result<RisingAccounts> {
    family.require_union_closed()?;
    let t = rise(family, word)?;
    let n = family.n();
    let image = t.image();
    let mut sigma_local = Vec::with_capacity(image.len());
    let mut pi_local = Vec::with_capacity(image.len());
    for eta in image.iter() {
        let pre = t.backward(eta).expect("image member has a preimage");
        sigma_local.push((eta, eta.difference(pre)));
        let pure = pre.elements().filter(|&a| !image.contains(eta.without(a)));
        pi_local.push((eta, pure.fold(SubsetMask::EMPTY, SubsetMask::with)));
    }
    let sigma_by_element = (0..n)
        .map(|a| image.with_members(sigma_local.iter().filter(|(_, s)| s.contains(a)).map(|&(e, _)| e)))
        .collect();
    let pi_by_element =
        (0..n).map(|a| image.with_members(pi_local.iter().filter(|(_, p)| p.contains(a)).map(|&(e, _)| e))).collect();
    let sp = (0..n).map(|a| sp_counts(family, a)).collect::<Result<_>>()?;
    Ok(RisingAccounts { transcript: t, sigma_by_element, pi_by_element, sigma_local, pi_local, sp })
}

impl RisingAccounts {
    pub fn image(&self) -> &SetFamily {
        self.transcript.image()
    }

    pub fn sigma_of(&self, eta: SubsetMask) -> Option<SubsetMask> {
        let i = self.image().index_of(eta)?;
        Some(self.sigma_local[i].1)
    }

    pub fn pi_of(&self, eta: SubsetMask) -> Option<SubsetMask> {
        let i = self.image().index_of(eta)?;
        Some(self.pi_local[i].1)
    }

    /// `φ_w(F_a)`.
    pub fn risen_with(&self, a: usize) -> SetFamily {
        self.image().with_members(self.transcript.forward_pairs().filter(|(g, _)| g.contains(a)).map(|(_, x)| x))
    }

    /// Every identity the definitions promise, one entry per statement and element.
    pub fn assertions(&self) -> Vec<Assertion> {
        let c = self.image();
        let n = c.n();
        let label = |a: usize| c.ground().label(a).to_string();
        let mut out = Vec::new();
        let mut franklish = false;
        let mut balanced = false;
        for a in 0..n {
            let sigma = &self.sigma_by_element[a];
            let pi = &self.pi_by_element[a];
            let c_with = c.containing(a);
            let c_without = c.avoiding(a);
            let risen = self.risen_with(a);
            let lifted = c.with_members(c_without.iter().map(|z| z.with(a)));

            let pairwise_disjoint =
                lifted.iter().all(|z| !pi.contains(z) && !sigma.contains(z)) && pi.iter().all(|z| !sigma.contains(z));
            let covers = lifted.union(pi).union(sigma) == c_with;
            out.push(Assertion::new(format!("partition sets [{}]", label(a)), pairwise_disjoint && covers));
            out.push(Assertion::new(
                format!("partition count [{}]", label(a)),
                c_with.len() == c_without.len() + pi.len() + sigma.len(),
            ));
            out.push(Assertion::new(
                format!("risen and spurious split C_a [{}]", label(a)),
                risen.union(sigma) == c_with && risen.iter().all(|z| !sigma.contains(z)),
            ));
            let loose = c.filter(|z| z.contains(a) && !c.contains(z.without(a)));
            out.push(Assertion::new(format!("spurious plus pure [{}]", label(a)), sigma.union(pi) == loose));
            out.push(Assertion::new(
                format!("containments [{}]", label(a)),
                sigma.is_subfamily_of(&c_with) && pi.is_subfamily_of(&risen),
            ));
            let sp = &self.sp[a];
            let pi_n = pi.len() as i64;
            let sigma_n = sigma.len() as i64;
            out.push(Assertion::new(
                format!("alternative formulation [{}]", label(a)),
                pi_n - sigma_n == sp.p.len() as i64 - sp.s.len() as i64,
            ));
            out.push(Assertion::new(
                format!("pure and spurious below P and S [{}]", label(a)),
                pi.len() <= sp.p.len() && sigma.len() <= sp.s.len(),
            ));
            franklish |= 2 * sp.with_element >= self.transcript.input().len();
            balanced |= pi_n >= sigma_n;
        }
        out.push(Assertion::new("frankl reformulation", franklish == balanced));
        let by_elem_sigma: usize = self.sigma_by_element.iter().map(SetFamily::len).sum();
        let by_elem_pi: usize = self.pi_by_element.iter().map(SetFamily::len).sum();
        let local_sigma: usize = self.sigma_local.iter().map(|(_, s)| s.len()).sum();
        let local_pi: usize = self.pi_local.iter().map(|(_, p)| p.len()).sum();
        out.push(Assertion::new("double counting", by_elem_sigma == local_sigma && by_elem_pi == local_pi));
        let local_ok = self.sigma_local.iter().zip(&self.pi_local).all(|(&(eta, s), &(_, p))| {
            let pre = self.transcript.backward(eta).expect("image member");
            s == eta.difference(pre) && s.intersection(p).is_empty() && p.is_subset_of(eta)
        });
        out.push(Assertion::new("local sets", local_ok));
        out
    }
}

/// `{φ_w(g) : g ∈ F_a, (g ∖ {a})* = ∅}` for every element, which must sit inside `π_w(a)`.
///
/// `(z)* = ∅` is read as "no member of `F` lies below `z`"; the two agree unless `∅ ∈ F`, where
/// the literal reading would put `g = {a}` on the left while `π_w(a)` is empty.
#[derive(Clone, Debug)]
pub struct PureLowerBound {
    pub by_element: Vec<SetFamily>,
}

pub fn pure_lower_bound(family: &SetFamily, word: &Word) -> Result<PureLowerBound> {
    family.require_union_closed()?;
    let t = rise(family, word)?;
    let table = StarTable::build(family);
    let by_element = (0..family.n())
        .map(|a| {
            t.image().with_members(
                t.forward_pairs().filter(|&(g, _)| g.contains(a) && !table.covered(g.without(a))).map(|(_, x)| x),
            )
        })
        .collect();
    Ok(PureLowerBound { by_element })
}

impl PureLowerBound {
    pub fn assertions(&self, accounts: &RisingAccounts) -> Vec<Assertion> {
        let family = accounts.transcript.input();
        let minimal = family.minimal();
        (0..family.n())
            .map(|a| {
                let lhs = &self.by_element[a];
                let has_min = minimal.iter().any(|m| m.contains(a));
                Assertion::new(
                    format!("pure lower bound [{}]", family.ground().label(a)),
                    lhs.is_subfamily_of(&accounts.pi_by_element[a]) && (!has_min || !lhs.is_empty()),
                )
            })
            .collect()
    }
}

/// Image members where the intersection formulas for `σ_w(η)` and `π_w(η)` fail.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalReport {
    pub checked: usize,
    pub violations: Vec<SubsetMask>,
}

pub fn local_characterization(family: &SetFamily, word: &Word) -> Result<LocalReport> {
    let acc = rising_accounts(family, word)?;
    Ok(local_characterization_of(&acc))
}

pub fn local_characterization_of(acc: &RisingAccounts) -> LocalReport {
    let image = acc.image();
    let full = image.ground().full();
    let mut violations = Vec::new();
    for (i, eta) in image.iter().enumerate() {
        let below: Vec<usize> =
            image.iter().enumerate().filter(|&(_, xi)| xi.is_subset_of(eta)).map(|(j, _)| j).collect();
        let sigma_meet = below.iter().fold(full, |m, &j| m.intersection(acc.sigma_local[j].1));
        let xi_meet = below.iter().fold(full, |m, &j| m.intersection(image.members()[j]));
        let pre = acc.transcript.backward(eta).expect("image member");
        if acc.sigma_local[i].1 != sigma_meet || acc.pi_local[i].1 != xi_meet.intersection(pre) {
            violations.push(eta);
        }
    }
    LocalReport { checked: image.len(), violations }
}

/// Hyper-spurious and hyper-pure sets and the covering sets `Cov_a(g)`.
#[derive(Clone, Debug)]
pub struct HyperAccounts {
    pub family: SetFamily,
    pub fibers: Vec<FiberReport>,
    pub invariant: SetFamily,
    /// `Σ(F, a) = {g ∈ F_ā : a ∈ every η ∈ max Fib(g)}`.
    pub sigma_by_element: Vec<SetFamily>,
    /// `Π(F, a) = {g ∈ F_a : η ∖ {a} ∉ U(F) for every η ∈ max Fib(g)}`.
    pub pi_by_element: Vec<SetFamily>,
    /// `Σ(F, g)` in member order.
    pub sigma_local: Vec<SubsetMask>,
    /// `Π(F, g)` in member order.
    pub pi_local: Vec<SubsetMask>,
    /// `covers[a][i] = Cov_a(g_i) = {h ∈ F_a : (h ∖ {a})* = g_i}`.
    pub covers: Vec<Vec<SetFamily>>,
}

pub fn hyper_accounts(family: &SetFamily) -> Result<HyperAccounts> {
    let fibers = fibers(family)?;
    let n = family.n();
    let full = family.ground().full();
    let invariant = family.with_members(fibers.iter().flat_map(|r| r.max_fiber.iter().collect::<Vec<_>>()));
    let sigma_local: Vec<SubsetMask> = fibers
        .iter()
        .map(|r| r.max_fiber.iter().fold(full, |m, eta| m.intersection(eta.difference(r.owner))))
        .collect();
    let pi_local: Vec<SubsetMask> = fibers
        .iter()
        .map(|r| {
            r.owner
                .elements()
                .filter(|&a| r.max_fiber.iter().all(|eta| !invariant.contains(eta.without(a))))
                .fold(SubsetMask::EMPTY, SubsetMask::with)
        })
        .collect();
    let sigma_by_element = (0..n)
        .map(|a| family.with_members(family.iter().zip(&sigma_local).filter(|(_, s)| s.contains(a)).map(|(g, _)| g)))
        .collect();
    let pi_by_element = (0..n)
        .map(|a| family.with_members(family.iter().zip(&pi_local).filter(|(_, p)| p.contains(a)).map(|(g, _)| g)))
        .collect();
    let table = StarTable::build(family);
    let covers = (0..n)
        .map(|a| family.iter().map(|g| family.filter(|h| h.contains(a) && table.star(h.without(a)) == g)).collect())
        .collect();
    Ok(HyperAccounts {
        family: family.clone(),
        fibers,
        invariant,
        sigma_by_element,
        pi_by_element,
        sigma_local,
        pi_local,
        covers,
    })
}

impl HyperAccounts {
    pub fn sigma_of(&self, g: SubsetMask) -> Option<SubsetMask> {
        self.family.index_of(g).map(|i| self.sigma_local[i])
    }

    pub fn pi_of(&self, g: SubsetMask) -> Option<SubsetMask> {
        self.family.index_of(g).map(|i| self.pi_local[i])
    }

    pub fn cov(&self, a: usize, g: SubsetMask) -> Option<&SetFamily> {
        self.family.index_of(g).map(|i| &self.covers[a][i])
    }

    /// `(lower, middle, upper)` of `|F_ā| − |Σ(F,a)| ≤ Σ_g |max Cov_a(g)| ≤ |F_a| − |Π(F,a)|`.
    pub fn sandwich(&self, a: usize) -> (i64, i64, i64) {
        let f = &self.family;
        let lower = f.avoiding(a).len() as i64 - self.sigma_by_element[a].len() as i64;
        let middle: usize = f
            .iter()
            .enumerate()
            .filter(|&(i, g)| !g.contains(a) && !self.sigma_local[i].contains(a))
            .map(|(i, _)| self.covers[a][i].maximal().len())
            .sum();
        let upper = f.containing(a).len() as i64 - self.pi_by_element[a].len() as i64;
        (lower, middle as i64, upper)
    }

    pub fn assertions(&self) -> Vec<Assertion> {
        let f = &self.family;
        let n = f.n();
        let full = f.ground().full();
        let fmt = |m: SubsetMask| f.ground().format_subset(m);
        let mut out = Vec::new();
        for (i, g) in f.iter().enumerate() {
            let sigma = self.sigma_local[i];
            let uncovered = full
                .difference(g)
                .elements()
                .filter(|&b| self.covers[b][i].is_empty())
                .fold(SubsetMask::EMPTY, SubsetMask::with);
            let above = f.upper_covers(g).into_iter().fold(g, SubsetMask::union);
            out.push(Assertion::new(format!("hyper-spurious via covers [{}]", fmt(g)), sigma == uncovered));
            out.push(Assertion::new(
                format!("hyper-spurious via upper covers [{}]", fmt(g)),
                sigma == full.difference(above),
            ));
            out.push(Assertion::new(
                format!("hyper sets placement [{}]", fmt(g)),
                sigma.intersection(g).is_empty() && self.pi_local[i].is_subset_of(g),
            ));
            let cov_ok = (0..n).all(|a| !self.covers[a][i].is_empty() == !(sigma.contains(a) || g.contains(a)));
            out.push(Assertion::new(format!("covering nonempty iff not hyper-spurious [{}]", fmt(g)), cov_ok));
        }
        for a in 0..n {
            let (lo, mid, hi) = self.sandwich(a);
            out.push(Assertion::new(format!("cov sandwich [{}]", f.ground().label(a)), lo <= mid && mid <= hi));
        }
        out
    }
}

/// `Σ(F,g)` and `Π(F,g)` recomputed as intersections over all words, in member order.
pub fn hyper_by_words(family: &SetFamily) -> Result<(Vec<SubsetMask>, Vec<SubsetMask>)> {
    family.require_union_closed()?;
    let n = family.n();
    if n > MAX_WORD_SWEEP_N {
        return Err(Error::TooLarge { what: "word sweep", n, max: MAX_WORD_SWEEP_N });
    }
    let full = family.ground().full();
    let mut sigma = vec![full; family.len()];
    let mut pi = vec![full; family.len()];
    for w in Word::all(n) {
        let t = rise(family, &w)?;
        for (i, (g, eta)) in t.forward_pairs().enumerate() {
            sigma[i] = sigma[i].intersection(eta.difference(g));
            let pure =
                g.elements().filter(|&a| !t.image().contains(eta.without(a))).fold(SubsetMask::EMPTY, SubsetMask::with);
            pi[i] = pi[i].intersection(pure);
        }
    }
    Ok((sigma, pi))
}

/// A violation of the three-way covering equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringViolation {
    pub element: usize,
    pub member: SubsetMask,
    pub fiber_escapes: bool,
    pub covered_by_member_with: bool,
    pub cov_nonempty: bool,
}

/// For every `a` and `g ∈ F_ā`: some `η ∈ max Fib(g)` avoids `a` ⇔ some `h ∈ F_a` covers `g`
/// ⇔ `Cov_a(g) ≠ ∅`.
pub fn covering_equivalences(family: &SetFamily) -> Result<Vec<CoveringViolation>> {
    let hyper = hyper_accounts(family)?;
    let mut out = Vec::new();
    for (i, g) in family.iter().enumerate() {
        let ups = family.upper_covers(g);
        for a in (0..family.n()).filter(|&a| !g.contains(a)) {
            let fiber_escapes = hyper.fibers[i].max_fiber.iter().any(|eta| !eta.contains(a));
            let covered_by_member_with = ups.iter().any(|h| h.contains(a));
            let cov_nonempty = !hyper.covers[a][i].is_empty();
            if fiber_escapes != covered_by_member_with || covered_by_member_with != cov_nonempty {
                out.push(CoveringViolation {
                    element: a,
                    member: g,
                    fiber_escapes,
                    covered_by_member_with,
                    cov_nonempty,
                });
            }
        }
    }
    Ok(out)
}

/// A word `w'` with `σ_{w'}(φ_{w'}(g)) ⊆ σ_{w'}(φ_{w'}(f))`, built from maximal fiber elements
/// as in the containment argument: `η ∈ max Fib(g)`, `ν ∈ max Fib(f)` above `(η ∖ g) ∪ f`, then
/// `η ∖ g` first, the rest of `ν ∖ f` next, everything else last. Among all such candidates the
/// lexicographically smallest word is returned.
pub fn spurious_monotonicity(family: &SetFamily, f: SubsetMask, g: SubsetMask) -> Result<Word> {
    family.require_union_closed()?;
    family.require_member(f)?;
    family.require_member(g)?;
    if !f.is_subset_of(g) {
        let fmt = |m| family.ground().format_subset(m);
        return Err(Error::NotSubset(fmt(f), fmt(g)));
    }
    let fibers = fibers(family)?;
    let fib_g = &fibers[family.index_of(g).expect("member")];
    let fib_f = &fibers[family.index_of(f).expect("member")];
    let n = family.n();
    let mut best: Option<Word> = None;
    for eta in fib_g.max_fiber.iter() {
        let head = eta.difference(g);
        let shifted = head.union(f);
        for nu in fib_f.max_fiber.iter().filter(|nu| shifted.is_subset_of(*nu)) {
            let middle = nu.difference(f).difference(head);
            let mut order: Vec<usize> = head.elements().collect();
            order.extend(middle.elements());
            order.extend((0..n).filter(|&i| !head.contains(i) && !middle.contains(i)));
            let w = Word::new(order)?;
            let t = rise(family, &w)?;
            let (pg, pf) = (t.forward(g).expect("member"), t.forward(f).expect("member"));
            if pg.difference(g).is_subset_of(pf.difference(f)) && best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
    }
    best.ok_or_else(|| Error::InvariantViolation("no containment witness word".into()))
}
