//! Shade and shadow, the first upward level of an antichain, the augmenting maps that push
//! `2|A| + |∇̄(A)|` towards its maximum, and symmetric chain decompositions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::setfam::{binomial, GroundSet, SetFamily, SubsetMask};
use crate::Assertion;

/// Largest ground set for the exhaustive up-set enumeration.
pub const MAX_ENUM_N: usize = 5;

/// Every one-element extension of every member, across all levels.
pub fn shade(a: &SetFamily) -> SetFamily {
    let full = a.ground().full();
    a.with_members(a.iter().flat_map(|z| full.difference(z).elements().map(move |i| z.with(i))))
}

/// Every one-element deletion of every non-empty member.
pub fn shadow(a: &SetFamily) -> SetFamily {
    a.with_members(a.iter().flat_map(|z| z.elements().map(move |i| z.without(i))))
}

fn require_antichain(a: &SetFamily) -> Result<()> {
    if a.is_antichain() {
        Ok(())
    } else {
        Err(Error::NotAntichain)
    }
}

/// `∇̄(A) = min ∇(A)`.
pub fn first_upward_level(a: &SetFamily) -> Result<SetFamily> {
    require_antichain(a)?;
    Ok(shade(a).minimal())
}

/// `A, ∇̄(A), ∇̄²(A), …` up to `depth` iterations, stopping at the first empty foil.
pub fn foils(a: &SetFamily, depth: usize) -> Result<Vec<SetFamily>> {
    require_antichain(a)?;
    let mut out = vec![a.clone()];
    while out.len() <= depth {
        let next = shade(out.last().expect("non-empty")).minimal();
        if next.is_empty() {
            break;
        }
        out.push(next);
    }
    Ok(out)
}

/// Whether the foils of `A` partition `A↑`.
pub fn foils_partition_upset(a: &SetFamily) -> Result<bool> {
    let layers = foils(a, a.n() + 1)?;
    let total: usize = layers.iter().map(SetFamily::len).sum();
    let union = layers.iter().fold(SetFamily::empty(a.ground().clone()), |acc, l| acc.union(l));
    Ok(total == union.len() && union == a.upset())
}

/// Whether `A` is an antichain meeting every chain of `2^X`, i.e. every subset is comparable
/// with some member.
pub fn is_maximal_antichain(a: &SetFamily) -> bool {
    a.is_antichain() && a.ground().all_masks().all(|z| a.iter().any(|m| m.comparable(z)))
}

/// An antichain with the quantities the augmentation argument tracks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntichainState {
    pub antichain: SetFamily,
    pub nabla_bar: SetFamily,
    /// `2|A| + |∇̄(A)|`.
    pub objective: usize,
    pub min_len: usize,
    pub max_len: usize,
    /// `‖∇̄(A)‖_M`, taken as 0 when `∇̄(A)` is empty.
    pub nabla_max_len: usize,
}

impl AntichainState {
    pub fn new(antichain: SetFamily) -> Result<Self> {
        if antichain.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let nabla_bar = first_upward_level(&antichain)?;
        let lens = || antichain.iter().map(SubsetMask::len);
        let min_len = lens().min().expect("non-empty");
        let max_len = lens().max().expect("non-empty");
        let nabla_max_len = nabla_bar.iter().map(SubsetMask::len).max().unwrap_or(0);
        let objective = 2 * antichain.len() + nabla_bar.len();
        Ok(AntichainState { antichain, nabla_bar, objective, min_len, max_len, nabla_max_len })
    }

    pub fn n(&self) -> usize {
        self.antichain.n()
    }

    /// `A_k`.
    pub fn level(&self, k: usize) -> SetFamily {
        self.antichain.filter(|z| z.len() == k)
    }

    pub fn is_consistent(&self) -> bool {
        self.antichain.is_antichain()
            && shade(&self.antichain).minimal() == self.nabla_bar
            && self.nabla_bar.iter().all(|z| !self.antichain.contains(z))
            && self.objective == 2 * self.antichain.len() + self.nabla_bar.len()
    }

    /// Property 1: `h ∪ {a} ∈ ∇̄(A)` for every `h` of minimum size and `a ∉ h`.
    pub fn min_level_rises(&self) -> bool {
        let full = self.antichain.ground().full();
        self.level(self.min_len)
            .iter()
            .all(|h| full.difference(h).elements().all(|a| self.nabla_bar.contains(h.with(a))))
    }

    /// The smallest `(h, a)` breaking property 2, if any.
    fn violation(&self) -> Option<(SubsetMask, usize)> {
        let k = self.nabla_max_len;
        if self.max_len >= k {
            return None;
        }
        self.nabla_bar
            .iter()
            .filter(|h| h.len() == k)
            .flat_map(|h| h.elements().map(move |a| (h, a)))
            .find(|&(h, a)| !self.antichain.contains(h.without(a)))
    }

    pub fn is_augmentable(&self) -> bool {
        self.min_level_rises() && self.violation().is_none()
    }
}

/// Adds the smallest violating `h ∖ {a}` until property 2 holds.
pub fn augmentable_closure(a: &SetFamily) -> Result<AntichainState> {
    let mut state = AntichainState::new(a.clone())?;
    while let Some((h, x)) = state.violation() {
        let grown = state.antichain.union(&state.antichain.with_members([h.without(x)]));
        if !grown.is_antichain() {
            return Err(Error::InvariantViolation("closure step left the antichains".into()));
        }
        state = AntichainState::new(grown)?;
    }
    Ok(state)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

/// One application of the upward (`Up`) or lower (`Down`) augmenting map.
pub fn augment_step(state: &AntichainState, direction: Direction) -> Result<AntichainState> {
    let n = state.n();
    if n % 2 == 1 {
        return Err(Error::OddN);
    }
    if !state.is_augmentable() {
        return Err(Error::NotAugmentable);
    }
    let a = &state.antichain;
    let replace = |k: usize, by: fn(&SetFamily) -> SetFamily| {
        let lvl = state.level(k);
        AntichainState::new(a.minus(&lvl).union(&by(&lvl)))
    };
    match direction {
        Direction::Up => {
            let s = state.min_len;
            if 2 * s + 2 < n {
                replace(s, shade)
            } else {
                Ok(state.clone())
            }
        }
        Direction::Down => {
            let (k, kp) = (state.nabla_max_len, state.max_len);
            if kp >= k && 2 * kp >= n + 2 {
                replace(kp, shadow)
            } else if kp < k && 2 * k > n + 2 {
                if kp + 1 != k {
                    return Err(Error::InvariantViolation(format!("top level {kp} is not one below {k}")));
                }
                replace(k - 1, shadow)
            } else {
                Ok(state.clone())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Closure,
    Up,
    Down,
}

/// One move of a maximization run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub kind: StepKind,
    pub objective_before: usize,
    pub objective_after: usize,
    pub min_len_before: usize,
    pub min_len_after: usize,
    pub max_len_before: usize,
    pub max_len_after: usize,
    pub output_is_antichain: bool,
}

impl Step {
    fn between(kind: StepKind, before: &AntichainState, after: &AntichainState) -> Self {
        Step {
            kind,
            objective_before: before.objective,
            objective_after: after.objective,
            min_len_before: before.min_len,
            min_len_after: after.min_len,
            max_len_before: before.max_len,
            max_len_after: after.max_len,
            output_is_antichain: after.antichain.is_antichain(),
        }
    }

    /// Non-decreasing objective, antichain output, and the strict length move of the maps.
    pub fn is_sound(&self) -> bool {
        let lengths = match self.kind {
            StepKind::Closure => self.min_len_after == self.min_len_before && self.max_len_after == self.max_len_before,
            StepKind::Up => self.min_len_after > self.min_len_before,
            StepKind::Down => self.max_len_after < self.max_len_before,
        };
        self.output_is_antichain && self.objective_after >= self.objective_before && lengths
    }
}

/// A run from one seed antichain to a fixpoint of both maps.
#[derive(Clone, Debug)]
pub struct Run {
    pub seed: SetFamily,
    pub steps: Vec<Step>,
    pub fixpoint: AntichainState,
}

impl Run {
    /// `n/2 ≥ ‖A‖_M ≥ ‖A‖_m ≥ n/2 − 1` at the fixpoint.
    pub fn fixpoint_in_middle(&self) -> bool {
        let n = self.fixpoint.n();
        2 * self.fixpoint.max_len <= n && 2 * self.fixpoint.min_len + 2 >= n
    }
}

#[derive(Clone, Debug)]
pub struct MaximizeOutcome {
    pub best: AntichainState,
    /// Empty for odd `n`, which is answered directly.
    pub runs: Vec<Run>,
}

/// Upper limit on moves per run; every acting map changes a length, so real runs stay far below.
const MAX_MOVES: usize = 10_000;

pub fn run_from(seed: &SetFamily) -> Result<Run> {
    let mut steps = Vec::new();
    let start = AntichainState::new(seed.clone())?;
    let mut state = augmentable_closure(seed)?;
    steps.push(Step::between(StepKind::Closure, &start, &state));
    for _ in 0..MAX_MOVES {
        let mut moved = false;
        for (dir, kind) in [(Direction::Up, StepKind::Up), (Direction::Down, StepKind::Down)] {
            let next = augment_step(&state, dir)?;
            if next != state {
                steps.push(Step::between(kind, &state, &next));
                let closed = augmentable_closure(&next.antichain)?;
                steps.push(Step::between(StepKind::Closure, &next, &closed));
                state = closed;
                moved = true;
                break;
            }
        }
        if !moved {
            return Ok(Run { seed: seed.clone(), steps, fixpoint: state });
        }
    }
    Err(Error::InvariantViolation("augmentation did not reach a fixpoint".into()))
}

fn random_antichain(ground: &GroundSet, rng: &mut ChaCha8Rng) -> SetFamily {
    let mut members: Vec<SubsetMask> = Vec::new();
    for _ in 0..4 * ground.n() {
        let z = SubsetMask(rng.random_range(0..ground.power() as u32));
        if members.iter().all(|m| !m.comparable(z)) {
            members.push(z);
        }
    }
    SetFamily::new(ground.clone(), members).expect("masks in range")
}

/// Seeds used by [`maximize_objective`] for even `n`.
pub fn seeds(ground: &GroundSet) -> Vec<SetFamily> {
    let n = ground.n();
    let mut out = vec![
        SetFamily::new(ground.clone(), [SubsetMask::EMPTY]).expect("empty mask"),
        SetFamily::new(ground.clone(), [ground.full()]).expect("full mask"),
        SetFamily::level(ground.clone(), 1),
        SetFamily::level(ground.clone(), n / 2),
        SetFamily::new(ground.clone(), [SubsetMask::singleton(0)]).expect("singleton"),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    out.extend((0..8).map(|_| random_antichain(ground, &mut rng)));
    out
}

/// The largest `2|A| + |∇̄(A)|` reached from a fixed set of seeds, with every run's trace.
pub fn maximize_objective(n: usize) -> Result<MaximizeOutcome> {
    if !(2..=8).contains(&n) {
        return Err(Error::OutOfRange { n, min: 2, max: 8 });
    }
    let ground = GroundSet::new(n)?;
    if n % 2 == 1 {
        let best = AntichainState::new(SetFamily::level(ground, n / 2))?;
        return Ok(MaximizeOutcome { best, runs: Vec::new() });
    }
    let runs = seeds(&ground).iter().map(run_from).collect::<Result<Vec<_>>>()?;
    let best = runs.iter().map(|r| &r.fixpoint).max_by_key(|s| s.objective).expect("at least one seed").clone();
    Ok(MaximizeOutcome { best, runs })
}

/// `2C(n, ⌊n/2⌋) + C(n, ⌊n/2⌋ + 1)`.
pub fn objective_bound(n: usize) -> usize {
    (2 * binomial(n, n / 2) + binomial(n, n / 2 + 1)) as usize
}

/// Every up-set of `2^X` as a bitmap over the `2^n` subsets, for `n ≤ 5`.
pub fn enumerate_upsets(n: usize) -> Result<Vec<u64>> {
    if n > MAX_ENUM_N {
        return Err(Error::TooLarge { what: "up-set enumeration", n, max: MAX_ENUM_N });
    }
    let mut level: Vec<u64> = vec![0, 1];
    for k in 0..n {
        let half = 1u32 << k;
        let mut next = Vec::new();
        for &lower in &level {
            for &upper in &level {
                if lower & !upper == 0 {
                    next.push(lower | (upper << half));
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// Every antichain of `2^X` (including the empty one), as minimal elements of the up-sets.
pub fn enumerate_antichains(ground: GroundSet) -> Result<Vec<SetFamily>> {
    let n = ground.n();
    Ok(enumerate_upsets(n)?
        .into_iter()
        .map(|bits| {
            let inside = |z: u32| bits >> z & 1 == 1;
            let mins = (0..1u32 << n)
                .filter(|&z| inside(z) && SubsetMask(z).elements().all(|i| !inside(z & !(1 << i))))
                .map(SubsetMask);
            SetFamily::new(ground.clone(), mins).expect("masks in range")
        })
        .collect())
}

/// The five listed properties of `∇̄` for one pair of antichains.
pub fn nabla_properties(a: &SetFamily, b: &SetFamily) -> Vec<Assertion> {
    let bar = |x: &SetFamily| shade(x).minimal();
    let (na, nb) = (shade(a), shade(b));
    let (ba, bb) = (bar(a), bar(b));
    let ab = a.union(b);
    let mut out = vec![Assertion::new(
        "shade and shadow distribute",
        shade(&ab) == na.union(&nb)
            && shadow(&ab) == shadow(a).union(&shadow(b))
            && a.iter().filter(|z| !z.is_empty()).all(|z| shade(&shadow(a)).contains(z))
            && a.iter().filter(|z| z.len() < a.n()).all(|z| shadow(&na).contains(z)),
    )];
    if a.is_subfamily_of(b) {
        out.push(Assertion::new(
            "shade dominated by larger first level",
            na.iter().all(|g| bb.iter().any(|h| h.is_subset_of(g))),
        ));
    }
    out.push(Assertion::new(
        "first level inside shade",
        ba.is_subfamily_of(&na) && na.iter().all(|g| ba.contains(g) != na.iter().any(|h| h.is_strict_subset_of(g))),
    ));
    if ab.is_antichain() && ba.iter().all(|g| !bb.iter().any(|h| h.is_strict_subset_of(g))) {
        out.push(Assertion::new("first level survives union", ba.is_subfamily_of(&bar(&ab))));
    }
    if a.is_subfamily_of(b) {
        let rest = b.minus(a);
        let nrest = shade(&rest);
        if na.iter().all(|g| nrest.iter().any(|h| h.is_subset_of(g))) {
            out.push(Assertion::new("first level ignores dominated part", bar(&rest) == bb));
        }
    }
    out
}

/// A partition of `2^X` into symmetric saturated chains.
#[derive(Clone, Debug)]
pub struct SymmetricChainDecomposition {
    pub n: usize,
    pub chains: Vec<Vec<SubsetMask>>,
    // position[z] = (chain, index)
    position: Vec<(u32, u32)>,
}

/// Positions of `z` not matched by the bracket rule (a 0 opens, a 1 closes).
fn unmatched(z: u32, n: usize) -> Vec<usize> {
    let mut open = Vec::new();
    let mut loose = Vec::new();
    for i in 0..n {
        if z >> i & 1 == 0 {
            open.push(i);
        } else if open.pop().is_none() {
            loose.push(i);
        }
    }
    loose.extend(open);
    loose
}

/// Bracket-matching decomposition: a chain starts where every unmatched position is 0 and
/// grows by flipping unmatched positions from left to right.
pub fn symmetric_chains(n: usize) -> Result<SymmetricChainDecomposition> {
    if n > crate::setfam::MAX_N {
        return Err(Error::GroundSize(n));
    }
    let size = 1usize << n;
    let mut chains = Vec::new();
    let mut position = vec![(0u32, 0u32); size];
    for z in 0..size as u32 {
        let free = unmatched(z, n);
        if free.iter().any(|&i| z >> i & 1 == 1) {
            continue;
        }
        let mut chain = vec![SubsetMask(z)];
        let mut cur = z;
        for &i in &free {
            cur |= 1 << i;
            chain.push(SubsetMask(cur));
        }
        for (t, m) in chain.iter().enumerate() {
            position[m.0 as usize] = (chains.len() as u32, t as u32);
        }
        chains.push(chain);
    }
    Ok(SymmetricChainDecomposition { n, chains, position })
}

impl SymmetricChainDecomposition {
    /// The chain-mate of `z` with `|z| + |specular(z)| = n`.
    pub fn specular(&self, z: SubsetMask) -> SubsetMask {
        let (c, t) = self.position[z.0 as usize];
        let chain = &self.chains[c as usize];
        chain[chain.len() - 1 - t as usize]
    }

    pub fn chain_of(&self, z: SubsetMask) -> &[SubsetMask] {
        &self.chains[self.position[z.0 as usize].0 as usize]
    }

    pub fn assertions(&self) -> Vec<Assertion> {
        let n = self.n;
        let size = 1usize << n;
        let mut seen = vec![0u8; size];
        for z in self.chains.iter().flatten() {
            seen[z.0 as usize] += 1;
        }
        let partition = seen.iter().all(|&c| c == 1);
        let saturated = self.chains.iter().all(|c| {
            c.windows(2).all(|w| w[0].is_strict_subset_of(w[1]) && w[1].len() == w[0].len() + 1)
                && c[0].len() + c[c.len() - 1].len() == n
        });
        let all = || (0..size as u32).map(SubsetMask);
        let involution = all().all(|z| {
            let s = self.specular(z);
            z.len() + s.len() == n && self.specular(s) == z
        });
        let below_half = all().filter(|z| 2 * z.len() < n).all(|z| z.is_strict_subset_of(self.specular(z)));
        vec![
            Assertion::new("chains partition the cube", partition),
            Assertion::new("chains saturated and symmetric", saturated),
            Assertion::new("specular involution", involution),
            Assertion::new("specular lies above below the middle", below_half),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn fam(n: usize, xs: &[&str]) -> SetFamily {
        SetFamily::parse(g(n), xs).unwrap()
    }

    #[test]
    fn shade_and_shadow() {
        assert_eq!(shade(&fam(3, &["ab"])), fam(3, &["abc"]));
        assert_eq!(shadow(&fam(3, &["ab"])), fam(3, &["a", "b"]));
        assert_eq!(shade(&SetFamily::level(g(3), 1)), SetFamily::level(g(3), 2));
        assert!(shade(&fam(3, &["abc"])).is_empty());
        assert_eq!(shade(&fam(3, &[""])), SetFamily::level(g(3), 1));
    }

    #[test]
    fn upward_level_and_foils() {
        let a = fam(3, &["a"]);
        assert_eq!(first_upward_level(&a).unwrap(), fam(3, &["ab", "ac"]));
        let layers = foils(&a, 10).unwrap();
        assert_eq!(layers, vec![a.clone(), fam(3, &["ab", "ac"]), fam(3, &["abc"])]);
        assert!(foils_partition_upset(&a).unwrap());
        for n in 2..=6 {
            let mid = SetFamily::level(g(n), n / 2);
            assert_eq!(first_upward_level(&mid).unwrap(), SetFamily::level(g(n), n / 2 + 1));
        }
        assert_eq!(first_upward_level(&fam(3, &["a", "ab"])), Err(Error::NotAntichain));
    }

    #[test]
    fn closure_examples() {
        let s = augmentable_closure(&fam(3, &["a"])).unwrap();
        assert_eq!(s.antichain, SetFamily::level(g(3), 1));
        assert_eq!(s.objective, 9);
        assert_eq!(AntichainState::new(fam(3, &["a"])).unwrap().objective, 4);

        let mid = SetFamily::level(g(4), 2);
        assert_eq!(augmentable_closure(&mid).unwrap().antichain, mid);

        let ab = fam(4, &["ab"]);
        let before = AntichainState::new(ab.clone()).unwrap();
        let s = augmentable_closure(&ab).unwrap();
        assert!(s.is_augmentable() && s.is_consistent());
        assert!(s.objective >= before.objective);
        assert_eq!((s.min_len, s.max_len), (before.min_len, before.max_len));
    }

    #[test]
    fn augment_examples() {
        let empty = augmentable_closure(&fam(4, &[""])).unwrap();
        assert_eq!(empty.objective, 6);
        let up = augment_step(&empty, Direction::Up).unwrap();
        assert_eq!(up.antichain, SetFamily::level(g(4), 1));
        assert_eq!(up.objective, 14);

        let mid = augmentable_closure(&SetFamily::level(g(4), 2)).unwrap();
        assert_eq!(augment_step(&mid, Direction::Up).unwrap(), mid);
        assert_eq!(augment_step(&mid, Direction::Down).unwrap(), mid);

        let odd = augmentable_closure(&fam(3, &["a"])).unwrap();
        assert_eq!(augment_step(&odd, Direction::Up), Err(Error::OddN));

        let raw = AntichainState::new(fam(4, &["a"])).unwrap();
        assert!(!raw.is_augmentable());
        assert_eq!(augment_step(&raw, Direction::Up), Err(Error::NotAugmentable));
    }

    #[test]
    fn maximize_small() {
        assert_eq!(maximize_objective(4).unwrap().best.objective, 16);
        let odd = maximize_objective(3).unwrap();
        assert_eq!(odd.best.objective, 9);
        assert_eq!(odd.best.antichain, SetFamily::level(g(3), 1));
        assert_eq!(maximize_objective(2).unwrap().best.objective, 5);
        assert!(maximize_objective(9).is_err());
        assert!(maximize_objective(1).is_err());
    }

    #[test]
    fn maximize_six() {
        let out = maximize_objective(6).unwrap();
        assert_eq!(out.best.objective, 55);
        assert_eq!(objective_bound(6), 55);
        for run in &out.runs {
            assert!(run.steps.iter().all(Step::is_sound), "{:?}", run.steps);
            assert!(run.fixpoint_in_middle());
            assert!(run.fixpoint.objective <= 55);
        }
    }

    #[test]
    fn dedekind_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| enumerate_upsets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 3, 6, 20, 168, 7581]);
        let antichains = enumerate_antichains(g(4)).unwrap();
        assert!(antichains.iter().all(SetFamily::is_antichain));
        assert!(enumerate_upsets(6).is_err());
    }

    #[test]
    fn maximal_antichains() {
        assert!(is_maximal_antichain(&SetFamily::level(g(3), 1)));
        assert!(is_maximal_antichain(&fam(3, &[""])));
        assert!(!is_maximal_antichain(&fam(3, &["a"])));
        assert!(is_maximal_antichain(&fam(3, &["a", "bc"])));
    }

    #[test]
    fn scd_examples() {
        let d = symmetric_chains(2).unwrap();
        let a = SubsetMask::singleton(0);
        assert_eq!(d.chains.len(), 2);
        assert_eq!(d.chain_of(SubsetMask::EMPTY), &[SubsetMask::EMPTY, a, SubsetMask(0b11)]);
        assert_eq!(d.specular(a), a);
        let d3 = symmetric_chains(3).unwrap();
        let mut sizes: Vec<usize> = d3.chains.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 4]);
        let d4 = symmetric_chains(4).unwrap();
        for i in 0..4 {
            assert_eq!(d4.specular(SubsetMask::singleton(i)).len(), 3);
        }
        for n in 0..=8 {
            assert!(symmetric_chains(n).unwrap().assertions().iter().all(|a| a.holds));
        }
    }

    #[test]
    fn nabla_properties_small() {
        let all = enumerate_antichains(g(3)).unwrap();
        for a in &all {
            for b in &all {
                assert!(nabla_properties(a, b).iter().all(|x| x.holds), "{a:?} {b:?}");
            }
        }
    }
}
