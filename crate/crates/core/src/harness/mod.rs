//! Enumeration and sampling of input families, the check registry and the suite runner.
//!
//! Random streams use ChaCha8 (`rand_chacha`) seeded with `seed_from_u64`, so a
//! `(n, count, seed)` triple yields the same families on every platform.

mod checks;
mod suite;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::setfam::{GroundSet, SetFamily, SubsetMask};

pub use checks::{check_ids, lookup, Check, Domain, Finding, Outcome};
pub use suite::{
    replay, run_cases, run_suite, Case, CheckReport, Counterexample, Mode, SuiteConfig, VerificationReport, WordMode,
    SCHEMA,
};

/// Largest ground set for the exhaustive scan of `2^(2^n)` families.
pub const MAX_EXHAUSTIVE_N: usize = 4;

fn family_from_bits(ground: &GroundSet, bits: u64) -> SetFamily {
    let masks = (0..ground.power() as u32).filter(|&z| bits >> z & 1 == 1).map(SubsetMask);
    SetFamily::new(ground.clone(), masks).expect("masks in range")
}

fn check_exhaustive(n: usize) -> Result<GroundSet> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::TooLarge { what: "exhaustive family scan", n, max: MAX_EXHAUSTIVE_N });
    }
    GroundSet::new(n)
}

/// Union-closed test on a bitmap of the `2^n` subsets; bails out at the first missing union.
fn bits_union_closed(bits: u64, power: u32) -> bool {
    let members: Vec<u32> = (0..power).filter(|&z| bits >> z & 1 == 1).collect();
    members.iter().enumerate().all(|(i, &x)| members[i + 1..].iter().all(|&y| bits >> (x | y) & 1 == 1))
}

/// Every non-empty union-closed family over `2^X`, by counting through all `2^(2^n)` bitmaps.
pub fn enumerate_union_closed(n: usize) -> Result<Vec<SetFamily>> {
    let ground = check_exhaustive(n)?;
    let power = ground.power() as u32;
    Ok((1u64..1u64 << power)
        .filter(|&bits| bits_union_closed(bits, power))
        .map(|bits| family_from_bits(&ground, bits))
        .collect())
}

/// Every non-empty family over `2^X`.
pub fn enumerate_families(n: usize) -> Result<Vec<SetFamily>> {
    let ground = check_exhaustive(n)?;
    Ok((1u64..1u64 << ground.power()).map(|bits| family_from_bits(&ground, bits)).collect())
}

/// `count` union-closed families: draw `g ∈ [1, 2n]`, draw `g` non-empty masks, close.
pub fn sample_union_closed(n: usize, count: usize, seed: u64) -> Result<impl Iterator<Item = SetFamily>> {
    let ground = GroundSet::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = ground.power() as u32;
    Ok((0..count).map(move |_| {
        let g = rng.random_range(1..=2 * n);
        let masks: Vec<SubsetMask> = (0..g).map(|_| SubsetMask(rng.random_range(1..top))).collect();
        SetFamily::new(ground.clone(), masks).and_then(|f| f.close_under_union()).expect("non-empty masks in range")
    }))
}

/// `count` arbitrary families of `1..=2n` random masks (the empty set allowed).
pub fn sample_families(n: usize, count: usize, seed: u64) -> Result<impl Iterator<Item = SetFamily>> {
    let ground = GroundSet::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = ground.power() as u32;
    Ok((0..count).map(move |_| {
        let g = rng.random_range(1..=2 * n);
        let masks: Vec<SubsetMask> = (0..g).map(|_| SubsetMask(rng.random_range(0..top))).collect();
        SetFamily::new(ground.clone(), masks).expect("masks in range")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_closed_counts_match_scan() {
        for n in 1..=3 {
            let fast = enumerate_union_closed(n).unwrap();
            let slow: Vec<SetFamily> =
                enumerate_families(n).unwrap().into_iter().filter(SetFamily::is_union_closed).collect();
            assert_eq!(fast, slow);
        }
        assert_eq!(enumerate_union_closed(1).unwrap().len(), 3);
        assert!(enumerate_union_closed(5).is_err());
    }

    #[test]
    fn n2_catalogue() {
        let got: Vec<Vec<String>> = enumerate_union_closed(2).unwrap().iter().map(SetFamily::format).collect();
        let mut want: Vec<Vec<&str>> = vec![
            vec!["{}"],
            vec!["a"],
            vec!["b"],
            vec!["ab"],
            vec!["{}", "a"],
            vec!["{}", "b"],
            vec!["{}", "ab"],
            vec!["a", "ab"],
            vec!["b", "ab"],
            vec!["{}", "a", "ab"],
            vec!["{}", "b", "ab"],
            vec!["a", "b", "ab"],
            vec!["{}", "a", "b", "ab"],
        ];
        let mut got_sorted: Vec<Vec<&str>> = got.iter().map(|v| v.iter().map(String::as_str).collect()).collect();
        got_sorted.sort();
        want.sort();
        assert_eq!(got_sorted, want);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a: Vec<SetFamily> = sample_union_closed(5, 50, 42).unwrap().collect();
        let b: Vec<SetFamily> = sample_union_closed(5, 50, 42).unwrap().collect();
        assert_eq!(a, b);
        assert!(a.iter().all(SetFamily::is_union_closed));
        let full = GroundSet::new(5).unwrap().full();
        assert_eq!(
            sample_union_closed(5, 1000, 42).unwrap().filter(|f| f.union_all().is_subset_of(full)).count(),
            1000
        );
        assert_eq!(sample_union_closed(5, 0, 1).unwrap().count(), 0);
    }
}
