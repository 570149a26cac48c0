use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 16;

/// A subset of the ground set, bit `i` standing for element `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_strict_subset_of(self, other: SubsetMask) -> bool {
        self != other && self.is_subset_of(other)
    }

    #[inline]
    pub fn comparable(self, other: SubsetMask) -> bool {
        self.is_subset_of(other) || other.is_subset_of(self)
    }

    #[inline]
    pub fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | 1 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1 << i))
    }

    /// Element indices in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in ascending mask order.
    pub fn submasks(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(SubsetMask(cur))
        })
    }
}

/// The ground set `X`: a size and display labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

impl GroundSet {
    /// Ground set of size `n` labelled `a, b, c, ...`.
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::GroundSize(n));
        }
        let labels: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        Ok(GroundSet { labels: labels.into() })
    }

    pub fn with_labels<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if !(1..=MAX_N).contains(&labels.len()) {
            return Err(Error::GroundSize(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains(',') || l.trim() != l || l == "{}" {
                return Err(Error::Parse { line: 0, msg: format!("invalid label `{l}`") });
            }
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels: labels.into() })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// The whole ground set as a mask.
    #[inline]
    pub fn full(&self) -> SubsetMask {
        SubsetMask(((1u64 << self.n()) - 1) as u32)
    }

    /// Number of subsets, `2^n`.
    #[inline]
    pub fn power(&self) -> usize {
        1 << self.n()
    }

    pub fn all_masks(&self) -> impl Iterator<Item = SubsetMask> {
        (0..self.power() as u32).map(SubsetMask)
    }

    pub fn check(&self, m: SubsetMask) -> Result<SubsetMask> {
        if m.is_subset_of(self.full()) {
            Ok(m)
        } else {
            Err(Error::MaskOutOfRange { mask: m.0, n: self.n() })
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    fn compact_labels(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    /// Renders a subset as `abc` when all labels are single characters, `x1,x2` otherwise,
    /// and `{}` for the empty set.
    pub fn format_subset(&self, m: SubsetMask) -> String {
        if m.is_empty() {
            return "{}".to_string();
        }
        let sep = if self.compact_labels() { "" } else { "," };
        m.elements().map(|i| self.label(i)).collect::<Vec<_>>().join(sep)
    }

    /// Renders an ordered list of elements the same way as [`Self::format_subset`].
    pub fn format_sequence(&self, elems: &[usize]) -> String {
        let sep = if self.compact_labels() { "" } else { "," };
        elems.iter().map(|&i| self.label(i)).collect::<Vec<_>>().join(sep)
    }

    /// Splits a label list written either comma-separated or, when every label is a single
    /// character, run together.
    pub fn parse_sequence(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() || text == "{}" {
            return Ok(Vec::new());
        }
        if text.contains(',') || !self.compact_labels() {
            text.split(',').map(|t| self.index_of(t.trim())).collect()
        } else {
            text.chars().map(|c| self.index_of(&c.to_string())).collect()
        }
    }

    pub fn parse_subset(&self, text: &str) -> Result<SubsetMask> {
        Ok(self.parse_sequence(text)?.into_iter().fold(SubsetMask::EMPTY, |m, i| m.with(i)))
    }
}

/// A dense membership bitmap over all `2^n` masks.
#[derive(Clone, Debug)]
pub struct MaskSet {
    words: Vec<u64>,
}

impl MaskSet {
    pub fn new(n: usize) -> Self {
        MaskSet { words: vec![0; (1usize << n).div_ceil(64)] }
    }

    pub fn from_masks(n: usize, masks: impl IntoIterator<Item = SubsetMask>) -> Self {
        let mut s = Self::new(n);
        for m in masks {
            s.insert(m);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, m: SubsetMask) {
        self.words[(m.0 >> 6) as usize] |= 1 << (m.0 & 63);
    }

    #[inline]
    pub fn remove(&mut self, m: SubsetMask) {
        self.words[(m.0 >> 6) as usize] &= !(1 << (m.0 & 63));
    }

    #[inline]
    pub fn contains(&self, m: SubsetMask) -> bool {
        self.words[(m.0 >> 6) as usize] >> (m.0 & 63) & 1 == 1
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submasks_enumerates_all() {
        let m = SubsetMask(0b1011);
        let subs: Vec<u32> = m.submasks().map(|s| s.0).collect();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(SubsetMask::EMPTY.submasks().count(), 1);
    }

    #[test]
    fn labels_round_trip() {
        let g = GroundSet::new(3).unwrap();
        assert_eq!(g.format_subset(SubsetMask(0b101)), "ac");
        assert_eq!(g.format_subset(SubsetMask::EMPTY), "{}");
        assert_eq!(g.parse_subset("a,c").unwrap(), SubsetMask(0b101));
        assert_eq!(g.parse_subset("ca").unwrap(), SubsetMask(0b101));
        assert!(g.parse_subset("z").is_err());

        let long = GroundSet::with_labels(["x1", "x2"]).unwrap();
        assert_eq!(long.format_subset(SubsetMask(0b11)), "x1,x2");
        assert_eq!(long.parse_subset("x2").unwrap(), SubsetMask(0b10));
    }

    #[test]
    fn ground_set_limits() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(17).is_err());
        assert_eq!(GroundSet::new(16).unwrap().full(), SubsetMask(0xffff));
        assert!(matches!(GroundSet::with_labels(["a", "a"]), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn mask_set_membership() {
        let mut s = MaskSet::new(7);
        s.insert(SubsetMask(100));
        assert!(s.contains(SubsetMask(100)));
        assert!(!s.contains(SubsetMask(99)));
        s.remove(SubsetMask(100));
        assert!(!s.contains(SubsetMask(100)));
    }
}
