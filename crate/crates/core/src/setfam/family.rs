use serde::Serialize;

use super::mask::{GroundSet, MaskSet, SubsetMask};
use crate::error::{Error, Result};

/// A duplicate-free collection of subsets kept in ascending mask order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<SubsetMask>,
}

/// A pair `lower ⋖ upper` of members with nothing from the family strictly between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CoverPair {
    pub lower: SubsetMask,
    pub upper: SubsetMask,
}

impl SetFamily {
    /// Builds a family, sorting and deduplicating. Fails if a mask is too wide for `ground`.
    pub fn new(ground: GroundSet, members: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        let mut members: Vec<SubsetMask> = members.into_iter().collect();
        for &m in &members {
            ground.check(m)?;
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { ground, members })
    }

    /// Builds a family from masks already known to be in range.
    pub(crate) fn from_masks(ground: &GroundSet, members: impl IntoIterator<Item = SubsetMask>) -> Self {
        let mut members: Vec<SubsetMask> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        debug_assert!(members.iter().all(|m| m.is_subset_of(ground.full())));
        SetFamily { ground: ground.clone(), members }
    }

    pub fn empty(ground: GroundSet) -> Self {
        SetFamily { ground, members: Vec::new() }
    }

    /// Parses subsets written with the ground set's labels, e.g. `["a", "abc"]`.
    pub fn parse(ground: GroundSet, subsets: &[&str]) -> Result<Self> {
        let masks = subsets.iter().map(|s| ground.parse_subset(s)).collect::<Result<Vec<_>>>()?;
        SetFamily::new(ground, masks)
    }

    /// The whole power set `2^X`.
    pub fn power_set(ground: GroundSet) -> Self {
        let members = ground.all_masks().collect();
        SetFamily { ground, members }
    }

    /// All `k`-subsets of the ground set.
    pub fn level(ground: GroundSet, k: usize) -> Self {
        let members = ground.all_masks().filter(|m| m.len() == k).collect();
        SetFamily { ground, members }
    }

    #[inline]
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.ground.n()
    }

    #[inline]
    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members.iter().copied()
    }

    #[inline]
    pub fn contains(&self, m: SubsetMask) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    pub fn index_of(&self, m: SubsetMask) -> Option<usize> {
        self.members.binary_search(&m).ok()
    }

    pub fn require_member(&self, m: SubsetMask) -> Result<usize> {
        self.index_of(m).ok_or_else(|| Error::NotMember(self.ground.format_subset(m)))
    }

    pub fn mask_set(&self) -> MaskSet {
        MaskSet::from_masks(self.n(), self.iter())
    }

    /// A family on the same ground set.
    pub fn with_members(&self, members: impl IntoIterator<Item = SubsetMask>) -> Self {
        SetFamily::from_masks(&self.ground, members)
    }

    pub fn filter(&self, mut keep: impl FnMut(SubsetMask) -> bool) -> Self {
        SetFamily { ground: self.ground.clone(), members: self.iter().filter(|&m| keep(m)).collect() }
    }

    /// `F_a`: members containing element `a`.
    pub fn containing(&self, a: usize) -> Self {
        self.filter(|m| m.contains(a))
    }

    /// `F_ā`: members avoiding element `a`.
    pub fn avoiding(&self, a: usize) -> Self {
        self.filter(|m| !m.contains(a))
    }

    pub fn without(&self, m: SubsetMask) -> Self {
        self.filter(|x| x != m)
    }

    pub fn union_all(&self) -> SubsetMask {
        self.iter().fold(SubsetMask::EMPTY, SubsetMask::union)
    }

    pub fn length_sum(&self) -> usize {
        self.iter().map(SubsetMask::len).sum()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.iter().all(|m| other.contains(m))
    }

    pub fn union(&self, other: &SetFamily) -> Self {
        self.with_members(self.iter().chain(other.iter()))
    }

    pub fn minus(&self, other: &SetFamily) -> Self {
        self.filter(|m| !other.contains(m))
    }

    pub fn format(&self) -> Vec<String> {
        self.iter().map(|m| self.ground.format_subset(m)).collect()
    }

    /// Smallest union-closed family containing the members.
    pub fn close_under_union(&self) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut seen = self.mask_set();
        let mut all = self.members.clone();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &x in &frontier {
                for &y in &self.members {
                    let u = x.union(y);
                    if !seen.contains(u) {
                        seen.insert(u);
                        next.push(u);
                    }
                }
            }
            all.extend_from_slice(&next);
            frontier = next;
        }
        Ok(self.with_members(all))
    }

    pub fn is_union_closed(&self) -> bool {
        let ms = &self.members;
        for (i, &x) in ms.iter().enumerate() {
            for &y in &ms[i + 1..] {
                if !self.contains(x.union(y)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn require_union_closed(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyFamily)
        } else if self.is_union_closed() {
            Ok(())
        } else {
            Err(Error::NotUnionClosed)
        }
    }

    pub fn is_upward_closed(&self) -> bool {
        let full = self.ground.full();
        self.iter().all(|m| full.difference(m).elements().all(|i| self.contains(m.with(i))))
    }

    pub fn is_antichain(&self) -> bool {
        let ms = &self.members;
        ms.iter().enumerate().all(|(i, &x)| ms[i + 1..].iter().all(|&y| !x.comparable(y)))
    }

    /// Members with no strict subset in the family.
    pub fn minimal(&self) -> Self {
        self.filter(|m| !self.iter().any(|x| x.is_strict_subset_of(m)))
    }

    /// Members with no strict superset in the family.
    pub fn maximal(&self) -> Self {
        self.filter(|m| !self.iter().any(|x| m.is_strict_subset_of(x)))
    }

    /// `(min(F), max(F))`.
    pub fn extremes(&self) -> Result<(Self, Self)> {
        if self.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok((self.minimal(), self.maximal()))
    }

    /// Every mask of `2^X` containing some member.
    pub fn upset(&self) -> Self {
        let mut mark = MaskSet::new(self.n());
        let mut out = Vec::new();
        for m in self.ground.all_masks() {
            let hit = self.contains(m) || m.elements().any(|i| mark.contains(m.without(i)));
            if hit {
                mark.insert(m);
                out.push(m);
            }
        }
        self.with_members(out)
    }

    /// The principal ideal `F[S]`: members containing some member of `S`.
    pub fn ideal(&self, s: &SetFamily) -> Self {
        self.filter(|m| s.iter().any(|x| x.is_subset_of(m)))
    }

    /// Members that are not the union of two members strictly below them.
    pub fn join_irreducibles(&self) -> Result<Self> {
        self.require_union_closed()?;
        Ok(self.filter(|g| {
            let below: Vec<SubsetMask> = self.iter().filter(|h| h.is_strict_subset_of(g)).collect();
            !below.iter().enumerate().any(|(i, &h)| below[i..].iter().any(|&t| h.union(t) == g))
        }))
    }

    /// True iff no member is a union of other members.
    pub fn is_union_independent(&self) -> bool {
        // The empty set is never a union of other members: there is nothing strictly below it.
        self.iter().all(|z| {
            z.is_empty()
                || self.iter().filter(|x| x.is_strict_subset_of(z)).fold(SubsetMask::EMPTY, SubsetMask::union) != z
        })
    }

    /// All pairs `f ⋖ g` inside the family.
    pub fn cover_pairs(&self) -> Vec<CoverPair> {
        let mut out = Vec::new();
        for f in self.iter() {
            for g in self.iter() {
                if f.is_strict_subset_of(g)
                    && !self.iter().any(|h| f.is_strict_subset_of(h) && h.is_strict_subset_of(g))
                {
                    out.push(CoverPair { lower: f, upper: g });
                }
            }
        }
        out
    }

    /// Members covering `g` within the family.
    pub fn upper_covers(&self, g: SubsetMask) -> Vec<SubsetMask> {
        self.iter()
            .filter(|&h| {
                g.is_strict_subset_of(h) && !self.iter().any(|x| g.is_strict_subset_of(x) && x.is_strict_subset_of(h))
            })
            .collect()
    }

    /// Drops `∅` and shrinks the ground set to `⋃F`, relabelling the surviving elements in order.
    pub fn normalized(&self) -> Result<Self> {
        let support = self.union_all();
        if support.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let keep: Vec<usize> = support.elements().collect();
        let ground = GroundSet::with_labels(keep.iter().map(|&i| self.ground.label(i).to_string()))?;
        let squeeze = |m: SubsetMask| {
            keep.iter().enumerate().filter(|(_, &i)| m.contains(i)).fold(SubsetMask::EMPTY, |acc, (j, _)| acc.with(j))
        };
        Ok(SetFamily::from_masks(&ground, self.iter().filter(|m| !m.is_empty()).map(squeeze)))
    }
}
