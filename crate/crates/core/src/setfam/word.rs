use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use super::mask::GroundSet;
use crate::error::{Error, Result};

/// A permutation of the ground set: `order[j]` is the element risen at step `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    order: Vec<usize>,
}

impl Word {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &i in &order {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotPermutation);
            }
        }
        Ok(Word { order })
    }

    /// `a_1 a_2 ... a_n`.
    pub fn identity(n: usize) -> Self {
        Word { order: (0..n).collect() }
    }

    /// Parses labels such as `acb` or `x1,x3,x2`.
    pub fn parse(ground: &GroundSet, text: &str) -> Result<Self> {
        let order = ground.parse_sequence(text)?;
        if order.len() != ground.n() {
            return Err(Error::WordLength { got: order.len(), expected: ground.n() });
        }
        Word::new(order)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        Word { order }
    }

    /// Every permutation of `0..n`, in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Word> {
        (0..n).permutations(n).map(|order| Word { order })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    #[inline]
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The element risen at 1-based step `step`.
    #[inline]
    pub fn at_step(&self, step: usize) -> usize {
        self.order[step - 1]
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::WordLength { got: self.len(), expected: n })
        }
    }

    pub fn format(&self, ground: &GroundSet) -> String {
        ground.format_sequence(&self.order)
    }
}

/// `n!`, saturating.
pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).fold(1u64, |acc, k| acc.saturating_mul(k))
}
