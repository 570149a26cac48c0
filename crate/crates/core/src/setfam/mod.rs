//! Ground sets, subset masks, set families and their order-theoretic primitives.

mod family;
mod format;
mod mask;
mod word;

pub use family::{CoverPair, SetFamily};
pub use format::{parse_fam, write_fam};
pub use mask::{GroundSet, MaskSet, SubsetMask, MAX_N};
pub use word::{factorial, Word};

/// `C(n, k)` as `u64`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k as u64).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}
