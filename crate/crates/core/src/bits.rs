//! Small helpers for label sets stored as `u64` bitmasks (bit `l` = label `l`).

use crate::Label;

pub(crate) fn mask_of(labels: &[Label]) -> u64 {
    labels.iter().fold(0, |m, &l| m | (1u64 << l))
}

pub(crate) fn labels_of(mask: u64) -> Vec<Label> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as Label);
        m &= m - 1;
    }
    out
}

pub(crate) fn size(mask: u64) -> usize {
    mask.count_ones() as usize
}

/// Labels `1..=n`.
pub(crate) fn ground(n: usize) -> u64 {
    ((1u64 << n) - 1) << 1
}

/// Iterates over all submasks of `mask`, including 0 and `mask`.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}
