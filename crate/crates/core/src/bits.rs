//! Bitmask helpers for vertex subsets.
//!
//! Vertex `v` (1-based) lives at bit `v - 1`.

/// Mask of a 1-based vertex list.
pub fn mask_of(vertices: &[u32]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | 1u64 << (v - 1))
}

/// Sorted 1-based vertices of a mask.
pub fn vertices_of(mask: u64) -> Vec<u32> {
    iter_bits(mask).map(|b| b + 1).collect()
}

/// Bit positions (0-based) of a mask, ascending.
pub fn iter_bits(mut mask: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros();
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Mask with the lowest `n` bits set.
pub fn low_bits(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Packs the bits of `mask` selected by `within` into the low `within.count_ones()` bits,
/// preserving their order.
pub fn compress(mask: u64, within: u64) -> u64 {
    let mut out = 0;
    for (i, b) in iter_bits(within).enumerate() {
        if mask >> b & 1 == 1 {
            out |= 1 << i;
        }
    }
    out
}

/// Inverse of [`compress`]: spreads the low bits of `packed` onto the set bits of `within`.
pub fn expand(packed: u64, within: u64) -> u64 {
    let mut out = 0;
    for (i, b) in iter_bits(within).enumerate() {
        if packed >> i & 1 == 1 {
            out |= 1 << b;
        }
    }
    out
}

/// All `k`-subsets of the low `n` bits in increasing numeric order (Gosper's hack).
/// Requires `n < 64`.
pub fn k_subsets(n: u32, k: u32) -> impl Iterator<Item = u64> {
    debug_assert!(n < 64);
    let limit = 1u64 << n;
    let mut next = (k <= n).then(|| low_bits(k));
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < limit).then_some(nxt)
        };
        Some(cur)
    })
}

/// All `k`-subsets of an arbitrary mask.
pub fn k_subsets_of(mask: u64, k: u32) -> impl Iterator<Item = u64> {
    k_subsets(mask.count_ones(), k).map(move |s| expand(s, mask))
}

/// Every subset of `mask` obtained by removing exactly one element.
pub fn facets_of(mask: u64) -> impl Iterator<Item = u64> {
    iter_bits(mask).map(move |b| mask & !(1 << b))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Colexicographic rank of a subset of the low bits among subsets of the same size.
pub fn colex_rank(mask: u64) -> u64 {
    iter_bits(mask)
        .enumerate()
        .map(|(i, b)| binomial(b as u64, i as u64 + 1))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gosper_enumerates_all_subsets() {
        for n in 0..8 {
            for k in 0..=n + 1 {
                let subs: Vec<_> = k_subsets(n, k).collect();
                assert_eq!(subs.len() as u64, binomial(n as u64, k as u64), "n={n} k={k}");
                assert!(subs.windows(2).all(|w| w[0] < w[1]));
                assert!(subs.iter().all(|s| s.count_ones() == k && *s < 1 << n));
            }
        }
    }

    #[test]
    fn compress_expand_roundtrip() {
        let within = 0b1011_0110;
        for packed in 0..16 {
            assert_eq!(compress(expand(packed, within), within), packed);
        }
        assert_eq!(compress(0b0010_0100, within), 0b1010);
    }

    #[test]
    fn colex_rank_is_a_bijection() {
        for k in 1..5 {
            let mut ranks: Vec<_> = k_subsets(7, k).map(colex_rank).collect();
            ranks.sort_unstable();
            assert_eq!(ranks, (0..binomial(7, k as u64)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn vertex_masks() {
        assert_eq!(mask_of(&[1, 3]), 0b101);
        assert_eq!(vertices_of(0b101), vec![1, 3]);
    }
}
