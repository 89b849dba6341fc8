//! Fixed-size subsets of `{0, …, v-1}` in colexicographic order.

use crate::numtheory::binomial;

/// Colex rank of a sorted subset: `Σ C(s_i, i+1)`.
pub fn colex_rank(subset: &[usize]) -> u128 {
    subset
        .iter()
        .enumerate()
        .map(|(i, &s)| binomial(s as u64, i as u64 + 1))
        .sum()
}

/// The subset of size `t` with the given colex rank.
pub fn colex_unrank(mut rank: u128, t: usize) -> Vec<usize> {
    let mut out = vec![0; t];
    for i in (0..t).rev() {
        // largest s with C(s, i+1) <= rank
        let mut s = i;
        while binomial(s as u64 + 1, i as u64 + 1) <= rank {
            s += 1;
        }
        out[i] = s;
        rank -= binomial(s as u64, i as u64 + 1);
    }
    out
}

/// Advances a sorted subset to its colex successor within `{0, …, v-1}`; `false` at the end.
pub fn colex_next(subset: &mut [usize], v: usize) -> bool {
    let t = subset.len();
    for i in 0..t {
        let limit = if i + 1 < t { subset[i + 1] } else { v };
        if subset[i] + 1 < limit {
            subset[i] += 1;
            for (j, s) in subset.iter_mut().enumerate().take(i) {
                *s = j;
            }
            return true;
        }
    }
    false
}

/// All `t`-subsets of `{0, …, v-1}` with largest element `top`, in colex order.
pub fn with_largest(top: usize, t: usize) -> Vec<Vec<usize>> {
    if t == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..t - 1).collect();
    if t - 1 > top {
        return out;
    }
    loop {
        let mut s = cur.clone();
        s.push(top);
        out.push(s);
        if t == 1 || !colex_next(&mut cur, top) {
            break;
        }
    }
    out
}

/// Bitmask of a subset of `{0, …, 127}`.
pub fn mask(subset: &[usize]) -> u128 {
    subset.iter().fold(0u128, |m, &i| m | (1u128 << i))
}

/// Sorted indices of the set bits.
pub fn unmask(mut m: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn enumerates_all_in_colex_order() {
        let (v, t) = (7, 3);
        let mut cur: Vec<usize> = (0..t).collect();
        let mut count = 0u128;
        loop {
            assert_eq!(colex_rank(&cur), count);
            assert_eq!(colex_unrank(count, t), cur);
            count += 1;
            if !colex_next(&mut cur, v) {
                break;
            }
        }
        assert_eq!(count, binomial(7, 3));
        let by_top: usize = (0..v).map(|top| with_largest(top, t).len()).sum();
        assert_eq!(by_top as u128, count);
        assert_eq!(with_largest(4, 3)[0], vec![0, 1, 4]);
    }

    proptest! {
        #[test]
        fn mask_roundtrip(bits in any::<u128>()) {
            prop_assert_eq!(mask(&unmask(bits)), bits);
        }

        #[test]
        fn rank_roundtrip(rank in 0u128..binomial(26, 4)) {
            let s = colex_unrank(rank, 4);
            prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(s[3] < 26);
            prop_assert_eq!(colex_rank(&s), rank);
        }
    }
}
