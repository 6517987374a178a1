//! Lehmer-code ranking of permutations of `0..n`, `n <= 20`.
//!
//! Rank order is lexicographic order, so stepping with
//! [`next_permutation`] from the identity visits ranks `0, 1, 2, ...`.

pub const MAX_N: usize = 20;

pub fn factorial(n: usize) -> u64 {
    assert!(n <= MAX_N, "{n}! overflows u64");
    (1..=n as u64).product()
}

pub fn rank(perm: &[u8]) -> u64 {
    let n = perm.len();
    let mut used: u32 = 0;
    let mut r: u64 = 0;
    for (i, &p) in perm.iter().enumerate() {
        let smaller_used = (used & ((1u32 << p) - 1)).count_ones() as u64;
        let digit = p as u64 - smaller_used;
        r = r * (n - i) as u64 + digit;
        used |= 1 << p;
    }
    r
}

pub fn unrank(mut r: u64, out: &mut [u8]) {
    let n = out.len();
    let mut digits = [0u8; MAX_N];
    for i in (0..n).rev() {
        let base = (n - i) as u64;
        digits[i] = (r % base) as u8;
        r /= base;
    }
    let mut free: u32 = (1u32 << n) - 1;
    for i in 0..n {
        // digits[i]-th smallest unused value
        let mut m = free;
        for _ in 0..digits[i] {
            m &= m - 1;
        }
        let v = m.trailing_zeros() as u8;
        out[i] = v;
        free &= !(1 << v);
    }
}

/// Advances to the lexicographic successor; returns false (leaving the
/// slice sorted) after the last permutation.
pub fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Parity (0 even, 1 odd) of the number of inversions.
pub fn inversion_parity(perm: &[u8]) -> u8 {
    let mut seen = 0u32;
    let mut inv = 0u32;
    for &p in perm.iter().rev() {
        inv += (seen & ((1u32 << p) - 1)).count_ones();
        seen |= 1 << p;
    }
    (inv & 1) as u8
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lexicographic_order_matches_rank() {
        let mut p: Vec<u8> = (0..6).collect();
        let mut expected = 0;
        loop {
            assert_eq!(rank(&p), expected);
            let mut q = vec![0u8; 6];
            unrank(expected, &mut q);
            assert_eq!(q, p);
            expected += 1;
            if !next_permutation(&mut p) {
                break;
            }
        }
        assert_eq!(expected, factorial(6));
    }

    #[test]
    fn small_parities() {
        assert_eq!(inversion_parity(&[0, 1, 2]), 0);
        assert_eq!(inversion_parity(&[1, 0, 2]), 1);
        assert_eq!(inversion_parity(&[2, 1, 0]), 1);
        assert_eq!(inversion_parity(&[1, 2, 0]), 0);
    }

    proptest! {
        #[test]
        fn rank_unrank_inverse(n in 1usize..=12, seed in any::<u64>()) {
            let r = seed % factorial(n);
            let mut p = vec![0u8; n];
            unrank(r, &mut p);
            prop_assert_eq!(rank(&p), r);
        }
    }
}
