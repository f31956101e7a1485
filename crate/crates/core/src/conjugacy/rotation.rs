//! Linear-time rotation test via Knuth-Morris-Pratt search.

/// First position of `pattern` in `text`, in `O(|pattern| + |text|)`.
pub fn find<T: Eq>(pattern: &[T], text: &[T]) -> Option<usize> {
    if pattern.is_empty() {
        return Some(0);
    }
    let mut fail = vec![0usize; pattern.len()];
    let mut k = 0;
    for i in 1..pattern.len() {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut k = 0;
    for (i, t) in text.iter().enumerate() {
        while k > 0 && *t != pattern[k] {
            k = fail[k - 1];
        }
        if *t == pattern[k] {
            k += 1;
        }
        if k == pattern.len() {
            return Some(i + 1 - k);
        }
    }
    None
}

/// The least `k` with `v = u[k..] u[..k]`, if `v` is a rotation of `u`.
pub fn rotation_offset<T: Eq + Clone>(u: &[T], v: &[T]) -> Option<usize> {
    if u.len() != v.len() {
        return None;
    }
    let n = u.len();
    if n == 0 {
        return Some(0);
    }
    // v occurs in uu at k exactly when v = u[k..] u[..k].
    let mut uu = Vec::with_capacity(2 * n - 1);
    uu.extend_from_slice(u);
    uu.extend_from_slice(&u[..n - 1]);
    find(v, &uu)
}

/// `u ∼p v` in the free monoid: `v` is a cyclic rotation of `u`.
pub fn free_conj_p<T: Eq + Clone>(u: &[T], v: &[T]) -> bool {
    rotation_offset(u, v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rotate<T: Clone>(u: &[T], k: usize) -> Vec<T> {
        u[k..].iter().chain(&u[..k]).cloned().collect()
    }

    #[test]
    fn examples() {
        assert!(free_conj_p(b"abc", b"cab"));
        assert!(free_conj_p(b"ab", b"ab"));
        assert!(!free_conj_p(b"aab", b"abb"));
        assert!(!free_conj_p(b"ab", b"abc"));
        assert!(free_conj_p::<u8>(b"", b""));
        assert_eq!(rotation_offset(b"abc", b"bca"), Some(1));
        assert_eq!(rotation_offset(b"abab", b"baba"), Some(1));
        assert_eq!(find(b"aab", b"aaab"), Some(1));
        assert_eq!(find(b"abc", b"ababd"), None);
    }

    #[test]
    fn exhaustive_rotations() {
        // All binary words up to length 8.
        for n in 0..=8usize {
            let words: Vec<Vec<u8>> = (0..1u32 << n)
                .map(|m| (0..n).map(|i| (m >> i & 1) as u8).collect())
                .collect();
            for u in &words {
                for v in &words {
                    let brute = u == v || (0..n).any(|k| rotate(u, k) == *v);
                    assert_eq!(free_conj_p(u, v), brute, "{u:?} {v:?}");
                    if let Some(k) = rotation_offset(u, v) {
                        assert_eq!(rotate(u, k), *v);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn find_matches_naive(p in prop::collection::vec(0u8..3, 0..5),
                              t in prop::collection::vec(0u8..3, 0..20)) {
            let naive = if p.is_empty() {
                Some(0)
            } else {
                t.windows(p.len()).position(|w| w == p.as_slice())
            };
            prop_assert_eq!(find(&p, &t), naive);
        }
    }
}
