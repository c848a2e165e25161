use std::fmt;

/// Strictly increasing list of 0-based coordinate indices labelling a basis
/// element `dx^I` or `∂_I`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn single(i: usize) -> Self {
        MultiIndex(vec![i])
    }

    /// Accepts an already strictly increasing list.
    pub fn from_sorted(indices: Vec<usize>) -> Option<Self> {
        if indices.windows(2).all(|w| w[0] < w[1]) {
            Some(MultiIndex(indices))
        } else {
            None
        }
    }

    /// Sorts an arbitrary index list, returning the permutation sign
    /// (`true` when odd), or `None` when an index repeats.
    pub fn sort_signed(mut indices: Vec<usize>) -> Option<(bool, Self)> {
        let mut odd = false;
        // insertion sort: lists are short and we need the swap parity
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((odd, MultiIndex(indices)))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Concatenation `self · other` sorted: `None` if they overlap, otherwise
    /// the merged index with the shuffle sign (`true` when odd).
    pub fn merge(&self, other: &MultiIndex) -> Option<(bool, MultiIndex)> {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let mut inversions = 0usize;
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // b[j] jumps over every remaining element of a
                    inversions += a.len() - i;
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((inversions % 2 == 1, MultiIndex(out)))
    }

    /// `self \ sub` when `sub ⊆ self`.
    pub fn difference(&self, sub: &MultiIndex) -> Option<MultiIndex> {
        if !sub.0.iter().all(|&i| self.contains(i)) {
            return None;
        }
        Some(MultiIndex(
            self.0.iter().copied().filter(|&i| !sub.contains(i)).collect(),
        ))
    }

    /// All strictly increasing index lists of length `k` drawn from `0..m`.
    pub fn all(m: usize, k: usize) -> Vec<MultiIndex> {
        fn go(acc: &mut Vec<MultiIndex>, cur: &mut Vec<usize>, start: usize, m: usize, k: usize) {
            if cur.len() == k {
                acc.push(MultiIndex(cur.clone()));
                return;
            }
            for i in start..m {
                cur.push(i);
                go(acc, cur, i + 1, m, k);
                cur.pop();
            }
        }
        let mut acc = Vec::new();
        if k <= m {
            go(&mut acc, &mut Vec::new(), 0, m, k);
        }
        acc
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::from_sorted(v.to_vec()).unwrap()
    }

    #[test]
    fn merge_sign_matches_inversion_count() {
        assert_eq!(mi(&[0]).merge(&mi(&[1])), Some((false, mi(&[0, 1]))));
        assert_eq!(mi(&[1]).merge(&mi(&[0])), Some((true, mi(&[0, 1]))));
        assert_eq!(mi(&[1, 2]).merge(&mi(&[0])), Some((false, mi(&[0, 1, 2]))));
        assert_eq!(mi(&[0, 2]).merge(&mi(&[2])), None);
        for (a, b) in [(vec![3, 1, 0, 2], false), (vec![1, 0, 2], true), (vec![2, 0, 1], false)] {
            let (odd, _) = MultiIndex::sort_signed(a).unwrap();
            assert_eq!(odd, b);
        }
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(MultiIndex::all(4, 2).len(), 6);
        assert_eq!(MultiIndex::all(3, 0), vec![MultiIndex::empty()]);
        assert!(MultiIndex::all(2, 3).is_empty());
    }
}
