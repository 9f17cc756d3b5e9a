use std::cmp::Ordering;
use std::fmt;

/// Fixed-length bitset over the edge ids of a ground graph.
///
/// Ordering is canonical: by cardinality first, then lexicographically on the
/// ascending list of set edge ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    len: usize,
    words: Box<[u64]>,
}

impl EdgeSet {
    pub fn empty(len: usize) -> Self {
        EdgeSet {
            len,
            words: vec![0; len.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = EdgeSet::empty(len);
        for id in 0..len {
            set.insert(id);
        }
        set
    }

    pub fn from_ids(len: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut set = EdgeSet::empty(len);
        for id in ids {
            set.insert(id);
        }
        set
    }

    /// Builds a set from the low `len` bits of `mask` (`len <= 64`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64, "mask form supports at most 64 edges");
        let mut set = EdgeSet::empty(len);
        if len > 0 {
            let keep = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
            set.words[0] = mask & keep;
        }
        set
    }

    /// Low 64 bits as a mask; only meaningful when `capacity() <= 64`.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    /// Number of addressable edge ids.
    pub fn capacity(&self) -> usize {
        self.len
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, id: usize) -> bool {
        id < self.len && self.words[id / 64] >> (id % 64) & 1 == 1
    }

    pub fn insert(&mut self, id: usize) {
        assert!(id < self.len, "edge id {id} out of range {}", self.len);
        self.words[id / 64] |= 1 << (id % 64);
    }

    pub fn remove(&mut self, id: usize) {
        assert!(id < self.len, "edge id {id} out of range {}", self.len);
        self.words[id / 64] &= !(1 << (id % 64));
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        debug_assert_eq!(self.len, other.len);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
        out
    }

    /// Ascending iterator over the set edge ids.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    /// Lexicographic comparison of the ascending id lists.
    pub fn lex_cmp(&self, other: &EdgeSet) -> Ordering {
        debug_assert_eq!(self.len, other.len);
        for (wi, (&a, &b)) in self.words.iter().zip(other.words.iter()).enumerate() {
            let diff = a ^ b;
            if diff == 0 {
                continue;
            }
            let bit = diff.trailing_zeros();
            // The set holding the lowest differing id is smaller unless the
            // other set has nothing after the shared prefix.
            let self_holds = a >> bit & 1 == 1;
            let (holder_is_self, rest) = if self_holds { (true, b) } else { (false, a) };
            let rest_after = (rest >> bit) != 0 || self.words_after(other, wi, !holder_is_self);
            return match (holder_is_self, rest_after) {
                (true, true) => Ordering::Less,
                (true, false) => Ordering::Greater,
                (false, true) => Ordering::Greater,
                (false, false) => Ordering::Less,
            };
        }
        Ordering::Equal
    }

    fn words_after(&self, other: &EdgeSet, wi: usize, in_self: bool) -> bool {
        let words = if in_self { &self.words } else { &other.words };
        words[wi + 1..].iter().any(|&w| w != 0)
    }
}

impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let mut s = EdgeSet::empty(130);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert!(s.contains(64));
        s.remove(64);
        assert!(!s.contains(64));
        assert!(!s.contains(500));
    }

    #[test]
    fn lex_examples() {
        let a = EdgeSet::from_ids(8, [0, 1]);
        let b = EdgeSet::from_ids(8, [0, 2]);
        let c = EdgeSet::from_ids(8, [0]);
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(c.lex_cmp(&a), Ordering::Less);
        assert_eq!(b.lex_cmp(&c), Ordering::Greater);
        // canonical: smaller sets first
        assert!(c < a && a < b);
    }

    fn ids() -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::btree_set(0usize..150, 0..12).prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #[test]
        fn lex_matches_sorted_vectors(a in ids(), b in ids()) {
            let sa = EdgeSet::from_ids(150, a.iter().copied());
            let sb = EdgeSet::from_ids(150, b.iter().copied());
            prop_assert_eq!(sa.lex_cmp(&sb), a.cmp(&b));
        }

        #[test]
        fn union_laws(a in ids(), b in ids(), c in ids()) {
            let (a, b, c) = (
                EdgeSet::from_ids(150, a),
                EdgeSet::from_ids(150, b),
                EdgeSet::from_ids(150, c),
            );
            prop_assert_eq!(a.union(&b), b.union(&a));
            prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
            prop_assert_eq!(a.union(&a), a.clone());
            prop_assert!(a.is_subset(&a.union(&b)));
        }
    }
}
