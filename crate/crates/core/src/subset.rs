//! Subsets of a ground set of at most 20 elements, stored as bitmasks.

/// A subset of `{0, 1, ..., n-1}` for some ground set of size `n <= 20`.
/// Bit `i` is set iff element `i` is in the subset. Which labels the indices
/// refer to is the owning matroid's business.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

pub const EMPTY: Subset = Subset(0);

impl Subset {
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= 32);
        Subset(if n == 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn card(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn inter(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices of the elements, ascending.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, including the empty set and `self` itself.
    pub fn submasks(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut cur = mask;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Subset(cur);
            if cur == 0 {
                done = true;
            } else {
                cur = (cur - 1) & mask;
            }
            Some(out)
        })
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Subset {
        let mut s = 0u32;
        for i in indices {
            s |= 1 << i;
        }
        Subset(s)
    }
}

impl std::fmt::Debug for Subset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
