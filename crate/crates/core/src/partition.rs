use std::fmt;

/// Integer partition with parts in nonincreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds the partition whose conjugate is `conj` (must be nonincreasing).
    pub fn from_conjugate(conj: &[usize]) -> Self {
        debug_assert!(conj.windows(2).all(|w| w[0] >= w[1]));
        Self {
            parts: conjugate_of(conj),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|lambda|`, the sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `lambda'_i = #{j : lambda_j >= i}`.
    pub fn conjugate(&self) -> Vec<usize> {
        conjugate_of(&self.parts)
    }

    /// Whether `self` fits inside `outer` as Young diagrams.
    pub fn is_contained_in(&self, outer: &Partition) -> bool {
        self.len() <= outer.len() && self.parts.iter().zip(&outer.parts).all(|(a, b)| a <= b)
    }
}

fn conjugate_of(parts: &[usize]) -> Vec<usize> {
    let largest = parts.first().copied().unwrap_or(0);
    (1..=largest)
        .map(|i| parts.iter().take_while(|&&p| p >= i).count())
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn conjugate_examples() {
        let p = Partition::new(vec![1, 2, 4, 0]);
        assert_eq!(p.parts(), &[4, 2, 1]);
        assert_eq!(p.conjugate(), vec![3, 2, 1, 1]);
        assert!(Partition::new(vec![2]).is_contained_in(&p));
        assert!(!Partition::new(vec![1, 1, 1, 1]).is_contained_in(&p));
        assert_eq!(Partition::empty().conjugate(), Vec::<usize>::new());
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(parts in prop::collection::vec(1usize..9, 0..9)) {
            let p = Partition::new(parts);
            let c = p.conjugate();
            prop_assert_eq!(c.iter().sum::<usize>(), p.size());
            prop_assert_eq!(Partition::from_conjugate(&c), p);
        }
    }
}
