//! Integer partitions, the index set for symmetric-function bases.
//!
//! A partition is stored with its parts in descending order. Partitions
//! are ordered first by weight, then by comparing the descending part
//! vectors lexicographically, so `[1,1] < [2]` and `[2,2] < [3,1]`.
//! This is the order used for canonical printing of polynomials indexed
//! by partitions.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// The empty partition of weight 0.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts in any order. Panics on a zero part.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        assert!(
            parts.iter().all(|&p| p > 0),
            "partition parts must be positive"
        );
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Single-part partition `[n]`, `n >= 1`.
    pub fn single(n: u32) -> Self {
        assert!(n > 0);
        Partition(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Union of parts, resorted: the index of a product `p_mu * p_nu`.
    pub fn concat(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Multiplies every part by `k`: the index of `p_mu` after
    /// the plethysm substitution `p_j -> p_{kj}`.
    pub fn scaled(&self, k: u32) -> Partition {
        assert!(k > 0);
        Partition(self.0.iter().map(|&p| p * k).collect())
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// All partitions of `n`, largest part first within each partition.
/// `partitions_of(0)` is the singleton list holding the empty partition.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    let mut part = max_part.min(remaining);
    while part >= 1 {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
        part -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_all_partitions() {
        assert_eq!(partitions_of(0).len(), 1);
        assert_eq!(partitions_of(1).len(), 1);
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(6).len(), 11);
        assert_eq!(partitions_of(10).len(), 42);
    }

    #[test]
    fn parts_are_descending_and_sum_to_weight() {
        for p in partitions_of(7) {
            assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
            assert_eq!(p.weight(), 7);
        }
    }

    #[test]
    fn order_is_weight_then_lex_on_descending_parts() {
        let p11 = Partition::from_parts(vec![1, 1]);
        let p2 = Partition::from_parts(vec![2]);
        assert!(p11 < p2);
        let p22 = Partition::from_parts(vec![2, 2]);
        let p31 = Partition::from_parts(vec![3, 1]);
        assert!(p22 < p31);
        assert!(p2 < p22);
    }

    #[test]
    fn concat_and_scale() {
        let a = Partition::from_parts(vec![3, 1]);
        let b = Partition::from_parts(vec![2]);
        assert_eq!(a.concat(&b), Partition::from_parts(vec![3, 2, 1]));
        assert_eq!(a.scaled(2), Partition::from_parts(vec![6, 2]));
    }
}
