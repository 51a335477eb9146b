//! Integer partitions, restricted to one of four part classes.
//!
//! Every class admits the part `1`, so any remainder can always be completed
//! with ones. The enumerator relies on this: it walks partitions in
//! reverse-lexicographic order (largest first part first) directly over the
//! class's allowed parts, without filtering ordinary partitions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Which parts a partition may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionClass {
    /// Any positive integer.
    Ordinary,
    /// Odd parts only.
    Odd,
    /// Powers of two.
    Binary,
    /// Powers of three.
    Ternary,
}

impl PartitionClass {
    pub const ALL: [PartitionClass; 4] = [
        PartitionClass::Ordinary,
        PartitionClass::Odd,
        PartitionClass::Binary,
        PartitionClass::Ternary,
    ];

    /// Whether `part` is an allowed part of this class.
    pub fn allows(self, part: usize) -> bool {
        match self {
            _ if part == 0 => false,
            PartitionClass::Ordinary => true,
            PartitionClass::Odd => part % 2 == 1,
            PartitionClass::Binary => part.is_power_of_two(),
            PartitionClass::Ternary => {
                let mut p = part;
                while p % 3 == 0 {
                    p /= 3;
                }
                p == 1
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PartitionClass::Ordinary => "ordinary",
            PartitionClass::Odd => "odd",
            PartitionClass::Binary => "binary",
            PartitionClass::Ternary => "ternary",
        }
    }
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown partition class `{0}` (expected ordinary, odd, binary or ternary)")]
pub struct UnknownClass(String);

impl FromStr for PartitionClass {
    type Err = UnknownClass;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ordinary" => Ok(PartitionClass::Ordinary),
            "odd" => Ok(PartitionClass::Odd),
            "binary" => Ok(PartitionClass::Binary),
            "ternary" => Ok(PartitionClass::Ternary),
            _ => Err(UnknownClass(s.to_string())),
        }
    }
}

/// The class-allowed parts `<= n`, ascending.
pub fn allowed_parts(class: PartitionClass, n: usize) -> Vec<usize> {
    match class {
        PartitionClass::Ordinary => (1..=n).collect(),
        PartitionClass::Odd => (1..=n).step_by(2).collect(),
        PartitionClass::Binary => geometric(2, n),
        PartitionClass::Ternary => geometric(3, n),
    }
}

fn geometric(base: usize, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 1usize;
    while p <= n {
        out.push(p);
        match p.checked_mul(base) {
            Some(next) => p = next,
            None => break,
        }
    }
    out
}

/// A nonincreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("partition parts must be nonincreasing")]
    NotSorted,
}

impl Partition {
    /// The empty partition, the unique partition of zero.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validates that `parts` is nonincreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotSorted);
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer being partitioned.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn multiplicities(&self) -> MultiplicityMap {
        multiplicities(self)
    }

    pub fn is_in_class(&self, class: PartitionClass) -> bool {
        self.parts.iter().all(|&p| class.allows(p))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Part size to (nonzero) multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityMap(BTreeMap<usize, usize>);

impl MultiplicityMap {
    /// Multiplicity of `part`, zero if absent.
    pub fn get(&self, part: usize) -> usize {
        self.0.get(&part).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&i, &m)| (i, m))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of `part * multiplicity`.
    pub fn weight(&self) -> usize {
        self.iter().map(|(i, m)| i * m).sum()
    }

    /// Total number of parts.
    pub fn length(&self) -> usize {
        self.0.values().sum()
    }

    /// Rebuilds the partition, largest parts first.
    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.length());
        for (&i, &m) in self.0.iter().rev() {
            parts.extend(std::iter::repeat_n(i, m));
        }
        Partition { parts }
    }
}

impl FromIterator<(usize, usize)> for MultiplicityMap {
    fn from_iter<T: IntoIterator<Item = (usize, usize)>>(iter: T) -> Self {
        let mut map = BTreeMap::new();
        for (i, m) in iter {
            if m > 0 {
                *map.entry(i).or_insert(0) += m;
            }
        }
        MultiplicityMap(map)
    }
}

pub fn multiplicities(p: &Partition) -> MultiplicityMap {
    p.parts.iter().map(|&i| (i, 1)).collect()
}

/// Streams every partition of `n` in `class`, largest first part first.
pub fn enumerate(n: usize, class: PartitionClass) -> Partitions {
    Partitions::new(n, class)
}

/// Iterator returned by [`enumerate`].
#[derive(Clone, Debug)]
pub struct Partitions {
    // descending allowed parts
    allowed: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl Partitions {
    fn new(n: usize, class: PartitionClass) -> Self {
        let mut allowed = allowed_parts(class, n);
        allowed.reverse();
        let mut first = Vec::new();
        greedy_fill(&allowed, n, n, &mut first);
        Partitions {
            allowed,
            current: Some(first),
        }
    }

    fn advance(&self, cur: &[usize]) -> Option<Vec<usize>> {
        let k = cur.iter().rposition(|&p| p > 1)?;
        let v = cur[k];
        let rest: usize = v + (cur.len() - k - 1);
        let smaller = *self.allowed.iter().find(|&&a| a < v)?;
        let mut next = cur[..k].to_vec();
        greedy_fill(&self.allowed, rest, smaller, &mut next);
        Some(next)
    }
}

/// Appends the largest completion of `remaining` using allowed parts `<= cap`.
fn greedy_fill(allowed_desc: &[usize], mut remaining: usize, cap: usize, out: &mut Vec<usize>) {
    for &a in allowed_desc.iter().filter(|&&a| a <= cap) {
        while remaining >= a {
            out.push(a);
            remaining -= a;
        }
    }
    debug_assert_eq!(remaining, 0);
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        self.current = self.advance(&cur);
        Some(Partition { parts: cur })
    }
}

/// Number of partitions of `n` in `class`, by a coin-change count.
pub fn count(n: usize, class: PartitionClass) -> BigUint {
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for part in allowed_parts(class, n) {
        for r in part..=n {
            let add = ways[r - part].clone();
            ways[r] += add;
        }
    }
    ways.swap_remove(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn parts(n: usize, class: PartitionClass) -> Vec<Vec<usize>> {
        enumerate(n, class).map(|p| p.parts().to_vec()).collect()
    }

    #[test]
    fn four_ordinary_in_order() {
        assert_eq!(
            parts(4, PartitionClass::Ordinary),
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
    }

    #[test]
    fn zero_yields_empty_partition_once() {
        for class in PartitionClass::ALL {
            assert_eq!(parts(0, class), vec![Vec::<usize>::new()]);
            assert_eq!(count(0, class), BigUint::one());
        }
    }

    #[test]
    fn binary_four_matches_filtered_ordinary() {
        let filtered: Vec<_> = parts(4, PartitionClass::Ordinary)
            .into_iter()
            .filter(|p| p.iter().all(|x| x.is_power_of_two()))
            .collect();
        assert_eq!(filtered, vec![vec![4], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(parts(4, PartitionClass::Binary), filtered);
    }

    #[test]
    fn restricted_classes_match_filtered_ordinary() {
        for n in 0..=18 {
            let ordinary = parts(n, PartitionClass::Ordinary);
            for class in [PartitionClass::Odd, PartitionClass::Binary, PartitionClass::Ternary] {
                let filtered: Vec<_> = ordinary
                    .iter()
                    .filter(|p| p.iter().all(|&x| class.allows(x)))
                    .cloned()
                    .collect();
                assert_eq!(parts(n, class), filtered, "n={n} class={class}");
            }
        }
    }

    #[test]
    fn allowed_parts_examples() {
        assert_eq!(allowed_parts(PartitionClass::Ternary, 10), vec![1, 3, 9]);
        assert_eq!(allowed_parts(PartitionClass::Ordinary, 3), vec![1, 2, 3]);
        assert_eq!(allowed_parts(PartitionClass::Binary, 17), vec![1, 2, 4, 8, 16]);
        assert_eq!(allowed_parts(PartitionClass::Odd, 8), vec![1, 3, 5, 7]);
    }

    #[test]
    fn multiplicity_examples() {
        let m = multiplicities(&Partition::new(vec![2, 1, 1]).unwrap());
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![(1, 2), (2, 1)]);
        assert!(multiplicities(&Partition::empty()).is_empty());
        let m = multiplicities(&Partition::new(vec![3, 3, 3, 1]).unwrap());
        assert_eq!(m.get(3), 3);
        assert_eq!(m.get(1), 1);
        assert_eq!(m.get(2), 0);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count(4, PartitionClass::Ordinary), BigUint::from(5u32));
        assert_eq!(count(0, PartitionClass::Odd), BigUint::one());
        assert_eq!(count(6, PartitionClass::Ternary), BigUint::from(3u32));
        assert_eq!(
            parts(6, PartitionClass::Ternary),
            vec![vec![3, 3], vec![3, 1, 1, 1], vec![1; 6]]
        );
    }

    /// Euler's pentagonal recurrence, independent of both enumerate and count.
    fn euler_partition_numbers(max: usize) -> Vec<i128> {
        let mut p = vec![0i128; max + 1];
        p[0] = 1;
        for n in 1..=max {
            let mut k: i64 = 1;
            let mut acc = 0i128;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * p[n - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= n {
                    acc += sign * p[n - g2];
                }
                k += 1;
            }
            p[n] = acc;
        }
        p
    }

    #[test]
    fn counts_match_pentagonal_recurrence() {
        let euler = euler_partition_numbers(30);
        for n in 0..=30 {
            let expected = BigUint::from(euler[n] as u128);
            assert_eq!(count(n, PartitionClass::Ordinary), expected);
            assert_eq!(BigUint::from(enumerate(n, PartitionClass::Ordinary).count()), expected);
        }
    }

    #[test]
    fn enumeration_is_duplicate_free_and_valid() {
        for class in PartitionClass::ALL {
            for n in 0..=20 {
                let all: Vec<Partition> = enumerate(n, class).collect();
                let set: HashSet<_> = all.iter().cloned().collect();
                assert_eq!(set.len(), all.len());
                assert_eq!(BigUint::from(all.len()), count(n, class));
                for p in &all {
                    assert_eq!(p.weight(), n);
                    assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
                    assert!(p.is_in_class(class));
                    assert_eq!(p.multiplicities().to_partition(), *p);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_partitions() {
        assert_eq!(Partition::new(vec![1, 2]), Err(PartitionError::NotSorted));
        assert_eq!(Partition::new(vec![2, 0]), Err(PartitionError::ZeroPart));
    }
}
