//! Partitions, Young-diagram hook tables, and the diagonal-hook encoding of
//! self-conjugate partitions.
//!
//! Two independent core tests live here: [`Partition::is_core`] reads the full
//! hook table, while [`fms_is_core`] works on the diagonal hooks alone using
//! the closure and pair-sum conditions for self-conjugate cores.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{gcd, Error, Result};

/// Main-diagonal hook lengths of a self-conjugate partition.
///
/// Stored strictly decreasing; every element is odd and positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct MdSet(Vec<u64>);

impl MdSet {
    /// Builds a set from elements in any order. Duplicates, even values and
    /// zero are rejected.
    pub fn new(mut elements: Vec<u64>) -> Result<Self> {
        elements.sort_unstable_by(|a, b| b.cmp(a));
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid(format!("duplicate diagonal hook {}", w[0])));
            }
        }
        if let Some(&h) = elements.iter().find(|&&h| h % 2 == 0) {
            return Err(Error::invalid(format!(
                "diagonal hook {h} is not a positive odd integer"
            )));
        }
        Ok(MdSet(elements))
    }

    pub fn empty() -> Self {
        MdSet(Vec::new())
    }

    /// Elements, largest first.
    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, h: u64) -> bool {
        self.0.binary_search_by(|x| h.cmp(x)).is_ok()
    }

    pub fn largest(&self) -> Option<u64> {
        self.0.first().copied()
    }

    /// The set without its largest element: the diagonal hooks of the
    /// partition left after deleting the first row and column.
    pub fn without_largest(&self) -> MdSet {
        MdSet(self.0.iter().skip(1).copied().collect())
    }

    /// Size of the encoded partition.
    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn to_partition(&self) -> SelfConjugatePartition {
        md_to_partition(self)
    }
}

impl TryFrom<Vec<u64>> for MdSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        MdSet::new(v)
    }
}

impl From<MdSet> for Vec<u64> {
    fn from(m: MdSet) -> Self {
        m.0
    }
}

impl fmt::Display for MdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, h) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, "}}")
    }
}

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("partition parts must be weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }

    /// Hook length of every box, row by row. Row `i` has `parts[i]` entries.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row)
                    .map(|j| (row - j - 1) + (conj.parts[j] - i - 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// `true` iff no box has hook length exactly `t`.
    pub fn is_core(&self, t: u64) -> Result<bool> {
        if t == 0 {
            return Err(Error::invalid("core modulus must be positive"));
        }
        let t = t as usize;
        Ok(!self.hook_lengths().iter().flatten().any(|&h| h == t))
    }

    /// Number of corners, i.e. of distinct part values.
    pub fn corners(&self) -> usize {
        let mut n = 0;
        let mut prev = None;
        for &p in &self.parts {
            if prev != Some(p) {
                n += 1;
                prev = Some(p);
            }
        }
        n
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A partition equal to its own conjugate.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SelfConjugatePartition(Partition);

impl SelfConjugatePartition {
    pub fn new(partition: Partition) -> Result<Self> {
        if !partition.is_self_conjugate() {
            return Err(Error::invalid(format!("{partition} is not self-conjugate")));
        }
        Ok(SelfConjugatePartition(partition))
    }

    pub fn from_parts(parts: Vec<usize>) -> Result<Self> {
        Self::new(Partition::new(parts)?)
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn parts(&self) -> &[usize] {
        self.0.parts()
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    /// Side of the Durfee square.
    pub fn durfee(&self) -> usize {
        self.parts()
            .iter()
            .enumerate()
            .take_while(|&(i, &p)| p > i)
            .count()
    }

    pub fn corners(&self) -> usize {
        self.0.corners()
    }

    pub fn to_md(&self) -> MdSet {
        partition_to_md(self)
    }
}

impl fmt::Display for SelfConjugatePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Rebuilds the partition from its diagonal hooks: row `i` (1-based, `i <= D`)
/// has `(h_i - 1)/2 + i` boxes, later rows follow from symmetry.
pub fn md_to_partition(md: &MdSet) -> SelfConjugatePartition {
    let top: Vec<usize> = md
        .elements()
        .iter()
        .enumerate()
        .map(|(i, &h)| ((h - 1) / 2) as usize + i + 1)
        .collect();
    let durfee = top.len();
    let mut parts = top.clone();
    if let Some(&first) = top.first() {
        for i in durfee + 1..=first {
            parts.push(top.iter().filter(|&&p| p >= i).count());
        }
    }
    let partition = Partition { parts };
    debug_assert!(partition.is_self_conjugate());
    SelfConjugatePartition(partition)
}

pub fn partition_to_md(lambda: &SelfConjugatePartition) -> MdSet {
    let hooks = lambda.parts()[..lambda.durfee()]
        .iter()
        .enumerate()
        .map(|(i, &p)| (2 * (p - i - 1) + 1) as u64)
        .collect();
    MdSet(hooks)
}

/// Core test on diagonal hooks alone: `md` is a `t`-core iff
/// (a) every `h > 2t` has `h - 2t` in the set, and
/// (b) no two elements (possibly equal) sum to a multiple of `2t`.
pub fn fms_is_core(md: &MdSet, t: u64) -> Result<bool> {
    if t == 0 {
        return Err(Error::invalid("core modulus must be positive"));
    }
    let two_t = 2 * t;
    if md
        .elements()
        .iter()
        .any(|&h| h > two_t && !md.contains(h - two_t))
    {
        return Ok(false);
    }
    let mut residues = HashSet::with_capacity(md.len());
    for &h in md.elements() {
        let r = h % two_t;
        residues.insert(r);
        if residues.contains(&((two_t - r) % two_t)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `md` is a core for every modulus in `cores`.
pub fn is_simultaneous_core(md: &MdSet, cores: &[u64]) -> Result<bool> {
    if cores.is_empty() {
        return Err(Error::invalid("at least one core modulus is required"));
    }
    if cores.contains(&0) {
        return Err(Error::invalid("core modulus must be positive"));
    }
    // A self-conjugate (s,t)-core never has s+t on its diagonal.
    for (i, &s) in cores.iter().enumerate() {
        for &t in &cores[i + 1..] {
            if gcd(s, t) == 1 && md.contains(s + t) {
                return Ok(false);
            }
        }
    }
    for &t in cores {
        if !fms_is_core(md, t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// JSON view of a self-conjugate partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRecord {
    pub parts: Vec<usize>,
    pub md: Vec<u64>,
    pub corners: usize,
    pub size: usize,
}

impl From<&SelfConjugatePartition> for PartitionRecord {
    fn from(lambda: &SelfConjugatePartition) -> Self {
        PartitionRecord {
            parts: lambda.parts().to_vec(),
            md: lambda.to_md().into(),
            corners: lambda.corners(),
            size: lambda.size(),
        }
    }
}

/// All partitions of `n`, parts in decreasing order, lexicographically
/// descending.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[u64]) -> MdSet {
        MdSet::new(v.to_vec()).unwrap()
    }

    fn sc(v: &[usize]) -> SelfConjugatePartition {
        SelfConjugatePartition::from_parts(v.to_vec()).unwrap()
    }

    #[test]
    fn md_to_partition_examples() {
        assert_eq!(md_to_partition(&md(&[])).parts(), &[] as &[usize]);
        assert_eq!(md_to_partition(&md(&[5])).parts(), &[3, 1, 1]);
        assert_eq!(md_to_partition(&md(&[3, 1])).parts(), &[2, 2]);
    }

    #[test]
    fn partition_to_md_examples() {
        assert_eq!(partition_to_md(&sc(&[])), md(&[]));
        assert_eq!(partition_to_md(&sc(&[2, 2])), md(&[3, 1]));
        assert_eq!(partition_to_md(&sc(&[3, 1, 1])), md(&[5]));
    }

    #[test]
    fn md_rejects_bad_elements() {
        assert!(MdSet::new(vec![3, 3]).is_err());
        assert!(MdSet::new(vec![4]).is_err());
        assert!(MdSet::new(vec![0]).is_err());
        assert_eq!(MdSet::new(vec![1, 5, 3]).unwrap().elements(), &[5, 3, 1]);
    }

    #[test]
    fn non_self_conjugate_rejected() {
        assert!(SelfConjugatePartition::from_parts(vec![2]).is_err());
        assert!(SelfConjugatePartition::from_parts(vec![2, 2, 1]).is_err());
    }

    #[test]
    fn hook_table_of_5421() {
        let lambda = Partition::new(vec![5, 4, 2, 1]).unwrap();
        assert_eq!(
            lambda.hook_lengths(),
            vec![vec![8, 6, 4, 3, 1], vec![6, 4, 2, 1], vec![3, 1], vec![1]]
        );
        assert!(Partition::default().hook_lengths().is_empty());
        assert_eq!(
            Partition::new(vec![1]).unwrap().hook_lengths(),
            vec![vec![1]]
        );
    }

    #[test]
    fn is_core_examples() {
        let lambda = Partition::new(vec![5, 4, 2, 1]).unwrap();
        for t in [5, 7, 9, 10, 11, 20] {
            assert!(lambda.is_core(t).unwrap(), "t={t}");
        }
        for t in [1, 2, 3, 4, 6, 8] {
            assert!(!lambda.is_core(t).unwrap(), "t={t}");
        }
        assert!(Partition::default().is_core(3).unwrap());
        assert!(lambda.is_core(0).is_err());
    }

    #[test]
    fn fms_examples() {
        let lam = md(&[77, 41, 35, 27, 19, 11, 5, 3]);
        for t in [21, 25, 29, 33, 37] {
            assert!(fms_is_core(&lam, t).unwrap(), "t={t}");
        }
        assert!(!fms_is_core(&md(&[5]), 5).unwrap());
        for t in 1..20 {
            assert!(fms_is_core(&MdSet::empty(), t).unwrap());
        }
        assert!(fms_is_core(&lam, 0).is_err());
    }

    #[test]
    fn simultaneous_examples() {
        let mu = md(&[67, 65, 21, 19, 15, 13, 11, 9, 7, 3, 1]);
        assert!(is_simultaneous_core(&mu, &[23, 26, 29, 32]).unwrap());
        let nu = md(&[65, 61, 21, 17, 15, 13, 11, 9, 5, 3]);
        assert!(is_simultaneous_core(&nu, &[22, 25, 28, 31]).unwrap());
        assert!(!is_simultaneous_core(&md(&[3]), &[3, 4]).unwrap());
        assert!(is_simultaneous_core(&md(&[3]), &[]).is_err());
    }

    #[test]
    fn corner_examples() {
        assert_eq!(sc(&[]).corners(), 0);
        assert_eq!(sc(&[1]).corners(), 1);
        assert_eq!(sc(&[2, 2]).corners(), 1);
        assert_eq!(sc(&[3, 1, 1]).corners(), 2);
    }

    #[test]
    fn fms_agrees_with_hook_table_on_small_partitions() {
        for n in 0..=40 {
            for lambda in partitions_of(n) {
                if !lambda.is_self_conjugate() {
                    continue;
                }
                let sc = SelfConjugatePartition::new(lambda.clone()).unwrap();
                let m = sc.to_md();
                assert_eq!(md_to_partition(&m), sc);
                for t in 1..=12 {
                    assert_eq!(
                        fms_is_core(&m, t).unwrap(),
                        lambda.is_core(t).unwrap(),
                        "{lambda} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn conjugation_is_an_involution() {
        for n in 0..=12 {
            for lambda in partitions_of(n) {
                assert_eq!(lambda.conjugate().conjugate(), lambda);
            }
        }
    }

    #[test]
    fn record_json_shape() {
        let rec = PartitionRecord::from(&sc(&[3, 1, 1]));
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"parts":[3,1,1],"md":[5],"corners":2,"size":5}"#);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn md_strategy() -> impl Strategy<Value = MdSet> {
            proptest::collection::btree_set(0u64..60, 0..10)
                .prop_map(|s| MdSet::new(s.into_iter().map(|k| 2 * k + 1).collect()).unwrap())
        }

        proptest! {
            #[test]
            fn md_round_trip(m in md_strategy()) {
                let lambda = md_to_partition(&m);
                prop_assert!(lambda.partition().is_self_conjugate());
                prop_assert_eq!(lambda.size() as u64, m.size());
                prop_assert_eq!(lambda.durfee(), m.len());
                prop_assert_eq!(partition_to_md(&lambda), m);
            }

            #[test]
            fn fms_matches_hook_table(m in md_strategy(), t in 1u64..16) {
                let lambda = md_to_partition(&m);
                prop_assert_eq!(fms_is_core(&m, t).unwrap(), lambda.partition().is_core(t).unwrap());
            }

            #[test]
            fn sum_of_coprime_pair_never_on_diagonal(m in md_strategy(), s in 1u64..10, t in 1u64..10) {
                prop_assume!(s != t && gcd(s, t) == 1);
                if fms_is_core(&m, s).unwrap() && fms_is_core(&m, t).unwrap() {
                    prop_assert!(!m.contains(s + t));
                }
            }
        }
    }
}
