//! Ranked alphabets and their orderings.
//!
//! A [`MultiSet`] is a collection of ranks with multiplicities, e.g.
//! `{0^4, 5, 6}`. A [`MultiPermutation`] is an ordering of all its elements,
//! and a [`Permutation`] is the special case where every multiplicity is 1.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A ranked alphabet `{v_1^{m_1}, ..., v_l^{m_l}}` with strictly increasing
/// ranks and positive multiplicities.
///
/// Rank 0 is allowed; it is reserved as the placeholder symbol used when
/// information positions are blanked out.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiSet {
    entries: Vec<(u32, usize)>,
}

impl MultiSet {
    /// Builds a multi-set from `(rank, multiplicity)` pairs.
    pub fn new(entries: Vec<(u32, usize)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidMultiSet("no ranks".into()));
        }
        for pair in entries.windows(2) {
            if pair[0].0 >= pair[1].0 {
                return Err(Error::InvalidMultiSet(format!(
                    "ranks not strictly increasing: {} then {}",
                    pair[0].0, pair[1].0
                )));
            }
        }
        if let Some(&(rank, _)) = entries.iter().find(|&&(_, m)| m == 0) {
            return Err(Error::InvalidMultiSet(format!(
                "rank {rank} has multiplicity 0"
            )));
        }
        Ok(MultiSet { entries })
    }

    /// The alphabet of a word: ranks with their occurrence counts.
    pub fn from_word(seq: &[u32]) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        let mut sorted = seq.to_vec();
        sorted.sort_unstable();
        let mut entries: Vec<(u32, usize)> = Vec::new();
        for v in sorted {
            match entries.last_mut() {
                Some((rank, m)) if *rank == v => *m += 1,
                _ => entries.push((v, 1)),
            }
        }
        MultiSet::new(entries)
    }

    /// `{lo, lo+1, ..., hi}`, each with multiplicity 1.
    pub fn contiguous(lo: u32, hi: u32) -> Self {
        assert!(lo <= hi);
        MultiSet {
            entries: (lo..=hi).map(|v| (v, 1)).collect(),
        }
    }

    /// The alphabet of `S_k`: `{1, 2, ..., k}`.
    pub fn symmetric(k: usize) -> Self {
        assert!(k >= 1);
        MultiSet::contiguous(1, k as u32)
    }

    /// The redundancy alphabet `{0^k, k+1, ..., k+r}`.
    pub fn redundancy(k: usize, r: usize) -> Self {
        assert!(k >= 1);
        let mut entries = vec![(0u32, k)];
        entries.extend((1..=r).map(|i| ((k + i) as u32, 1)));
        MultiSet { entries }
    }

    pub fn entries(&self) -> &[(u32, usize)] {
        &self.entries
    }

    /// Number of distinct ranks.
    pub fn num_ranks(&self) -> usize {
        self.entries.len()
    }

    /// Total length `n` of any ordering of this multi-set.
    pub fn len(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        false // constructors reject empty multi-sets
    }

    pub fn rank(&self, index: usize) -> u32 {
        self.entries[index].0
    }

    pub fn multiplicity(&self, index: usize) -> usize {
        self.entries[index].1
    }

    /// Dense index of a rank value, if present.
    pub fn rank_index(&self, rank: u32) -> Option<usize> {
        self.entries.binary_search_by_key(&rank, |&(v, _)| v).ok()
    }

    /// Prefix sums `n_0 = 0, n_1, ..., n_l = n` of the multiplicities.
    pub fn prefix_sums(&self) -> Vec<usize> {
        let mut sums = Vec::with_capacity(self.entries.len() + 1);
        let mut acc = 0;
        sums.push(0);
        for &(_, m) in &self.entries {
            acc += m;
            sums.push(acc);
        }
        sums
    }

    /// True when every multiplicity is 1.
    pub fn all_unit(&self) -> bool {
        self.entries.iter().all(|&(_, m)| m == 1)
    }

    /// `n! / (m_1! m_2! ... m_l!)`, the number of orderings.
    pub fn space_size(&self) -> BigUint {
        let mut size = factorial(self.len());
        for &(_, m) in &self.entries {
            size /= factorial(m);
        }
        size
    }

    /// The lexicographically smallest ordering.
    pub fn sorted_word(&self) -> MultiPermutation {
        let mut seq = Vec::with_capacity(self.len());
        for &(rank, m) in &self.entries {
            seq.extend(std::iter::repeat(rank).take(m));
        }
        MultiPermutation {
            alphabet: self.clone(),
            seq,
        }
    }

    /// All orderings in lexicographic order.
    pub fn orderings(&self) -> SpaceIter {
        SpaceIter {
            alphabet: self.clone(),
            next: Some(self.sorted_word().seq),
        }
    }

    /// Union of two multi-sets with disjoint rank sets.
    pub fn union_disjoint(&self, other: &MultiSet) -> Result<MultiSet> {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        entries.sort_unstable_by_key(|&(v, _)| v);
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidMultiSet(format!(
                    "rank {} occurs in both multi-sets",
                    pair[0].0
                )));
            }
        }
        MultiSet::new(entries)
    }
}

pub(crate) fn factorial(n: usize) -> BigUint {
    let mut f = BigUint::one();
    for i in 2..=n {
        f *= BigUint::from(i);
    }
    f
}

impl fmt::Display for MultiSet {
    /// Text form: `v^m` terms joined by `+`, with `^1` omitted, e.g. `0^4+5+6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(rank, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if m == 1 {
                write!(f, "{rank}")?;
            } else {
                write!(f, "{rank}^{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for MultiSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let (rank, mult) = match term.split_once('^') {
                Some((v, m)) => (
                    v.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::Parse(format!("rank {v:?}: {e}")))?,
                    m.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("multiplicity {m:?}: {e}")))?,
                ),
                None => (
                    term.parse::<u32>()
                        .map_err(|e| Error::Parse(format!("rank {term:?}: {e}")))?,
                    1,
                ),
            };
            entries.push((rank, mult));
        }
        entries.sort_unstable_by_key(|&(v, _)| v);
        MultiSet::new(entries)
    }
}

/// An ordering of all elements of a [`MultiSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPermutation {
    alphabet: MultiSet,
    seq: Vec<u32>,
}

impl MultiPermutation {
    /// Validates that `seq` uses each rank of `alphabet` exactly as many
    /// times as its multiplicity.
    pub fn new(alphabet: MultiSet, seq: Vec<u32>) -> Result<Self> {
        let observed = MultiSet::from_word(&seq)?;
        if observed != alphabet {
            return Err(Error::InvalidWord(format!(
                "word [{}] is not an ordering of {alphabet}",
                join(&seq)
            )));
        }
        Ok(MultiPermutation { alphabet, seq })
    }

    /// Builds a word over the alphabet inferred from its own entries.
    pub fn from_seq(seq: Vec<u32>) -> Result<Self> {
        let alphabet = MultiSet::from_word(&seq)?;
        Ok(MultiPermutation { alphabet, seq })
    }

    /// Internal constructor for sequences already known to match `alphabet`.
    pub(crate) fn trusted(alphabet: MultiSet, seq: Vec<u32>) -> Self {
        debug_assert_eq!(MultiSet::from_word(&seq).unwrap(), alphabet);
        MultiPermutation { alphabet, seq }
    }

    pub fn alphabet(&self) -> &MultiSet {
        &self.alphabet
    }

    pub fn seq(&self) -> &[u32] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Parses the comma-separated text form against a given alphabet.
    pub fn parse_with(alphabet: &MultiSet, s: &str) -> Result<Self> {
        let seq = parse_seq(s)?;
        MultiPermutation::new(alphabet.clone(), seq)
    }

    /// Positions (0-based, in order of appearance) of each occurrence of each
    /// rank, indexed by dense rank index.
    pub(crate) fn occurrence_positions(&self) -> Vec<Vec<usize>> {
        let mut positions: Vec<Vec<usize>> = self
            .alphabet
            .entries()
            .iter()
            .map(|&(_, m)| Vec::with_capacity(m))
            .collect();
        for (pos, &v) in self.seq.iter().enumerate() {
            let idx = self.alphabet.rank_index(v).expect("rank in alphabet");
            positions[idx].push(pos);
        }
        positions
    }
}

impl fmt::Display for MultiPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.seq))
    }
}

impl FromStr for MultiPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MultiPermutation::from_seq(parse_seq(s)?)
    }
}

pub(crate) fn parse_seq(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("entry {t:?}: {e}")))
        })
        .collect()
}

fn join(seq: &[u32]) -> String {
    seq.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// A multi-permutation whose alphabet has all multiplicities equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(MultiPermutation);

impl Permutation {
    pub fn from_multi(word: MultiPermutation) -> Result<Self> {
        if !word.alphabet().all_unit() {
            return Err(Error::InvalidWord(format!(
                "[{}] repeats a rank; not a permutation",
                join(&word.seq)
            )));
        }
        Ok(Permutation(word))
    }

    /// A permutation from its sequence of distinct values.
    pub fn from_seq(seq: Vec<u32>) -> Result<Self> {
        Permutation::from_multi(MultiPermutation::from_seq(seq)?)
    }

    /// The identity permutation `[1, 2, ..., k]`.
    pub fn identity(k: usize) -> Self {
        Permutation(MultiSet::symmetric(k).sorted_word())
    }

    /// True when the alphabet is exactly `{lo, ..., hi}`.
    pub fn spans(&self, lo: u32, hi: u32) -> bool {
        self.0.alphabet() == &MultiSet::contiguous(lo, hi)
    }

    /// True when this is an element of `S_k` for `k = self.len()`.
    pub fn is_one_based(&self) -> bool {
        self.spans(1, self.0.len() as u32)
    }

    pub fn as_multi(&self) -> &MultiPermutation {
        &self.0
    }

    pub fn into_multi(self) -> MultiPermutation {
        self.0
    }
}

impl Deref for Permutation {
    type Target = MultiPermutation;

    fn deref(&self) -> &MultiPermutation {
        &self.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::from_seq(parse_seq(s)?)
    }
}

impl From<Permutation> for MultiPermutation {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// Lexicographic iterator over all orderings of a multi-set.
pub struct SpaceIter {
    alphabet: MultiSet,
    next: Option<Vec<u32>>,
}

impl Iterator for SpaceIter {
    type Item = MultiPermutation;

    fn next(&mut self) -> Option<MultiPermutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lex(&mut succ) {
            self.next = Some(succ);
        }
        Some(MultiPermutation::trusted(self.alphabet.clone(), current))
    }
}

/// Advances `seq` to its lexicographic successor; false at the maximum.
fn next_lex(seq: &mut [u32]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let pivot = i - 1;
    let mut j = seq.len() - 1;
    while seq[j] <= seq[pivot] {
        j -= 1;
    }
    seq.swap(pivot, j);
    seq[i..].reverse();
    true
}
