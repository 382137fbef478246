//! The Kendall tau metric on multi-permutations, together with the
//! substitution and projection operations used by the systematic codes.
//!
//! The distance between two orderings of the same multi-set is the minimum
//! number of adjacent transpositions (swaps of two distinct neighbours)
//! turning one into the other. It is computed by giving the r-th occurrence
//! of each rank a canonical label and counting inversions between the two
//! labelled permutations; relabelling occurrences does not change the
//! distance, so the cheapest labelling is used.

use crate::error::{Error, Result};
use crate::multiset::{MultiPermutation, MultiSet, Permutation};

/// Number of inversions of `values`, counted by divide-and-conquer merging.
pub fn count_inversions(values: &[usize]) -> u64 {
    let mut work = values.to_vec();
    let mut buf = vec![0usize; values.len()];
    merge_count(&mut work, &mut buf)
}

fn merge_count(values: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = values.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let (left, right) = values.split_at_mut(mid);
    let mut inversions = merge_count(left, &mut buf[..mid]) + merge_count(right, &mut buf[mid..]);

    let (mut i, mut j) = (0, 0);
    for slot in buf[..n].iter_mut() {
        if i < left.len() && (j >= right.len() || left[i] <= right[j]) {
            *slot = left[i];
            i += 1;
        } else {
            // right[j] jumps over every remaining left element
            inversions += (left.len() - i) as u64;
            *slot = right[j];
            j += 1;
        }
    }
    values.copy_from_slice(&buf[..n]);
    inversions
}

/// Quadratic reference count, kept for cross-checking the merge procedure.
pub fn count_inversions_naive(values: &[usize]) -> u64 {
    let mut inversions = 0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] > values[j] {
                inversions += 1;
            }
        }
    }
    inversions
}

/// Kendall tau distance between two orderings of the same multi-set.
pub fn kendall_distance(a: &MultiPermutation, b: &MultiPermutation) -> Result<u64> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    // Walk `a` and send its j-th element (the r-th occurrence of some rank)
    // to the position of that same occurrence in `b`; inversions of the
    // resulting sequence are exactly the discordant occurrence pairs.
    let positions_in_b = b.occurrence_positions();
    let mut seen = vec![0usize; a.alphabet().num_ranks()];
    let mut mapped = Vec::with_capacity(a.len());
    for &v in a.seq() {
        let idx = a.alphabet().rank_index(v).expect("rank in alphabet");
        mapped.push(positions_in_b[idx][seen[idx]]);
        seen[idx] += 1;
    }
    Ok(count_inversions(&mapped))
}

/// Swaps the distinct elements at positions `pos` and `pos + 1` (0-based).
///
/// The result is at Kendall distance exactly 1 from the input.
pub fn apply_adjacent_transposition(w: &MultiPermutation, pos: usize) -> Result<MultiPermutation> {
    if pos + 1 >= w.len() {
        return Err(Error::PositionOutOfRange { pos, len: w.len() });
    }
    if w.seq()[pos] == w.seq()[pos + 1] {
        return Err(Error::EqualAdjacentElements { pos });
    }
    let mut seq = w.seq().to_vec();
    seq.swap(pos, pos + 1);
    Ok(MultiPermutation::trusted(w.alphabet().clone(), seq))
}

/// 0-based positions at which an adjacent transposition is legal.
pub fn legal_transpositions(w: &MultiPermutation) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| w.seq()[i] != w.seq()[i + 1])
        .collect()
}

/// A per-rank substitution: for each rank index `i`, a permutation of the
/// interval `[n_{i-1}+1, n_i]` that relabels the occurrences of that rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaVector {
    blocks: Vec<Vec<u32>>,
}

impl ThetaVector {
    /// Validates that the i-th block is a permutation of `[n_{i-1}+1, n_i]`.
    pub fn new(blocks: Vec<Vec<u32>>, alphabet: &MultiSet) -> Result<Self> {
        if blocks.len() != alphabet.num_ranks() {
            return Err(Error::IncompatibleTheta(format!(
                "{} blocks for {} ranks",
                blocks.len(),
                alphabet.num_ranks()
            )));
        }
        let sums = alphabet.prefix_sums();
        for (i, block) in blocks.iter().enumerate() {
            let lo = (sums[i] + 1) as u32;
            let hi = sums[i + 1] as u32;
            let mut sorted = block.clone();
            sorted.sort_unstable();
            if sorted != (lo..=hi).collect::<Vec<_>>() {
                return Err(Error::IncompatibleTheta(format!(
                    "block {i} is not a permutation of [{lo}, {hi}]"
                )));
            }
        }
        Ok(ThetaVector { blocks })
    }

    /// The identity substitution: the r-th occurrence of the i-th rank gets
    /// label `n_{i-1} + r`.
    pub fn identity(alphabet: &MultiSet) -> Self {
        let sums = alphabet.prefix_sums();
        let blocks = (0..alphabet.num_ranks())
            .map(|i| ((sums[i] + 1) as u32..=sums[i + 1] as u32).collect())
            .collect();
        ThetaVector { blocks }
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Every substitution vector for `alphabet` (all block permutations).
    pub fn enumerate(alphabet: &MultiSet) -> Vec<ThetaVector> {
        let sums = alphabet.prefix_sums();
        let per_block: Vec<Vec<Vec<u32>>> = (0..alphabet.num_ranks())
            .map(|i| {
                MultiSet::contiguous((sums[i] + 1) as u32, sums[i + 1] as u32)
                    .orderings()
                    .map(|w| w.seq().to_vec())
                    .collect()
            })
            .collect();
        let mut all = vec![Vec::new()];
        for choices in &per_block {
            let mut grown = Vec::with_capacity(all.len() * choices.len());
            for prefix in &all {
                for choice in choices {
                    let mut blocks: Vec<Vec<u32>> = prefix.clone();
                    blocks.push(choice.clone());
                    grown.push(blocks);
                }
            }
            all = grown;
        }
        all.into_iter().map(|blocks| ThetaVector { blocks }).collect()
    }
}

/// Lifts a multi-permutation to a permutation by substituting, occurrence by
/// occurrence, the labels prescribed by `theta`.
pub fn t_theta(w: &MultiPermutation, theta: &ThetaVector) -> Result<Permutation> {
    if theta.blocks.len() != w.alphabet().num_ranks() {
        return Err(Error::IncompatibleTheta(format!(
            "{} blocks for {} ranks",
            theta.blocks.len(),
            w.alphabet().num_ranks()
        )));
    }
    for (i, block) in theta.blocks.iter().enumerate() {
        if block.len() != w.alphabet().multiplicity(i) {
            return Err(Error::IncompatibleTheta(format!(
                "block {i} has {} labels for multiplicity {}",
                block.len(),
                w.alphabet().multiplicity(i)
            )));
        }
    }
    let mut seen = vec![0usize; w.alphabet().num_ranks()];
    let mut seq = Vec::with_capacity(w.len());
    for &v in w.seq() {
        let idx = w.alphabet().rank_index(v).expect("rank in alphabet");
        seq.push(theta.blocks[idx][seen[idx]]);
        seen[idx] += 1;
    }
    Permutation::from_seq(seq)
}

/// Replaces the zeros of `rho` (left to right) by the elements of `info`.
///
/// `rho` must contain exactly `info.len()` zeros, and the non-zero ranks of
/// `rho` must be disjoint from the ranks of `info`.
pub fn substitute_zeros(
    info: &MultiPermutation,
    rho: &MultiPermutation,
) -> Result<MultiPermutation> {
    let zero_mult = match rho.alphabet().rank_index(0) {
        Some(idx) => rho.alphabet().multiplicity(idx),
        None => 0,
    };
    if zero_mult != info.len() {
        return Err(Error::AlphabetMismatch);
    }
    if info.alphabet().rank_index(0).is_some() {
        return Err(Error::InvalidWord("information word contains rank 0".into()));
    }
    let mut next = info.seq().iter();
    let seq: Vec<u32> = rho
        .seq()
        .iter()
        .map(|&v| if v == 0 { *next.next().expect("zero count") } else { v })
        .collect();
    let nonzero = MultiSet::new(
        rho.alphabet()
            .entries()
            .iter()
            .copied()
            .filter(|&(v, _)| v != 0)
            .collect(),
    );
    let alphabet = match nonzero {
        Ok(rest) => info.alphabet().union_disjoint(&rest)?,
        Err(_) => info.alphabet().clone(), // rho was all zeros
    };
    MultiPermutation::new(alphabet, seq)
}

/// The composition `sigma * rho`: the zeros of `rho` over `{0^k, k+1..k+r}`
/// are replaced, in order, by the entries of `sigma` from `S_k`.
pub fn star(sigma: &Permutation, rho: &MultiPermutation) -> Result<Permutation> {
    let k = sigma.len();
    if !sigma.is_one_based() {
        return Err(Error::InvalidWord(format!(
            "[{sigma}] is not a permutation of [1, {k}]"
        )));
    }
    let r = rho.len().checked_sub(k).ok_or(Error::AlphabetMismatch)?;
    if rho.alphabet() != &MultiSet::redundancy(k, r) {
        return Err(Error::AlphabetMismatch);
    }
    Permutation::from_multi(substitute_zeros(sigma.as_multi(), rho)?)
}

/// Keeps the elements of `[1, k]`, in order: the projection onto the
/// information part.
pub fn project_down(alpha: &Permutation, k: usize) -> Result<Permutation> {
    let n = alpha.len();
    if k < 1 || k > n {
        return Err(Error::PositionOutOfRange { pos: k, len: n });
    }
    if !alpha.is_one_based() {
        return Err(Error::InvalidWord(format!(
            "[{alpha}] is not a permutation of [1, {n}]"
        )));
    }
    let seq: Vec<u32> = alpha
        .seq()
        .iter()
        .copied()
        .filter(|&v| v <= k as u32)
        .collect();
    Permutation::from_seq(seq)
}

/// Replaces every element of `[1, k]` by 0: the projection onto the
/// redundancy part.
pub fn project_zero(alpha: &Permutation, k: usize) -> Result<MultiPermutation> {
    let n = alpha.len();
    if k < 1 || k > n {
        return Err(Error::PositionOutOfRange { pos: k, len: n });
    }
    if !alpha.is_one_based() {
        return Err(Error::InvalidWord(format!(
            "[{alpha}] is not a permutation of [1, {n}]"
        )));
    }
    let seq: Vec<u32> = alpha
        .seq()
        .iter()
        .map(|&v| if v <= k as u32 { 0 } else { v })
        .collect();
    MultiPermutation::from_seq(seq)
}

/// Generalisation of [`project_down`]: keeps the elements whose rank belongs
/// to `info`, yielding a word over `info`.
pub(crate) fn project_to_info(word: &MultiPermutation, info: &MultiSet) -> Result<MultiPermutation> {
    let seq: Vec<u32> = word
        .seq()
        .iter()
        .copied()
        .filter(|&v| info.rank_index(v).is_some())
        .collect();
    MultiPermutation::new(info.clone(), seq)
}

/// Generalisation of [`project_zero`]: blanks the elements whose rank belongs
/// to `info`, yielding a word over `{0^k} ∪ R`.
pub(crate) fn project_info_to_zero(
    word: &MultiPermutation,
    info: &MultiSet,
) -> Result<MultiPermutation> {
    let seq: Vec<u32> = word
        .seq()
        .iter()
        .map(|&v| if info.rank_index(v).is_some() { 0 } else { v })
        .collect();
    MultiPermutation::from_seq(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;
    use std::collections::VecDeque;

    fn mp(s: &str) -> MultiPermutation {
        s.parse().unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Shortest-path distance in the adjacent-transposition graph.
    fn bfs_distance(a: &MultiPermutation, b: &MultiPermutation) -> u64 {
        let mut dist: HashMap<Vec<u32>, u64> = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(a.seq().to_vec(), 0);
        queue.push_back(a.clone());
        while let Some(w) = queue.pop_front() {
            let d = dist[w.seq()];
            if w.seq() == b.seq() {
                return d;
            }
            for pos in legal_transpositions(&w) {
                let next = apply_adjacent_transposition(&w, pos).unwrap();
                if !dist.contains_key(next.seq()) {
                    dist.insert(next.seq().to_vec(), d + 1);
                    queue.push_back(next);
                }
            }
        }
        panic!("target not reachable");
    }

    #[test]
    fn distance_of_worked_multiset_pair() {
        // at least three adjacent transpositions separate these orderings
        assert_eq!(kendall_distance(&mp("1,1,2,2"), &mp("2,1,2,1")).unwrap(), 3);
    }

    #[test]
    fn distance_to_self_is_zero() {
        let w = mp("1,2,2,1,3,2");
        assert_eq!(kendall_distance(&w, &w).unwrap(), 0);
    }

    #[test]
    fn distance_matches_bfs_on_s3_pair() {
        let a = mp("2,1,3");
        let b = mp("3,1,2");
        assert_eq!(bfs_distance(&a, &b), 3);
        assert_eq!(kendall_distance(&a, &b).unwrap(), 3);
    }

    #[test]
    fn distance_rejects_mismatched_alphabets() {
        assert!(kendall_distance(&mp("1,2"), &mp("1,3")).is_err());
    }

    #[test]
    fn transposition_examples() {
        let w = apply_adjacent_transposition(&mp("1,1,2,2"), 1).unwrap();
        assert_eq!(w.seq(), &[1, 2, 1, 2]);
        let w = apply_adjacent_transposition(&mp("1,2"), 0).unwrap();
        assert_eq!(w.seq(), &[2, 1]);
        assert!(apply_adjacent_transposition(&mp("1,1,2,2"), 0).is_err());
        assert!(apply_adjacent_transposition(&mp("1,2"), 5).is_err());
    }

    #[test]
    fn transposition_moves_distance_one() {
        let w = mp("1,2,2,1,3,2");
        for pos in legal_transpositions(&w) {
            let moved = apply_adjacent_transposition(&w, pos).unwrap();
            assert_eq!(kendall_distance(&w, &moved).unwrap(), 1);
        }
    }

    #[test]
    fn t_theta_worked_example() {
        let w = mp("1,2,1,3,3,1,3,2");
        let theta = ThetaVector::new(
            vec![vec![1, 3, 2], vec![4, 5], vec![8, 7, 6]],
            w.alphabet(),
        )
        .unwrap();
        let lifted = t_theta(&w, &theta).unwrap();
        assert_eq!(lifted.seq(), &[1, 4, 3, 8, 7, 2, 6, 5]);
    }

    #[test]
    fn t_theta_identity_on_permutation() {
        let w = mp("3,1,2");
        let theta = ThetaVector::identity(w.alphabet());
        assert_eq!(t_theta(&w, &theta).unwrap().seq(), &[3, 1, 2]);
    }

    #[test]
    fn t_theta_second_worked_example() {
        let w = mp("1,1,2,2");
        let theta =
            ThetaVector::new(vec![vec![2, 1], vec![3, 4]], w.alphabet()).unwrap();
        assert_eq!(t_theta(&w, &theta).unwrap().seq(), &[2, 1, 3, 4]);
        // the lifted pair keeps the original distance
        let pi = mp("2,1,2,1");
        let lifted_pi = t_theta(&pi, &theta).unwrap();
        assert_eq!(lifted_pi.seq(), &[3, 2, 4, 1]);
        assert_eq!(
            kendall_distance(lifted_pi.as_multi(), t_theta(&w, &theta).unwrap().as_multi())
                .unwrap(),
            3
        );
    }

    #[test]
    fn t_theta_rejects_incompatible_blocks() {
        let w = mp("1,1,2,2");
        assert!(ThetaVector::new(vec![vec![1, 2]], w.alphabet()).is_err());
        assert!(ThetaVector::new(vec![vec![1, 3], vec![2, 4]], w.alphabet()).is_err());
    }

    #[test]
    fn star_worked_example() {
        let rho = MultiPermutation::parse_with(&MultiSet::redundancy(4, 3), "0,6,0,0,5,7,0")
            .unwrap();
        let sigma = perm("2,4,1,3");
        assert_eq!(star(&sigma, &rho).unwrap().seq(), &[2, 6, 4, 1, 5, 7, 3]);
    }

    #[test]
    fn star_small_cases() {
        let rho = MultiPermutation::parse_with(&MultiSet::redundancy(1, 1), "0,2").unwrap();
        assert_eq!(star(&perm("1"), &rho).unwrap().seq(), &[1, 2]);

        let rho = MultiPermutation::parse_with(&MultiSet::redundancy(2, 1), "3,0,0").unwrap();
        assert_eq!(star(&perm("2,1"), &rho).unwrap().seq(), &[3, 2, 1]);
    }

    #[test]
    fn star_rejects_alphabet_mismatch() {
        let rho = MultiPermutation::parse_with(&MultiSet::redundancy(3, 1), "0,4,0,0").unwrap();
        assert!(star(&perm("2,4,1,3"), &rho).is_err());
    }

    #[test]
    fn projections_worked_example() {
        let alpha = perm("2,5,4,1,3,6");
        assert_eq!(project_down(&alpha, 3).unwrap().seq(), &[2, 1, 3]);
        assert_eq!(project_zero(&alpha, 3).unwrap().seq(), &[0, 5, 4, 0, 0, 6]);
        assert_eq!(project_down(&alpha, 6).unwrap().seq(), alpha.seq());
        assert_eq!(project_zero(&alpha, 6).unwrap().seq(), &[0; 6]);
        assert!(project_down(&alpha, 0).is_err());
        assert!(project_down(&alpha, 7).is_err());
    }

    #[test]
    fn general_projections_contract_and_invert() {
        // substitution with a multi-set information word, all pairs
        let info: MultiSet = "1^2+2".parse().unwrap();
        let rho_alphabet: MultiSet = "0^3+4^2".parse().unwrap();
        let infos: Vec<MultiPermutation> = info.orderings().collect();
        let rhos: Vec<MultiPermutation> = rho_alphabet.orderings().collect();
        let mut words = Vec::new();
        for kappa in &infos {
            for rho in &rhos {
                let word = substitute_zeros(kappa, rho).unwrap();
                assert_eq!(project_to_info(&word, &info).unwrap(), *kappa);
                assert_eq!(project_info_to_zero(&word, &info).unwrap(), *rho);
                words.push((kappa.clone(), rho.clone(), word));
            }
        }
        for (k1, r1, w1) in &words {
            for (k2, r2, w2) in &words {
                let dw = kendall_distance(w1, w2).unwrap();
                let dk = kendall_distance(k1, k2).unwrap();
                let dr = kendall_distance(r1, r2).unwrap();
                // composed distance dominates the parts, and both
                // projections contract
                assert!(dw >= dk + dr, "{w1} vs {w2}: {dw} < {dk} + {dr}");
            }
        }
    }

    #[test]
    fn star_projections_invert() {
        // (sigma * rho) projected back gives sigma and rho
        for k in 1..=3usize {
            for r in 1..=2usize {
                let alphabet = MultiSet::redundancy(k, r);
                for sigma in MultiSet::symmetric(k).orderings() {
                    let sigma = Permutation::from_multi(sigma).unwrap();
                    for rho in alphabet.orderings() {
                        let word = star(&sigma, &rho).unwrap();
                        assert_eq!(project_down(&word, k).unwrap(), sigma);
                        assert_eq!(project_zero(&word, k).unwrap(), rho);
                    }
                }
            }
        }
    }

    #[test]
    fn inversion_counters_agree() {
        let cases: Vec<Vec<usize>> = vec![
            vec![],
            vec![0],
            vec![3, 2, 1, 0],
            vec![2, 4, 1, 3, 0, 5],
            vec![1, 1, 0, 2, 2, 0],
        ];
        for case in cases {
            assert_eq!(count_inversions(&case), count_inversions_naive(&case));
        }
    }

    #[test]
    fn distance_matches_bfs_exhaustively_on_small_space() {
        let ms = MultiSet::new(vec![(1, 2), (2, 2)]).unwrap();
        let words: Vec<MultiPermutation> = ms.orderings().collect();
        for a in &words {
            for b in &words {
                assert_eq!(
                    kendall_distance(a, b).unwrap(),
                    bfs_distance(a, b),
                    "mismatch for {a} vs {b}"
                );
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_word() -> impl Strategy<Value = MultiPermutation> {
            prop::collection::vec(1u32..=3, 2..=7)
                .prop_map(|seq| MultiPermutation::from_seq(seq).unwrap())
        }

        fn reorder(w: &MultiPermutation, seed: u64) -> MultiPermutation {
            // deterministic shuffle of the same alphabet
            let mut seq = w.seq().to_vec();
            let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
            for i in (1..seq.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                seq.swap(i, (state >> 33) as usize % (i + 1));
            }
            MultiPermutation::trusted(w.alphabet().clone(), seq)
        }

        proptest! {
            #[test]
            fn distance_is_a_metric(w in arb_word(), s1 in 0u64..1000, s2 in 0u64..1000) {
                let a = reorder(&w, s1);
                let b = reorder(&w, s2);
                let dab = kendall_distance(&a, &b).unwrap();
                prop_assert_eq!(kendall_distance(&b, &a).unwrap(), dab);
                prop_assert_eq!(dab == 0, a == b);
                let dwa = kendall_distance(&w, &a).unwrap();
                let dwb = kendall_distance(&w, &b).unwrap();
                prop_assert!(dab <= dwa + dwb);
            }

            #[test]
            fn merge_count_matches_reference(values in prop::collection::vec(0usize..50, 0..60)) {
                prop_assert_eq!(count_inversions(&values), count_inversions_naive(&values));
            }
        }
    }
}
