//! Enumerative ranking: the bijection between orderings of a multi-set and
//! the integers `[0, |S(M)|)`, in lexicographic order.
//!
//! The index of a word is found by prefix counting: at each position, every
//! smaller available rank contributes the number of completions that start
//! with it, a multinomial count. Factorials overflow fixed-width integers
//! quickly, so all arithmetic is over big integers.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multiset::{factorial, MultiPermutation, MultiSet};

/// Orderings of the remaining counts: `(sum c_i)! / prod c_i!`.
fn completions(counts: &[usize]) -> BigUint {
    let total: usize = counts.iter().sum();
    let mut size = factorial(total);
    for &c in counts {
        size /= factorial(c);
    }
    size
}

/// Lexicographic index of `word` within the orderings of its alphabet.
pub fn rank(word: &MultiPermutation) -> BigUint {
    let alphabet = word.alphabet();
    let mut counts: Vec<usize> = alphabet.entries().iter().map(|&(_, m)| m).collect();
    let mut index = BigUint::zero();
    for &v in word.seq() {
        let idx = alphabet.rank_index(v).expect("rank in alphabet");
        for smaller in 0..idx {
            if counts[smaller] > 0 {
                counts[smaller] -= 1;
                index += completions(&counts);
                counts[smaller] += 1;
            }
        }
        counts[idx] -= 1;
    }
    index
}

/// The ordering of `alphabet` with lexicographic index `index`.
pub fn unrank(index: &BigUint, alphabet: &MultiSet) -> Result<MultiPermutation> {
    let size = alphabet.space_size();
    if index >= &size {
        return Err(Error::IndexOutOfRange {
            index: index.to_string(),
            size: size.to_string(),
        });
    }
    let mut counts: Vec<usize> = alphabet.entries().iter().map(|&(_, m)| m).collect();
    let mut remaining = index.clone();
    let mut seq = Vec::with_capacity(alphabet.len());
    for _ in 0..alphabet.len() {
        for i in 0..counts.len() {
            if counts[i] == 0 {
                continue;
            }
            counts[i] -= 1;
            let block = completions(&counts);
            if remaining < block {
                seq.push(alphabet.rank(i));
                break;
            }
            remaining -= block;
            counts[i] += 1;
        }
    }
    Ok(MultiPermutation::trusted(alphabet.clone(), seq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn boundary_values() {
        let ms: MultiSet = "1^2+2^2+3".parse().unwrap();
        assert_eq!(rank(&ms.sorted_word()), BigUint::zero());

        let last: Vec<_> = ms.orderings().collect();
        let last = last.last().unwrap().clone();
        assert_eq!(rank(&last), ms.space_size() - BigUint::one());

        assert_eq!(unrank(&BigUint::zero(), &ms).unwrap(), ms.sorted_word());
        assert!(unrank(&ms.space_size(), &ms).is_err());
    }

    #[test]
    fn small_multiset_enumeration_order() {
        let ms: MultiSet = "1^2+2".parse().unwrap();
        let words: Vec<MultiPermutation> = ms.orderings().collect();
        assert_eq!(words[0].seq(), &[1, 1, 2]);
        assert_eq!(words[1].seq(), &[1, 2, 1]);
        assert_eq!(words[2].seq(), &[2, 1, 1]);
        for (i, w) in words.iter().enumerate() {
            assert_eq!(rank(w), BigUint::from(i));
            assert_eq!(&unrank(&BigUint::from(i), &ms).unwrap(), w);
        }
    }

    #[test]
    fn round_trip_is_exhaustive_and_monotone() {
        let ms: MultiSet = "1^2+2^2+3".parse().unwrap();
        let mut previous: Option<BigUint> = None;
        let mut count = 0u32;
        for w in ms.orderings() {
            let r = rank(&w);
            assert_eq!(unrank(&r, &ms).unwrap(), w);
            if let Some(p) = previous {
                assert!(p < r, "rank not monotone in lexicographic order");
            }
            previous = Some(r);
            count += 1;
        }
        assert_eq!(count, 30);
    }

    #[test]
    fn large_factorials_do_not_overflow() {
        // 30! is far beyond u64; the index arithmetic must stay exact.
        let ms = MultiSet::symmetric(30);
        let last_seq: Vec<u32> = (1..=30).rev().collect();
        let w = MultiPermutation::new(ms.clone(), last_seq).unwrap();
        assert_eq!(rank(&w), ms.space_size() - BigUint::one());
        assert_eq!(unrank(&rank(&w), &ms).unwrap(), w);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn unrank_then_rank_is_identity(k in 1usize..=7, seed in 0u64..100000) {
                let ms = MultiSet::symmetric(k);
                let size: u64 = ms.space_size().try_into().unwrap();
                let index = BigUint::from(seed % size);
                let w = unrank(&index, &ms).unwrap();
                prop_assert_eq!(rank(&w), index);
            }
        }
    }
}
