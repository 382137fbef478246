//! Error-correcting codes inside an ordering space: lifting checksum codes
//! through the inversion-vector embedding, parity splitting, and the
//! redundancy codes consumed by the systematic construction.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::congruence::{
    find_check_sequence, golomb_welch_check, mt_bound, next_prime_power, CheckSequence,
    CongruenceCode,
};
use crate::embedding::{embedding_bounds, psi};
use crate::error::{Error, Result};
use crate::kendall::kendall_distance;
use crate::multiset::{MultiPermutation, MultiSet, SpaceIter};

/// Cap on explicit enumeration of an ordering space.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

/// All orderings of `alphabet` in lexicographic order, provided the space
/// fits the enumeration budget.
pub fn enumerate_space(alphabet: &MultiSet) -> Result<SpaceIter> {
    let size = alphabet.space_size();
    if size > BigUint::from(ENUMERATION_BUDGET) {
        return Err(Error::BudgetExceeded {
            size: size.to_string(),
            budget: ENUMERATION_BUDGET,
        });
    }
    Ok(alphabet.orderings())
}

/// How a code's codeword list was produced; enough to rebuild it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CodeRecipe {
    /// Every ordering of the alphabet.
    FullSpace,
    /// Orderings whose embedding lands in a checksum-code coset.
    LiftedCoset { check: CheckSequence, residue: u64 },
    /// One distance-parity class of an inner code, relative to an anchor.
    ParitySplit {
        inner: Box<CodeRecipe>,
        /// Text form of the anchor word.
        anchor: String,
        /// 0 for the even-distance class, 1 for the odd one.
        parity: u8,
    },
}

/// An explicit code in the ordering space of `alphabet` with a claimed
/// minimum Kendall distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPermCode {
    alphabet: MultiSet,
    codewords: Vec<MultiPermutation>,
    design_distance: u64,
    recipe: CodeRecipe,
}

impl MultiPermCode {
    pub fn new(
        alphabet: MultiSet,
        codewords: Vec<MultiPermutation>,
        design_distance: u64,
        recipe: CodeRecipe,
    ) -> Result<Self> {
        for w in &codewords {
            if w.alphabet() != &alphabet {
                return Err(Error::AlphabetMismatch);
            }
        }
        Ok(MultiPermCode {
            alphabet,
            codewords,
            design_distance,
            recipe,
        })
    }

    /// The whole ordering space as a distance-1 code.
    pub fn full_space(alphabet: &MultiSet) -> Result<Self> {
        let codewords = enumerate_space(alphabet)?.collect();
        Ok(MultiPermCode {
            alphabet: alphabet.clone(),
            codewords,
            design_distance: 1,
            recipe: CodeRecipe::FullSpace,
        })
    }

    pub fn alphabet(&self) -> &MultiSet {
        &self.alphabet
    }

    /// Codewords in canonical (lexicographic) order.
    pub fn codewords(&self) -> &[MultiPermutation] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn design_distance(&self) -> u64 {
        self.design_distance
    }

    pub fn recipe(&self) -> &CodeRecipe {
        &self.recipe
    }
}

/// Lifts a checksum-code coset into the ordering space: the codewords are
/// the orderings whose embedding satisfies the congruence. The minimum
/// Kendall distance is at least the coset's Manhattan design distance
/// `2 * radius + 1`.
pub fn lift_lee_code(alphabet: &MultiSet, code: &CongruenceCode) -> Result<MultiPermCode> {
    let bounds = embedding_bounds(alphabet);
    if code.len() != bounds.len() {
        return Err(Error::DimensionMismatch(format!(
            "code length {} but embedding dimension {}",
            code.len(),
            bounds.len()
        )));
    }
    if bounds.iter().zip(&code.domain).any(|(&b, &d)| d < b) {
        return Err(Error::DimensionMismatch(
            "code box does not contain the embedding image".into(),
        ));
    }
    let mut codewords = Vec::new();
    for w in enumerate_space(alphabet)? {
        if code.contains(psi(&w).flat())? {
            codewords.push(w);
        }
    }
    Ok(MultiPermCode {
        alphabet: alphabet.clone(),
        codewords,
        design_distance: 2 * code.check.radius + 1,
        recipe: CodeRecipe::LiftedCoset {
            check: code.check.clone(),
            residue: code.residue,
        },
    })
}

/// Lifts the largest coset of a check sequence (ties broken by smallest
/// residue), returning the code and the chosen residue.
pub fn lift_best_coset(alphabet: &MultiSet, check: &CheckSequence) -> Result<(MultiPermCode, u64)> {
    let bounds = embedding_bounds(alphabet);
    let mut buckets = vec![0u64; check.modulus as usize];
    for w in enumerate_space(alphabet)? {
        buckets[check.weighted_sum(psi(&w).flat())? as usize] += 1;
    }
    let residue = (0..check.modulus).max_by_key(|&j| (buckets[j as usize], std::cmp::Reverse(j)))
        .expect("nonzero modulus");
    let code = CongruenceCode::new(check.clone(), residue, bounds)?;
    Ok((lift_lee_code(alphabet, &code)?, residue))
}

/// Splits a code into its even and odd distance-parity classes relative to
/// `anchor`. Distances within a class are even, so an odd design distance
/// `d` improves to `d + 1`.
pub fn parity_split(
    code: &MultiPermCode,
    anchor: &MultiPermutation,
) -> Result<(MultiPermCode, MultiPermCode)> {
    if anchor.alphabet() != code.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for w in &code.codewords {
        if kendall_distance(w, anchor)? % 2 == 0 {
            even.push(w.clone());
        } else {
            odd.push(w.clone());
        }
    }
    let design = code.design_distance + code.design_distance % 2;
    let recipe = |parity: u8| CodeRecipe::ParitySplit {
        inner: Box::new(code.recipe.clone()),
        anchor: anchor.to_string(),
        parity,
    };
    Ok((
        MultiPermCode {
            alphabet: code.alphabet.clone(),
            codewords: even,
            design_distance: design,
            recipe: recipe(0),
        },
        MultiPermCode {
            alphabet: code.alphabet.clone(),
            codewords: odd,
            design_distance: design,
            recipe: recipe(1),
        },
    ))
}

/// A code over `alphabet` with minimum Kendall distance at least `2t`,
/// built by parity-splitting either the full space (`t = 1`) or a lifted
/// `(t-1)`-error-correcting coset (`t >= 2`), keeping the larger class
/// (ties favour the even one).
pub fn build_redundancy_code_over(alphabet: &MultiSet, t: u64) -> Result<MultiPermCode> {
    let dims = embedding_bounds(alphabet).len();
    let inner = if t <= 1 || dims == 0 {
        MultiPermCode::full_space(alphabet)?
    } else if t == 2 {
        lift_best_coset(alphabet, &golomb_welch_check(dims)?)?.0
    } else {
        let budget = mt_bound(next_prime_power(dims.saturating_sub(1) as u64), t - 1)?;
        let check = find_check_sequence(dims, t - 1, budget)?;
        lift_best_coset(alphabet, &check)?.0
    };
    let anchor = alphabet.sorted_word();
    let (even, odd) = parity_split(&inner, &anchor)?;
    Ok(if odd.len() > even.len() { odd } else { even })
}

/// The redundancy code over `{0^k, k+1, ..., k+r}` for a target error
/// radius `t`.
pub fn build_redundancy_code(k: usize, r: usize, t: u64) -> Result<MultiPermCode> {
    build_redundancy_code_over(&MultiSet::redundancy(k, r), t)
}

/// Exact minimum pairwise Kendall distance of an explicit code, checked
/// against its design distance. Returns `u64::MAX` when there are fewer
/// than two codewords.
pub fn certify_min_distance(code: &MultiPermCode) -> Result<u64> {
    let words = &code.codewords;
    if words.len() < 2 {
        return Ok(u64::MAX);
    }
    let min = (0..words.len() - 1)
        .into_par_iter()
        .map(|i| {
            let mut best = u64::MAX;
            for j in i + 1..words.len() {
                let d = kendall_distance(&words[i], &words[j]).expect("same alphabet");
                best = best.min(d);
            }
            best
        })
        .min()
        .unwrap_or(u64::MAX);
    if min < code.design_distance {
        return Err(Error::CertificationFailed {
            found: min,
            design: code.design_distance,
        });
    }
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::golomb_welch_check;

    #[test]
    fn enumerate_space_counts() {
        let ms: MultiSet = "1+2".parse().unwrap();
        let all: Vec<_> = enumerate_space(&ms).unwrap().collect();
        assert_eq!(all.len(), 2);

        let ms: MultiSet = "1^2+2".parse().unwrap();
        assert_eq!(enumerate_space(&ms).unwrap().count(), 3);

        let ms = MultiSet::redundancy(4, 2);
        let words: Vec<_> = enumerate_space(&ms).unwrap().collect();
        assert_eq!(words.len(), 30);
        let mut dedup = words.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 30);
    }

    #[test]
    fn trivial_code_is_whole_space() {
        // modulus 1: every vector satisfies the congruence
        let ms: MultiSet = "1^2+2^2+3".parse().unwrap();
        let check = CheckSequence::trivial(3);
        assert!(check.validate().is_ok());
        let code = CongruenceCode::new(check, 0, embedding_bounds(&ms)).unwrap();
        let lifted = lift_lee_code(&ms, &code).unwrap();
        assert_eq!(lifted.len(), 30);

        // dimension mismatch is rejected
        let short = CongruenceCode::new(CheckSequence::trivial(2), 0, vec![2, 2]).unwrap();
        assert!(lift_lee_code(&ms, &short).is_err());
    }

    #[test]
    fn lifted_code_has_design_distance() {
        let ms: MultiSet = "1^2+2^2+3".parse().unwrap();
        let (code, _) = lift_best_coset(&ms, &golomb_welch_check(3).unwrap()).unwrap();
        assert!(code.len() >= 30 / 7);
        let d = certify_min_distance(&code).unwrap();
        assert!(d >= 3);
    }

    #[test]
    fn parity_split_of_redundancy_space() {
        let ms = MultiSet::redundancy(4, 2);
        let full = MultiPermCode::full_space(&ms).unwrap();
        let (even, odd) = parity_split(&full, &ms.sorted_word()).unwrap();
        assert_eq!(even.len(), 15);
        assert_eq!(odd.len(), 15);
        assert_eq!(certify_min_distance(&even).unwrap(), 2);
        assert_eq!(certify_min_distance(&odd).unwrap(), 2);
    }

    #[test]
    fn parity_split_of_singleton() {
        let ms: MultiSet = "1+2".parse().unwrap();
        let one = MultiPermCode::new(
            ms.clone(),
            vec![ms.sorted_word()],
            1,
            CodeRecipe::FullSpace,
        )
        .unwrap();
        let (even, odd) = parity_split(&one, &ms.sorted_word()).unwrap();
        assert_eq!((even.len(), odd.len()), (1, 0));
        assert_eq!(certify_min_distance(&even).unwrap(), u64::MAX);
    }

    #[test]
    fn redundancy_code_examples() {
        let code = build_redundancy_code(4, 2, 1).unwrap();
        assert_eq!(code.len(), 15);
        assert_eq!(code.design_distance(), 2);
        assert_eq!(certify_min_distance(&code).unwrap(), 2);
        // size bound (k+2)(k+1)/4 for the single-error recipe
        assert!(code.len() as u64 * 4 >= 6 * 5);
    }

    #[test]
    fn double_error_redundancy_code() {
        let code = build_redundancy_code(4, 3, 2).unwrap();
        assert!(certify_min_distance(&code).unwrap() >= 4);
        // size bound (k+3)(k+2)(k+1)/28
        assert!(code.len() as u64 * 28 >= 7 * 6 * 5);
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        // 11! = 39,916,800 exceeds the 10^7 budget
        let too_big = MultiSet::symmetric(11);
        assert!(matches!(
            enumerate_space(&too_big),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn certification_failure_is_reported() {
        let ms: MultiSet = "1+2+3".parse().unwrap();
        let all: Vec<_> = ms.orderings().collect();
        let bogus = MultiPermCode::new(ms, all, 5, CodeRecipe::FullSpace).unwrap();
        assert!(matches!(
            certify_min_distance(&bogus),
            Err(Error::CertificationFailed { found: 1, design: 5 })
        ));
    }
}
