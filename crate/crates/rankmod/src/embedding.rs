//! The inversion-vector embedding of multi-permutations into integer boxes,
//! and the Manhattan and Lee distances on its range.
//!
//! For a word over `{v_1^{m_1}, ..., v_l^{m_l}}`, the embedding records, for
//! the s-th occurrence of each rank `v_i` with `i >= 2`, how many strictly
//! smaller elements appear to its right. The image is the set of vectors
//! whose block for rank index `i+1` has entries in `[0, n_i]` and is
//! non-increasing; the embedding is a bijection onto that set, which is
//! checked exhaustively in the test suites rather than assumed.

use std::fmt;

use crate::error::{Error, Result};
use crate::multiset::{MultiPermutation, MultiSet};

/// The embedding image of a multi-permutation: `l - 1` blocks of
/// non-increasing counts, stored flat in block order (rank index 2 first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InversionVector {
    flat: Vec<u64>,
    block_lens: Vec<usize>,
    block_bounds: Vec<u64>,
}

impl InversionVector {
    /// Validates a flat vector against the block structure of `alphabet`.
    pub fn from_flat(flat: Vec<u64>, alphabet: &MultiSet) -> Result<Self> {
        let (block_lens, block_bounds) = block_shape(alphabet);
        let expected: usize = block_lens.iter().sum();
        if flat.len() != expected {
            return Err(Error::LengthMismatch {
                left: flat.len(),
                right: expected,
            });
        }
        let iv = InversionVector {
            flat,
            block_lens,
            block_bounds,
        };
        iv.validate()?;
        Ok(iv)
    }

    /// Validates explicit blocks against `alphabet`.
    pub fn from_blocks(blocks: Vec<Vec<u64>>, alphabet: &MultiSet) -> Result<Self> {
        let flat = blocks.concat();
        let iv = InversionVector::from_flat(flat, alphabet)?;
        if blocks.len() != iv.block_lens.len()
            || blocks
                .iter()
                .zip(&iv.block_lens)
                .any(|(b, &len)| b.len() != len)
        {
            return Err(Error::InvalidInversionVector(
                "block lengths do not match the alphabet".into(),
            ));
        }
        Ok(iv)
    }

    fn validate(&self) -> Result<()> {
        for (b, block) in self.blocks().enumerate() {
            let bound = self.block_bounds[b];
            for &x in block {
                if x > bound {
                    return Err(Error::EntryOutOfRange { value: x, max: bound });
                }
            }
            if block.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidInversionVector(format!(
                    "block {b} is not non-increasing"
                )));
            }
        }
        Ok(())
    }

    /// Flat entries in block order; entry `i` pairs with check coefficient
    /// `h_{i+1}` in the congruence codes.
    pub fn flat(&self) -> &[u64] {
        &self.flat
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[u64]> {
        let mut start = 0;
        self.block_lens.iter().map(move |&len| {
            let block = &self.flat[start..start + len];
            start += len;
            block
        })
    }

    /// Inclusive per-coordinate maxima, flattened like [`Self::flat`].
    pub fn bounds(&self) -> Vec<u64> {
        self.block_lens
            .iter()
            .zip(&self.block_bounds)
            .flat_map(|(&len, &bound)| std::iter::repeat(bound).take(len))
            .collect()
    }
}

impl fmt::Display for InversionVector {
    /// Blocks separated by `;`, entries by `,` — e.g. `2,1;2,2;3,0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for block in self.blocks() {
            if !first {
                write!(f, ";")?;
            }
            first = false;
            let entries: Vec<String> = block.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", entries.join(","))?;
        }
        Ok(())
    }
}

/// Parses the `;`/`,` text form and validates it against `alphabet`.
pub fn parse_inversion_vector(s: &str, alphabet: &MultiSet) -> Result<InversionVector> {
    let blocks: Vec<Vec<u64>> = s
        .split(';')
        .map(|block| {
            block
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|e| Error::Parse(format!("entry {t:?}: {e}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    InversionVector::from_blocks(blocks, alphabet)
}

/// Block lengths `m_2..m_l` and bounds `n_1..n_{l-1}` for an alphabet.
fn block_shape(alphabet: &MultiSet) -> (Vec<usize>, Vec<u64>) {
    let sums = alphabet.prefix_sums();
    let lens = (1..alphabet.num_ranks())
        .map(|i| alphabet.multiplicity(i))
        .collect();
    let bounds = (1..alphabet.num_ranks()).map(|i| sums[i] as u64).collect();
    (lens, bounds)
}

/// Maximum flat entries of the embedding image for `alphabet`, i.e. the box
/// a congruence code over this space must contain.
pub fn embedding_bounds(alphabet: &MultiSet) -> Vec<u64> {
    let (lens, bounds) = block_shape(alphabet);
    lens.iter()
        .zip(&bounds)
        .flat_map(|(&len, &bound)| std::iter::repeat(bound).take(len))
        .collect()
}

/// The embedding: for the s-th occurrence of each rank beyond the lowest,
/// counts the strictly smaller elements to its right.
pub fn psi(w: &MultiPermutation) -> InversionVector {
    let alphabet = w.alphabet();
    let n = w.len();
    let (block_lens, block_bounds) = block_shape(alphabet);

    // smaller_right[j] = number of elements strictly below w[j] to its right,
    // accumulated per rank index via suffix counts.
    let mut flat = Vec::with_capacity(n - alphabet.multiplicity(0));
    for i in 1..alphabet.num_ranks() {
        let rank = alphabet.rank(i);
        let mut below = 0u64;
        let mut counts = vec![0u64; n]; // counts[j] for occurrences of `rank` at j
        for j in (0..n).rev() {
            let v = w.seq()[j];
            if v == rank {
                counts[j] = below;
            }
            if v < rank {
                below += 1;
            }
        }
        for j in 0..n {
            if w.seq()[j] == rank {
                flat.push(counts[j]);
            }
        }
    }
    let iv = InversionVector {
        flat,
        block_lens,
        block_bounds,
    };
    debug_assert!(iv.validate().is_ok());
    iv
}

/// The inverse embedding: rebuilds the word rank by rank, inserting the
/// occurrences of each rank so that the s-th one has exactly `x_{i,s}`
/// smaller elements to its right.
pub fn psi_inverse(x: &InversionVector, alphabet: &MultiSet) -> Result<MultiPermutation> {
    let (block_lens, block_bounds) = block_shape(alphabet);
    if x.block_lens != block_lens || x.block_bounds != block_bounds {
        return Err(Error::InvalidInversionVector(
            "vector shape does not match the alphabet".into(),
        ));
    }
    let mut word: Vec<u32> = std::iter::repeat(alphabet.rank(0))
        .take(alphabet.multiplicity(0))
        .collect();
    for (i, block) in x.blocks().enumerate() {
        let rank = alphabet.rank(i + 1);
        let placed = word.len(); // all currently placed elements are smaller
        let mut merged = Vec::with_capacity(placed + block.len());
        let mut occ = 0;
        for (consumed, &old) in word.iter().enumerate() {
            while occ < block.len() && (placed as u64 - block[occ]) == consumed as u64 {
                merged.push(rank);
                occ += 1;
            }
            merged.push(old);
        }
        while occ < block.len() {
            debug_assert_eq!(block[occ], 0);
            merged.push(rank);
            occ += 1;
        }
        word = merged;
    }
    Ok(MultiPermutation::trusted(alphabet.clone(), word))
}

/// Sum of absolute coordinate differences.
pub fn manhattan_distance(x: &[u64], y: &[u64]) -> Result<u64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(x.iter().zip(y).map(|(&a, &b)| a.abs_diff(b)).sum())
}

/// Manhattan weight of an integer error pattern.
pub fn manhattan_weight(e: &[i64]) -> u64 {
    e.iter().map(|&v| v.unsigned_abs()).sum()
}

/// Cyclic (Lee) distance modulo `q`; entries must lie in `[0, q)`.
pub fn lee_distance(x: &[u64], y: &[u64], q: u64) -> Result<u64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let mut total = 0;
    for (&a, &b) in x.iter().zip(y) {
        if a >= q {
            return Err(Error::EntryOutOfRange { value: a, max: q - 1 });
        }
        if b >= q {
            return Err(Error::EntryOutOfRange { value: b, max: q - 1 });
        }
        let d = a.abs_diff(b);
        total += d.min(q - d);
    }
    Ok(total)
}
