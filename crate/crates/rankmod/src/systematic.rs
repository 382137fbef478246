//! Systematic t-error-correcting codes for permutations, and their
//! generalisation to multi-set information symbols.
//!
//! A `(k+r, k)` code stores an information permutation from `S_k`
//! untouched: the codeword is obtained by substituting it into the zeros of
//! a redundancy word `rho_j`, where the index `j` is a checksum of the
//! information word's inversion vector. The checksum coefficients have the
//! distinct-sums property at radius `t`, and the `rho_j` come from a code
//! with minimum Kendall distance `2t`, which together push the minimum
//! distance of the assembled code to `2t + 1`.
//!
//! No decoder is prescribed by the construction itself; the one here works
//! in two stages. The redundancy projection of the received word singles
//! out candidate indices `j` within distance `t`; for each, the remaining
//! error budget is spent on syndrome-decoding the information projection in
//! coset `j`, and a reassembled candidate is accepted only if it lies
//! within distance `t` of the received word. The final verification makes
//! miscorrection beyond the radius impossible.

use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::codes::{build_redundancy_code_over, enumerate_space, CodeRecipe, MultiPermCode};
use crate::congruence::{
    find_check_sequence, golomb_welch_check, mt_bound, next_prime_power, CheckSequence,
    SyndromeTable,
};
use crate::embedding::{embedding_bounds, manhattan_weight, psi, psi_inverse, InversionVector};
use crate::error::{Error, Result};
use crate::kendall::{kendall_distance, project_info_to_zero, project_to_info, substitute_zeros};
use crate::multiset::{MultiPermutation, MultiSet, Permutation};
use crate::rank::{rank, unrank};

/// Outcome of a successful decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub info: MultiPermutation,
    pub codeword: MultiPermutation,
    /// Kendall distance from the received word to the returned codeword.
    pub errors: u64,
}

/// Outcome of the exhaustive reference decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearestCodeword {
    pub info: MultiPermutation,
    pub codeword: MultiPermutation,
    pub distance: u64,
    /// Number of codewords attaining the minimum distance.
    pub ties: usize,
}

/// Systematic code over an information multi-set `K` and a redundancy
/// multi-set `R`: each ordering of `K` appears as the information
/// sub-word of exactly one codeword over `K ∪ R`.
#[derive(Debug, Clone)]
pub struct GeneralSystematicCode {
    info: MultiSet,
    t: u64,
    check: CheckSequence,
    rhos: Vec<MultiPermutation>,
    rho_alphabet: MultiSet,
    word_alphabet: MultiSet,
    redundancy_recipe: CodeRecipe,
    table: SyndromeTable,
}

impl GeneralSystematicCode {
    /// Builds the code for information multi-set `info` and redundancy
    /// multi-set `redundancy` (rank 0 excluded, disjoint from `info`).
    pub fn build(info: &MultiSet, redundancy: &MultiSet, t: u64) -> Result<Self> {
        if redundancy.rank_index(0).is_some() {
            return Err(Error::InvalidMultiSet(
                "rank 0 is reserved and cannot be a redundancy rank".into(),
            ));
        }
        let rho_alphabet =
            MultiSet::new(vec![(0, info.len())])?.union_disjoint(redundancy)?;
        // `union_disjoint` below rejects overlapping information/redundancy ranks.
        let _ = info.union_disjoint(redundancy)?;
        Self::build_over(info, rho_alphabet, t)
    }

    fn build_over(info: &MultiSet, rho_alphabet: MultiSet, t: u64) -> Result<Self> {
        if info.rank_index(0).is_some() {
            return Err(Error::InvalidMultiSet(
                "rank 0 is reserved and cannot be an information rank".into(),
            ));
        }
        let dims = embedding_bounds(info).len();
        let check = if t == 0 {
            CheckSequence::trivial(dims)
        } else if dims == 0 {
            CheckSequence::new(vec![], 1, t)?
        } else if t == 1 {
            golomb_welch_check(dims)?
        } else {
            let budget = mt_bound(next_prime_power(dims.saturating_sub(1) as u64), t)?;
            find_check_sequence(dims, t, budget)?
        };

        let (rhos, redundancy_recipe) = if t == 0 {
            (vec![rho_alphabet.sorted_word()], CodeRecipe::FullSpace)
        } else {
            let redundancy_code = build_redundancy_code_over(&rho_alphabet, t)?;
            if (redundancy_code.len() as u64) < check.modulus {
                return Err(Error::Infeasible {
                    required: check.modulus,
                    achieved: redundancy_code.len() as u64,
                });
            }
            let rhos = redundancy_code.codewords()[..check.modulus as usize].to_vec();
            (rhos, redundancy_code.recipe().clone())
        };

        Self::assemble(info.clone(), rho_alphabet, t, check, rhos, redundancy_recipe)
    }

    /// Assembles and validates a code from its parts (used by the builder
    /// and by deserialisation).
    fn assemble(
        info: MultiSet,
        rho_alphabet: MultiSet,
        t: u64,
        check: CheckSequence,
        rhos: Vec<MultiPermutation>,
        redundancy_recipe: CodeRecipe,
    ) -> Result<Self> {
        check.validate()?;
        if check.radius != t {
            return Err(Error::InvalidCodeFile(format!(
                "check radius {} does not match t = {t}",
                check.radius
            )));
        }
        if check.len() != embedding_bounds(&info).len() {
            return Err(Error::InvalidCodeFile(format!(
                "check length {} does not match the information alphabet",
                check.len()
            )));
        }
        if rhos.len() as u64 != check.modulus {
            return Err(Error::InvalidCodeFile(format!(
                "{} redundancy words for modulus {}",
                rhos.len(),
                check.modulus
            )));
        }
        for rho in &rhos {
            if rho.alphabet() != &rho_alphabet {
                return Err(Error::InvalidCodeFile(format!(
                    "redundancy word [{rho}] is not over {rho_alphabet}"
                )));
            }
        }
        for a in 0..rhos.len() {
            for b in a + 1..rhos.len() {
                let d = kendall_distance(&rhos[a], &rhos[b])?;
                if d < 2 * t {
                    return Err(Error::InvalidCodeFile(format!(
                        "redundancy words {a} and {b} are at distance {d} < {}",
                        2 * t
                    )));
                }
            }
        }
        let nonzero: Vec<(u32, usize)> = rho_alphabet
            .entries()
            .iter()
            .copied()
            .filter(|&(v, _)| v != 0)
            .collect();
        let word_alphabet = if nonzero.is_empty() {
            info.clone()
        } else {
            info.union_disjoint(&MultiSet::new(nonzero)?)?
        };
        let table = SyndromeTable::build(&check);
        Ok(GeneralSystematicCode {
            info,
            t,
            check,
            rhos,
            rho_alphabet,
            word_alphabet,
            redundancy_recipe,
            table,
        })
    }

    pub fn info_alphabet(&self) -> &MultiSet {
        &self.info
    }

    /// The alphabet `{0^k} ∪ R` of the redundancy words.
    pub fn rho_alphabet(&self) -> &MultiSet {
        &self.rho_alphabet
    }

    /// The alphabet `K ∪ R` of the codewords.
    pub fn word_alphabet(&self) -> &MultiSet {
        &self.word_alphabet
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn check(&self) -> &CheckSequence {
        &self.check
    }

    pub fn modulus(&self) -> u64 {
        self.check.modulus
    }

    pub fn rhos(&self) -> &[MultiPermutation] {
        &self.rhos
    }

    pub fn redundancy_recipe(&self) -> &CodeRecipe {
        &self.redundancy_recipe
    }

    /// Number of codewords, `|S(K)|`.
    pub fn size(&self) -> BigUint {
        self.info.space_size()
    }

    /// The checksum `j` of an information word: its inversion vector dotted
    /// with the check coefficients, modulo the number of redundancy words.
    pub fn checksum(&self, info: &MultiPermutation) -> Result<u64> {
        if info.alphabet() != &self.info {
            return Err(Error::AlphabetMismatch);
        }
        self.check.weighted_sum(psi(info).flat())
    }

    /// The unique codeword carrying `info`.
    pub fn encode(&self, info: &MultiPermutation) -> Result<MultiPermutation> {
        let j = self.checksum(info)?;
        substitute_zeros(info, &self.rhos[j as usize])
    }

    /// Two-stage decoding. Returns the unique codeword within distance `t`
    /// of `received`, or `None` when there is none (detected but
    /// uncorrectable). Never returns a codeword farther than `t` away.
    pub fn decode(&self, received: &MultiPermutation) -> Result<Option<Decoded>> {
        if received.alphabet() != &self.word_alphabet {
            return Err(Error::InvalidWord(format!(
                "received word is not over {}",
                self.word_alphabet
            )));
        }
        // Stage 1: the redundancy projection selects candidate indices.
        let rho_received = project_info_to_zero(received, &self.info)?;
        let mut candidates = Vec::new();
        for (j, rho) in self.rhos.iter().enumerate() {
            let d = kendall_distance(&rho_received, rho)?;
            if d <= self.t {
                candidates.push((d, j));
            }
        }
        candidates.sort_unstable();

        // Stage 2: spend the remaining budget on the information projection.
        let info_received = project_to_info(received, &self.info)?;
        let y = psi(&info_received);
        let sum = self.check.weighted_sum(y.flat())?;
        let modulus = self.check.modulus;
        for (rho_distance, j) in candidates {
            let budget = self.t - rho_distance;
            let syndrome = (sum + modulus - j as u64) % modulus;
            let Some(e) = self.table.pattern(syndrome) else {
                continue;
            };
            if manhattan_weight(e) > budget {
                continue;
            }
            let mut corrected = Vec::with_capacity(y.flat().len());
            let mut negative = false;
            for (&yi, &ei) in y.flat().iter().zip(e) {
                let c = yi as i64 - ei;
                if c < 0 {
                    negative = true;
                    break;
                }
                corrected.push(c as u64);
            }
            if negative {
                continue;
            }
            // Outside the embedding image means no information word fits.
            let Ok(x) = InversionVector::from_flat(corrected, &self.info) else {
                continue;
            };
            let info = psi_inverse(&x, &self.info)?;
            let codeword = substitute_zeros(&info, &self.rhos[j])?;
            let errors = kendall_distance(received, &codeword)?;
            if errors <= self.t {
                return Ok(Some(Decoded {
                    info,
                    codeword,
                    errors,
                }));
            }
        }
        Ok(None)
    }

    /// Exhaustive nearest-codeword scan; the reference the two-stage
    /// decoder is validated against.
    pub fn decode_bruteforce(&self, received: &MultiPermutation) -> Result<NearestCodeword> {
        if received.alphabet() != &self.word_alphabet {
            return Err(Error::InvalidWord(format!(
                "received word is not over {}",
                self.word_alphabet
            )));
        }
        let mut best: Option<NearestCodeword> = None;
        for info in enumerate_space(&self.info)? {
            let codeword = self.encode(&info)?;
            let distance = kendall_distance(received, &codeword)?;
            match &mut best {
                Some(b) if distance < b.distance => {
                    best = Some(NearestCodeword {
                        info,
                        codeword,
                        distance,
                        ties: 1,
                    });
                }
                Some(b) if distance == b.distance => b.ties += 1,
                None => {
                    best = Some(NearestCodeword {
                        info,
                        codeword,
                        distance,
                        ties: 1,
                    });
                }
                _ => {}
            }
        }
        Ok(best.expect("information space is nonempty"))
    }

    /// All codewords, in the information space's lexicographic order.
    pub fn codewords(&self) -> Result<Vec<MultiPermutation>> {
        enumerate_space(&self.info)?.map(|w| self.encode(&w)).collect()
    }

    /// Exact minimum pairwise distance, checked against `2t + 1`.
    pub fn certified_min_distance(&self) -> Result<u64> {
        let code = MultiPermCode::new(
            self.word_alphabet.clone(),
            self.codewords()?,
            2 * self.t + 1,
            CodeRecipe::FullSpace,
        )?;
        crate::codes::certify_min_distance(&code)
    }
}

/// A `(k+r, k)` systematic code for permutations: the general construction
/// specialised to `K = {1..k}`, `R = {k+1..k+r}`.
#[derive(Debug, Clone)]
pub struct SystematicCode {
    k: usize,
    r: usize,
    general: GeneralSystematicCode,
}

impl SystematicCode {
    /// Builds the `(k+r, k)` code correcting `t` errors.
    ///
    /// `t = 0` (with any `r`, including 0) degenerates to the uncoded space.
    /// Fails with [`Error::Infeasible`] when the redundancy code is smaller
    /// than the checksum modulus.
    pub fn build(k: usize, r: usize, t: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidMultiSet(
                "at least two information symbols are required".into(),
            ));
        }
        let info = MultiSet::symmetric(k);
        let general =
            GeneralSystematicCode::build_over(&info, MultiSet::redundancy(k, r), t)?;
        Ok(SystematicCode { k, r, general })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> u64 {
        self.general.t
    }

    pub fn check(&self) -> &CheckSequence {
        &self.general.check
    }

    pub fn modulus(&self) -> u64 {
        self.general.modulus()
    }

    pub fn rhos(&self) -> &[MultiPermutation] {
        self.general.rhos()
    }

    pub fn general(&self) -> &GeneralSystematicCode {
        &self.general
    }

    fn expect_info(&self, sigma: &Permutation) -> Result<()> {
        if !sigma.is_one_based() || sigma.len() != self.k {
            return Err(Error::InvalidWord(format!(
                "[{sigma}] is not a permutation of [1, {}]",
                self.k
            )));
        }
        Ok(())
    }

    /// The checksum residue of an information permutation.
    pub fn checksum(&self, sigma: &Permutation) -> Result<u64> {
        self.expect_info(sigma)?;
        self.general.checksum(sigma.as_multi())
    }

    /// Encodes `sigma` into the unique codeword projecting down to it.
    pub fn encode(&self, sigma: &Permutation) -> Result<Permutation> {
        self.expect_info(sigma)?;
        Permutation::from_multi(self.general.encode(sigma.as_multi())?)
    }

    /// Encodes the data integer `d` in `[0, k!)` via enumerative unranking.
    pub fn encode_data(&self, d: &BigUint) -> Result<Permutation> {
        let sigma = unrank(d, self.general.info_alphabet())?;
        Permutation::from_multi(self.general.encode(&sigma)?)
    }

    /// The data integer of an information permutation.
    pub fn data_of(&self, sigma: &Permutation) -> Result<BigUint> {
        self.expect_info(sigma)?;
        Ok(rank(sigma.as_multi()))
    }

    /// Two-stage decoding of a received permutation of `[1, k+r]`.
    pub fn decode(&self, received: &Permutation) -> Result<Option<Corrected>> {
        let decoded = self.general.decode(received.as_multi())?;
        decoded
            .map(|d| {
                Ok(Corrected {
                    info: Permutation::from_multi(d.info)?,
                    codeword: Permutation::from_multi(d.codeword)?,
                    errors: d.errors,
                })
            })
            .transpose()
    }

    /// Exhaustive nearest-codeword reference decoder.
    pub fn decode_bruteforce(&self, received: &Permutation) -> Result<NearestCodeword> {
        self.general.decode_bruteforce(received.as_multi())
    }

    /// All `k!` codewords.
    pub fn codewords(&self) -> Result<Vec<Permutation>> {
        self.general
            .codewords()?
            .into_iter()
            .map(Permutation::from_multi)
            .collect()
    }

    pub fn certified_min_distance(&self) -> Result<u64> {
        self.general.certified_min_distance()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&CodeFile::from(self))?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let file: CodeFile = serde_json::from_str(json)?;
        file.into_code()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}

/// Successful decode with permutation-typed parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corrected {
    pub info: Permutation,
    pub codeword: Permutation,
    pub errors: u64,
}

/// On-disk form of a [`SystematicCode`].
#[derive(Debug, Serialize, Deserialize)]
struct CodeFile {
    k: usize,
    r: usize,
    t: u64,
    h: Vec<u64>,
    modulus: u64,
    rhos: Vec<Vec<u32>>,
    recipe: CodeRecipe,
}

impl From<&SystematicCode> for CodeFile {
    fn from(code: &SystematicCode) -> Self {
        CodeFile {
            k: code.k,
            r: code.r,
            t: code.t(),
            h: code.check().h.clone(),
            modulus: code.modulus(),
            rhos: code.rhos().iter().map(|w| w.seq().to_vec()).collect(),
            recipe: code.general.redundancy_recipe.clone(),
        }
    }
}

impl CodeFile {
    fn into_code(self) -> Result<SystematicCode> {
        if self.k < 2 {
            return Err(Error::InvalidCodeFile("k must be at least 2".into()));
        }
        let check = CheckSequence {
            h: self.h,
            modulus: self.modulus,
            radius: self.t,
        };
        check
            .validate()
            .map_err(|e| Error::InvalidCodeFile(e.to_string()))?;
        let rho_alphabet = MultiSet::redundancy(self.k, self.r);
        let mut rhos = Vec::with_capacity(self.rhos.len());
        for seq in self.rhos {
            rhos.push(
                MultiPermutation::new(rho_alphabet.clone(), seq)
                    .map_err(|e| Error::InvalidCodeFile(e.to_string()))?,
            );
        }
        let general = GeneralSystematicCode::assemble(
            MultiSet::symmetric(self.k),
            rho_alphabet,
            self.t,
            check,
            rhos,
            self.recipe,
        )?;
        Ok(SystematicCode {
            k: self.k,
            r: self.r,
            general,
        })
    }
}

/// Result of the redundancy search for a `(k, t)` pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParameterAdvice {
    pub k: usize,
    pub t: u64,
    /// Smallest redundancy length for which the construction succeeded.
    pub r: usize,
    pub modulus: u64,
    /// Size of the redundancy code the builder drew from.
    pub redundancy_code_size: u64,
    /// Exponent `log_k t` of the requested radius.
    pub epsilon: f64,
    /// Achieved ratio `r / t`.
    pub mu: f64,
    /// Whether `mu` clears the asymptotic threshold (`1 + epsilon` for
    /// `epsilon <= 1`, else `1 + 1/epsilon`). Reported, never required.
    pub regime_satisfied: Option<bool>,
}

/// Searches `r = t+1, t+2, ...` for the smallest redundancy the builder
/// certifies, reporting the achieved parameters.
pub fn advise_parameters(k: usize, t: u64) -> Result<(ParameterAdvice, SystematicCode)> {
    const EXTRA: usize = 6;
    if t == 0 {
        let code = SystematicCode::build(k, 0, 0)?;
        let advice = ParameterAdvice {
            k,
            t,
            r: 0,
            modulus: 1,
            redundancy_code_size: 1,
            epsilon: 0.0,
            mu: 0.0,
            regime_satisfied: None,
        };
        return Ok((advice, code));
    }
    let start = t as usize + 1;
    let mut last_infeasible = None;
    for r in start..start + EXTRA {
        match SystematicCode::build(k, r, t) {
            Ok(code) => {
                let redundancy_code_size =
                    build_redundancy_code_over(code.general.rho_alphabet(), t)?.len() as u64;
                let epsilon = (t as f64).ln() / (k as f64).ln();
                let mu = r as f64 / t as f64;
                let threshold = if epsilon <= 1.0 {
                    1.0 + epsilon
                } else {
                    1.0 + 1.0 / epsilon
                };
                let advice = ParameterAdvice {
                    k,
                    t,
                    r,
                    modulus: code.modulus(),
                    redundancy_code_size,
                    epsilon,
                    mu,
                    regime_satisfied: Some(mu > threshold),
                };
                return Ok((advice, code));
            }
            Err(Error::Infeasible { required, achieved }) => {
                last_infeasible = Some((required, achieved));
            }
            Err(e) => return Err(e),
        }
    }
    match last_infeasible {
        Some((required, achieved)) => Err(Error::Infeasible { required, achieved }),
        None => Err(Error::BudgetExceeded {
            size: format!("no feasible r in [{start}, {})", start + EXTRA),
            budget: EXTRA as u64,
        }),
    }
}
