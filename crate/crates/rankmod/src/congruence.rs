//! Checksum (congruence) codes over integer boxes.
//!
//! A check sequence `h_1..h_N` with modulus `M` and radius `t` has the
//! distinct-sums property: the sums `sum e_i * h_i` over all integer error
//! patterns of Manhattan weight at most `t` are pairwise distinct modulo
//! `M`. Fixing a residue `j` then carves the box into cosets
//! `{x : sum x_i * h_i = j (mod M)}` with minimum Manhattan distance at
//! least `2t + 1`, and the syndrome of a received vector identifies the
//! error pattern uniquely.
//!
//! All decoding here is in the Manhattan metric over bounded boxes; the
//! cyclic Lee distance appears only in the perfection checks.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::embedding::manhattan_weight;
use crate::error::{Error, Result};

/// Check coefficients `h`, modulus and error radius, with the distinct-sums
/// property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSequence {
    pub h: Vec<u64>,
    pub modulus: u64,
    pub radius: u64,
}

impl CheckSequence {
    /// Validates coefficient ranges and the distinct-sums property by full
    /// enumeration of the weight-bounded patterns.
    pub fn new(h: Vec<u64>, modulus: u64, radius: u64) -> Result<Self> {
        let check = CheckSequence { h, modulus, radius };
        check.validate()?;
        Ok(check)
    }

    /// The modulus-1 sequence: every vector is a codeword. Only meaningful
    /// at radius 0, where nothing is corrected.
    pub fn trivial(n: usize) -> Self {
        CheckSequence {
            h: vec![0; n],
            modulus: 1,
            radius: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.modulus == 0 {
            return Err(Error::InvalidCheckSequence("modulus is zero".into()));
        }
        for &hi in &self.h {
            if hi >= self.modulus || (hi == 0 && self.modulus > 1) {
                return Err(Error::InvalidCheckSequence(format!(
                    "coefficient {hi} outside (0, {})",
                    self.modulus
                )));
            }
        }
        if !has_distinct_sums(&self.h, self.modulus, self.radius) {
            return Err(Error::InvalidCheckSequence(format!(
                "weight-{} patterns collide modulo {}",
                self.radius, self.modulus
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// `sum v_i * h_i mod M` for a non-negative vector.
    pub fn weighted_sum(&self, v: &[u64]) -> Result<u64> {
        if v.len() != self.h.len() {
            return Err(Error::LengthMismatch {
                left: v.len(),
                right: self.h.len(),
            });
        }
        Ok(self
            .h
            .iter()
            .zip(v)
            .fold(0u64, |acc, (&hi, &vi)| (acc + (vi % self.modulus) * hi) % self.modulus))
    }

    fn pattern_sum(&self, e: &[i64]) -> u64 {
        let m = self.modulus as i64;
        let s = self
            .h
            .iter()
            .zip(e)
            .fold(0i64, |acc, (&hi, &ei)| (acc + (ei % m) * (hi as i64 % m)).rem_euclid(m));
        s as u64
    }
}

/// Calls `visit` on every integer vector of length `n` with Manhattan weight
/// at most `t`, each exactly once.
pub fn for_each_weight_pattern<F: FnMut(&[i64])>(n: usize, t: u64, mut visit: F) {
    let mut e = vec![0i64; n];
    visit(&e);
    fn recurse<F: FnMut(&[i64])>(e: &mut [i64], start: usize, left: u64, visit: &mut F) {
        for idx in start..e.len() {
            for mag in 1..=left {
                for sign in [1i64, -1] {
                    e[idx] = sign * mag as i64;
                    visit(e);
                    recurse(e, idx + 1, left - mag, visit);
                }
            }
            e[idx] = 0;
        }
    }
    if t > 0 {
        recurse(&mut e, 0, t, &mut visit);
    }
}

/// Number of integer vectors of length `n` with Manhattan weight at most `t`
/// (the volume of the radius-`t` ball, and a lower bound on any modulus).
pub fn pattern_count(n: usize, t: u64) -> u64 {
    let mut count = 0u64;
    for_each_weight_pattern(n, t, |_| count += 1);
    count
}

fn has_distinct_sums(h: &[u64], modulus: u64, radius: u64) -> bool {
    let check = CheckSequence {
        h: h.to_vec(),
        modulus,
        radius,
    };
    let mut seen = vec![false; modulus as usize];
    let mut ok = true;
    for_each_weight_pattern(h.len(), radius, |e| {
        if !ok {
            return;
        }
        let s = check.pattern_sum(e) as usize;
        if seen[s] {
            ok = false;
        } else {
            seen[s] = true;
        }
    });
    ok
}

/// The classical perfect single-error construction: `h_i = i` with modulus
/// `2N + 1`.
pub fn golomb_welch_check(n: usize) -> Result<CheckSequence> {
    if n == 0 {
        return Err(Error::InvalidCheckSequence("length must be at least 1".into()));
    }
    CheckSequence::new((1..=n as u64).collect(), 2 * n as u64 + 1, 1)
}

/// True for `q = p^a` with `p` prime and `a >= 1`, by trial factorisation.
pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut q = q;
    let mut p = 0;
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            while q % d == 0 {
                q /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        return true; // q itself is prime
    }
    q == 1
}

/// Modulus budget `M_t` for radius-`t` sequences of length up to `q + 1`:
/// `M = (q^{t+1} - 1)/(q - 1)`, scaled by `t(t+1)` for odd `t` and `t(t+2)`
/// for even `t`. `q` must be a prime power.
pub fn mt_bound(q: u64, t: u64) -> Result<u64> {
    if !is_prime_power(q) {
        return Err(Error::NotPrimePower(q));
    }
    let m = (q.pow(t as u32 + 1) - 1) / (q - 1);
    Ok(if t % 2 == 1 {
        t * (t + 1) * m
    } else {
        t * (t + 2) * m
    })
}

/// Smallest prime power `>= q`.
pub fn next_prime_power(q: u64) -> u64 {
    let mut q = q.max(2);
    while !is_prime_power(q) {
        q += 1;
    }
    q
}

/// Finds the smallest modulus `M <= m_max` admitting an increasing sequence
/// `h_1 < ... < h_n` with the distinct-sums property at radius `t`, by
/// backtracking over coefficient choices.
pub fn find_check_sequence(n: usize, t: u64, m_max: u64) -> Result<CheckSequence> {
    if n == 0 || t == 0 {
        return Err(Error::InvalidCheckSequence(
            "length and radius must be at least 1".into(),
        ));
    }
    let lower = pattern_count(n, t).max(n as u64 + 1);
    for modulus in lower..=m_max {
        // sums[]: weighted sums of all patterns over the chosen prefix,
        // paired with their remaining weight allowance.
        let mut chosen = Vec::with_capacity(n);
        let mut sums: Vec<(u64, u64)> = vec![(0, t)];
        if search_coefficients(n, modulus, 1, &mut chosen, &mut sums) {
            let check = CheckSequence {
                h: chosen,
                modulus,
                radius: t,
            };
            debug_assert!(check.validate().is_ok());
            return Ok(check);
        }
    }
    Err(Error::NoCheckSequence {
        n,
        t,
        budget: m_max,
    })
}

/// Depth-first search over increasing coefficients. `sums` carries, for every
/// pattern over the prefix, its sum modulo `modulus` and the weight still
/// available to later coordinates.
fn search_coefficients(
    n: usize,
    modulus: u64,
    min_h: u64,
    chosen: &mut Vec<u64>,
    sums: &mut Vec<(u64, u64)>,
) -> bool {
    if chosen.len() == n {
        return true;
    }
    // Leave room for the remaining strictly increasing coefficients.
    let slots_after = (n - chosen.len() - 1) as u64;
    if modulus <= slots_after + 1 {
        return false;
    }
    'candidates: for h in min_h..modulus - slots_after {
        let mut seen = vec![false; modulus as usize];
        let mut added: Vec<(u64, u64)> = Vec::new();
        for &(s, _) in sums.iter() {
            if seen[s as usize] {
                continue 'candidates;
            }
            seen[s as usize] = true;
        }
        for &(s, left) in sums.iter() {
            for mag in 1..=left {
                for sign in [1i64, -1] {
                    let delta = (sign * (mag as i64) * (h as i64)).rem_euclid(modulus as i64) as u64;
                    let new_sum = (s + delta) % modulus;
                    if seen[new_sum as usize] {
                        continue 'candidates;
                    }
                    seen[new_sum as usize] = true;
                    added.push((new_sum, left - mag));
                }
            }
        }
        let base = sums.len();
        sums.extend(added);
        chosen.push(h);
        if search_coefficients(n, modulus, h + 1, chosen, sums) {
            return true;
        }
        chosen.pop();
        sums.truncate(base);
    }
    false
}

/// A coset of a checksum code inside a bounded non-negative integer box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceCode {
    pub check: CheckSequence,
    pub residue: u64,
    /// Inclusive per-coordinate maxima of the box.
    pub domain: Vec<u64>,
}

impl CongruenceCode {
    pub fn new(check: CheckSequence, residue: u64, domain: Vec<u64>) -> Result<Self> {
        if domain.len() != check.len() {
            return Err(Error::LengthMismatch {
                left: domain.len(),
                right: check.len(),
            });
        }
        if residue >= check.modulus {
            return Err(Error::EntryOutOfRange {
                value: residue,
                max: check.modulus - 1,
            });
        }
        Ok(CongruenceCode {
            check,
            residue,
            domain,
        })
    }

    pub fn len(&self) -> usize {
        self.check.len()
    }

    pub fn is_empty(&self) -> bool {
        self.check.is_empty()
    }

    pub fn in_box(&self, x: &[u64]) -> bool {
        x.len() == self.domain.len() && x.iter().zip(&self.domain).all(|(&v, &max)| v <= max)
    }

    pub fn contains(&self, x: &[u64]) -> Result<bool> {
        Ok(self.in_box(x) && self.check.weighted_sum(x)? == self.residue)
    }

    /// `(sum y_i * h_i - residue) mod M`; zero exactly on codewords.
    pub fn syndrome(&self, y: &[u64]) -> Result<u64> {
        let s = self.check.weighted_sum(y)?;
        Ok((s + self.check.modulus - self.residue) % self.check.modulus)
    }

    /// Nearest-codeword decoding via a syndrome table: returns the unique
    /// error pattern of weight at most the radius whose removal lands on a
    /// codeword inside the box, or `None` when the syndrome matches no such
    /// pattern or the correction leaves the box.
    pub fn syndrome_decode(&self, y: &[u64], table: &SyndromeTable) -> Result<Option<Vec<i64>>> {
        if table.radius != self.check.radius || table.modulus != self.check.modulus {
            return Err(Error::InvalidCheckSequence(
                "syndrome table built for a different check sequence".into(),
            ));
        }
        let s = self.syndrome(y)?;
        let Some(e) = table.patterns.get(&s) else {
            return Ok(None);
        };
        let mut corrected = Vec::with_capacity(y.len());
        for (&yi, &ei) in y.iter().zip(e) {
            let c = yi as i64 - ei;
            if c < 0 {
                return Ok(None);
            }
            corrected.push(c as u64);
        }
        if !self.in_box(&corrected) {
            return Ok(None);
        }
        Ok(Some(e.clone()))
    }
}

/// Precomputed map from syndrome to the unique weight-bounded error pattern.
#[derive(Debug, Clone)]
pub struct SyndromeTable {
    modulus: u64,
    radius: u64,
    patterns: HashMap<u64, Vec<i64>>,
}

impl SyndromeTable {
    pub fn build(check: &CheckSequence) -> Self {
        let mut patterns = HashMap::new();
        for_each_weight_pattern(check.len(), check.radius, |e| {
            let s = check.pattern_sum(e);
            let prev = patterns.insert(s, e.to_vec());
            debug_assert!(prev.is_none(), "distinct-sums property violated");
        });
        SyndromeTable {
            modulus: check.modulus,
            radius: check.radius,
            patterns,
        }
    }

    /// The stored pattern for a syndrome, if any.
    pub fn pattern(&self, syndrome: u64) -> Option<&[i64]> {
        self.patterns.get(&syndrome).map(|e| e.as_slice())
    }
}

/// Minimum Manhattan distance between distinct codewords of `code`, by full
/// enumeration of the box. `None` when the coset has fewer than two points.
pub fn brute_force_min_distance(code: &CongruenceCode) -> Result<Option<u64>> {
    let mut words: Vec<Vec<u64>> = Vec::new();
    let mut x = vec![0u64; code.len()];
    loop {
        if code.contains(&x)? {
            words.push(x.clone());
        }
        // odometer step over the box
        let mut i = 0;
        loop {
            if i == x.len() {
                let mut best: Option<u64> = None;
                for a in 0..words.len() {
                    for b in a + 1..words.len() {
                        let d = crate::embedding::manhattan_distance(&words[a], &words[b])?;
                        best = Some(best.map_or(d, |m: u64| m.min(d)));
                    }
                }
                return Ok(best);
            }
            if x[i] < code.domain[i] {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Manhattan weight helper re-exported for decoder budgets.
pub fn weight(e: &[i64]) -> u64 {
    manhattan_weight(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golomb_welch_examples() {
        let c = golomb_welch_check(3).unwrap();
        assert_eq!(c.h, vec![1, 2, 3]);
        assert_eq!(c.modulus, 7);
        assert_eq!(c.radius, 1);
        let c = golomb_welch_check(1).unwrap();
        assert_eq!((c.h.clone(), c.modulus), (vec![1], 3));
        assert!(golomb_welch_check(0).is_err());
    }

    #[test]
    fn weight_one_sums_are_distinct() {
        // patterns 0, ±1e_i for N=3: sums {0,1,2,3,4,5,6} mod 7
        let mut sums = std::collections::HashSet::new();
        let check = golomb_welch_check(3).unwrap();
        for_each_weight_pattern(3, 1, |e| {
            sums.insert(check.pattern_sum(e));
        });
        assert_eq!(sums.len(), 7);
    }

    #[test]
    fn pattern_count_matches_ball_volume() {
        assert_eq!(pattern_count(3, 1), 7);
        // 1 + 2N + 2N^2 at t = 2
        assert_eq!(pattern_count(3, 2), 25);
        assert_eq!(pattern_count(4, 2), 41);
        assert_eq!(pattern_count(5, 2), 61);
    }

    #[test]
    fn prime_power_detection() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 121] {
            assert!(is_prime_power(q), "{q}");
        }
        for q in [0, 1, 6, 10, 12, 15, 100] {
            assert!(!is_prime_power(q), "{q}");
        }
        assert_eq!(next_prime_power(6), 7);
        assert_eq!(next_prime_power(2), 2);
    }

    #[test]
    fn mt_bound_examples() {
        assert_eq!(mt_bound(3, 2).unwrap(), 104); // M = 13, even t: t(t+2)M
        assert_eq!(mt_bound(2, 1).unwrap(), 6); // M = 3, odd t: t(t+1)M
        assert_eq!(mt_bound(2, 2).unwrap(), 56);
        assert!(mt_bound(6, 1).is_err());
    }

    #[test]
    fn search_recovers_perfect_single_error_sequence() {
        let c = find_check_sequence(3, 1, 100).unwrap();
        assert_eq!(c.modulus, 7);
        assert_eq!(c.h, vec![1, 2, 3]);
        let c = find_check_sequence(1, 1, 100).unwrap();
        assert_eq!((c.h.clone(), c.modulus), (vec![1], 3));
    }

    #[test]
    fn search_finds_double_error_sequence_within_budget() {
        let budget = mt_bound(3, 2).unwrap(); // 104, covers lengths up to 4
        let c = find_check_sequence(4, 2, budget).unwrap();
        assert!(c.modulus <= budget);
        assert!(c.validate().is_ok());
        assert!(c.modulus >= pattern_count(4, 2));
    }

    #[test]
    fn search_reports_exhaustion() {
        assert!(matches!(
            find_check_sequence(3, 2, 10),
            Err(Error::NoCheckSequence { .. })
        ));
    }

    #[test]
    fn syndrome_examples() {
        let code = CongruenceCode::new(golomb_welch_check(3).unwrap(), 0, vec![6, 6, 6]).unwrap();
        assert_eq!(code.syndrome(&[1, 0, 2]).unwrap(), 0); // 1 + 0 + 6 = 7
        assert!(code.contains(&[1, 0, 2]).unwrap());
        // unit error at position i shifts the syndrome by h_i
        assert_eq!(code.syndrome(&[1, 1, 2]).unwrap(), 2);
        assert!(code.syndrome(&[1, 0]).is_err());
    }

    #[test]
    fn syndrome_decoding_round_trip() {
        let code = CongruenceCode::new(golomb_welch_check(3).unwrap(), 0, vec![3, 3, 3]).unwrap();
        let table = SyndromeTable::build(&code.check);
        assert_eq!(
            code.syndrome_decode(&[1, 0, 2], &table).unwrap(),
            Some(vec![0, 0, 0])
        );
        assert_eq!(
            code.syndrome_decode(&[1, 1, 2], &table).unwrap(),
            Some(vec![0, 1, 0])
        );
        // correction would leave the box
        assert_eq!(code.syndrome_decode(&[0, 0, 5], &table).unwrap(), None);
    }

    #[test]
    fn decoder_recovers_every_in_box_single_error() {
        let code = CongruenceCode::new(golomb_welch_check(3).unwrap(), 2, vec![4, 4, 4]).unwrap();
        let table = SyndromeTable::build(&code.check);
        let mut x = vec![0u64; 3];
        loop {
            if code.contains(&x).unwrap() {
                // every weight-1 corruption that stays non-negative
                for i in 0..3 {
                    for delta in [-1i64, 1] {
                        let yi = x[i] as i64 + delta;
                        if yi < 0 {
                            continue;
                        }
                        let mut y = x.clone();
                        y[i] = yi as u64;
                        let mut expected = vec![0i64; 3];
                        expected[i] = delta;
                        assert_eq!(
                            code.syndrome_decode(&y, &table).unwrap(),
                            Some(expected),
                            "x = {x:?}, y = {y:?}"
                        );
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == 3 {
                    return;
                }
                if x[i] < 4 {
                    x[i] += 1;
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn certified_sequences_have_min_coset_distance() {
        let check = find_check_sequence(3, 2, 104).unwrap();
        let code = CongruenceCode::new(check, 0, vec![3, 3, 3]).unwrap();
        if let Some(d) = brute_force_min_distance(&code).unwrap() {
            assert!(d >= 5, "min distance {d} below 5");
        }
    }

    #[test]
    fn rejects_colliding_sequences() {
        assert!(CheckSequence::new(vec![1, 1], 7, 1).is_err());
        assert!(CheckSequence::new(vec![1, 2, 3], 6, 1).is_err());
        assert!(CheckSequence::new(vec![0], 3, 1).is_err());
    }

    #[test]
    fn radius_one_budget_is_formula_value() {
        assert_eq!(mt_bound(4, 1).unwrap(), 10); // 2(q + 1)
        assert_eq!(mt_bound(5, 1).unwrap(), 12);
    }

    #[test]
    fn decoder_reports_none_beyond_radius() {
        // brute force locates a box point with no codeword within distance 1
        let code = CongruenceCode::new(golomb_welch_check(3).unwrap(), 0, vec![3, 3, 3]).unwrap();
        let table = SyndromeTable::build(&code.check);
        let mut codewords = Vec::new();
        let mut x = vec![0u64; 3];
        loop {
            if code.contains(&x).unwrap() {
                codewords.push(x.clone());
            }
            if !step(&mut x, 3) {
                break;
            }
        }
        let mut far_point = None;
        let mut y = vec![0u64; 3];
        loop {
            let nearest = codewords
                .iter()
                .map(|c| crate::embedding::manhattan_distance(c, &y).unwrap())
                .min()
                .unwrap();
            if nearest >= 2 {
                far_point = Some(y.clone());
                break;
            }
            if !step(&mut y, 3) {
                break;
            }
        }
        let y = far_point.expect("a point at distance >= 2 from the whole code");
        assert_eq!(code.syndrome_decode(&y, &table).unwrap(), None);
    }

    #[test]
    fn mismatched_table_is_rejected() {
        let code = CongruenceCode::new(golomb_welch_check(3).unwrap(), 0, vec![3, 3, 3]).unwrap();
        let other = SyndromeTable::build(&golomb_welch_check(2).unwrap());
        assert!(code.syndrome_decode(&[0, 0, 0], &other).is_err());
    }

    /// Odometer over `[0, max]^len`; false after the last point.
    pub(super) fn step(x: &mut [u64], max: u64) -> bool {
        for i in 0..x.len() {
            if x[i] < max {
                x[i] += 1;
                return true;
            }
            x[i] = 0;
        }
        false
    }
}
