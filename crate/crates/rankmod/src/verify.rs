//! Exhaustive desk-scale certification campaigns.
//!
//! Every structural claim the library relies on is checked here against an
//! independent oracle at small scale: the metric against shortest paths in
//! the transposition graph, the embedding against full enumeration, the
//! code constructions against brute-force distance scans, and the decoder
//! against the exhaustive reference decoder. Each check reports one
//! pass/fail line with a counterexample on failure.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{simulate, ChannelSpec};
use crate::codes::{certify_min_distance, lift_best_coset, lift_lee_code, MultiPermCode};
use crate::congruence::{
    find_check_sequence, golomb_welch_check, is_prime_power, mt_bound, CongruenceCode,
};
use crate::embedding::{lee_distance, manhattan_distance, psi, psi_inverse};
use crate::error::Result;
use crate::kendall::{
    apply_adjacent_transposition, kendall_distance, legal_transpositions, project_down,
    project_zero, star, t_theta, ThetaVector,
};
use crate::multiset::{factorial, MultiPermutation, MultiSet, Permutation};
use crate::systematic::{GeneralSystematicCode, SystematicCode};

/// Outcome of one certification property.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub passed: bool,
    pub details: String,
}

impl PropertyReport {
    fn pass(property: &str, details: String) -> Self {
        PropertyReport {
            property: property.into(),
            passed: true,
            details,
        }
    }

    fn fail(property: &str, details: String) -> Self {
        PropertyReport {
            property: property.into(),
            passed: false,
            details,
        }
    }
}

/// Which campaign to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    /// Metric axioms, the transposition-graph oracle, labelling and
    /// substitution bounds, projections.
    Core,
    /// Embedding bijectivity and the distance bounds on its range.
    Embedding,
    /// Checksum sequences, perfection of the single-error code, syndrome
    /// decoding.
    Lee,
    /// Lifted codes, parity splitting, coset size bounds.
    Codes,
    /// Systematic builds, their decoders, and the general variant.
    Systematic,
    /// Seeded channel runs.
    Sim,
}

impl std::str::FromStr for Suite {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "core" => Ok(Suite::Core),
            "embedding" => Ok(Suite::Embedding),
            "lee" => Ok(Suite::Lee),
            "codes" => Ok(Suite::Codes),
            "systematic" => Ok(Suite::Systematic),
            "sim" => Ok(Suite::Sim),
            other => Err(crate::error::Error::Parse(format!(
                "unknown suite {other:?} (expected all|core|embedding|lee|codes|systematic|sim)"
            ))),
        }
    }
}

/// Configuration of a verification campaign.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Largest word length for the exhaustive sweeps.
    pub max_n: usize,
    pub suite: Suite,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 6,
            suite: Suite::All,
        }
    }
}

/// Statement of every certified property, for reference and reporting.
pub const COVERAGE: &[(&str, &str)] = &[
    ("metric_axioms", "distance is symmetric, zero only on equal words, triangular"),
    ("distance_equals_shortest_path", "formula distance equals BFS distance in the transposition graph"),
    ("labelling_preserves_distance", "occurrence relabelling leaves the distance unchanged"),
    ("substitution_distance_bound", "distance after distinct relabellings is at least the base distance plus the relabelling distances"),
    ("distance_parity_additivity", "distances around any triangle have even total"),
    ("projection_round_trip", "substitution followed by either projection returns its inputs"),
    ("composition_distance_bound", "distance of composed words is at least the sum of the parts' distances"),
    ("projection_contraction", "both projections never increase distance"),
    ("embedding_bijective", "the inversion-vector map is a bijection onto its box image"),
    ("embedding_contracts_distance", "Manhattan distance of images never exceeds word distance"),
    ("lee_below_manhattan", "cyclic distance never exceeds Manhattan distance"),
    ("single_error_code_perfect", "radius-1 balls of the checksum code tile the cyclic box exactly"),
    ("distinct_sums_give_coset_distance", "accepted check sequences yield coset Manhattan distance >= 2t+1"),
    ("syndrome_decoder_exact", "every in-box error of weight <= t is recovered exactly"),
    ("lifted_code_distance", "lifting a checksum coset preserves its design distance in the word metric"),
    ("largest_coset_size_bound", "the largest lifted coset meets the pigeonhole size bound"),
    ("t_error_coset_size_bound", "lifted t-error cosets meet the budgeted pigeonhole bound"),
    ("parity_split_doubles_odd_distance", "parity classes of an odd-distance code certify distance d+1"),
    ("systematic_build_example", "small systematic builds succeed with k! codewords at distance >= 2t+1"),
    ("systematic_decoder_complete", "all error patterns within the radius decode to the transmitted word"),
    ("decoder_matches_bruteforce", "two-stage and exhaustive decoders agree on every input"),
    ("double_error_machinery", "a double-error build certifies distance >= 5 and corrects all <= 2-error patterns"),
    ("general_systematic_code", "multi-set information words are systematic and single errors decode"),
    ("corrupted_code_file_rejected", "loading a code file with duplicated redundancy words fails"),
    ("simulation_within_radius", "seeded in-radius trials are all corrected"),
    ("simulation_beyond_radius", "seeded beyond-radius trials never break the distance contract"),
];

/// Runs the selected campaigns and collects one report per property.
pub fn verify_all(config: VerifyConfig) -> Vec<PropertyReport> {
    let mut reports = Vec::new();
    let n = config.max_n;
    if matches!(config.suite, Suite::All | Suite::Core) {
        reports.push(check_metric_axioms(n.min(6), 720));
        reports.push(check_distance_equals_shortest_path(n.min(7), 720));
        reports.push(check_labelling_preserves_distance(n));
        reports.push(check_substitution_distance_bound(n.min(5)));
        reports.push(check_distance_parity_additivity(n));
        reports.push(check_projection_round_trip());
        reports.push(check_composition_distance_bound());
        reports.push(check_projection_contraction(n));
    }
    if matches!(config.suite, Suite::All | Suite::Embedding) {
        reports.push(check_embedding_bijective(n.max(7), 5040));
        reports.push(check_embedding_contracts_distance(n));
        reports.push(check_lee_below_manhattan());
    }
    if matches!(config.suite, Suite::All | Suite::Lee) {
        reports.push(check_single_error_code_perfect());
        reports.push(check_distinct_sums_give_coset_distance());
        reports.push(check_syndrome_decoder_exact());
    }
    if matches!(config.suite, Suite::All | Suite::Codes) {
        reports.push(check_lifted_code_distance(n.min(5)));
        reports.push(check_largest_coset_size_bound(n.max(7), 5040));
        reports.push(check_t_error_coset_size_bound(n));
        reports.push(check_parity_split_doubles_odd_distance());
    }
    if matches!(config.suite, Suite::All | Suite::Systematic) {
        reports.push(check_systematic_build_example());
        reports.push(check_systematic_decoder_complete());
        reports.push(check_decoder_matches_bruteforce());
        reports.push(check_double_error_machinery());
        reports.push(check_general_systematic_code());
        reports.push(check_corrupted_code_file_rejected());
    }
    if matches!(config.suite, Suite::All | Suite::Sim) {
        reports.push(check_simulation_within_radius());
        reports.push(check_simulation_beyond_radius());
    }
    reports
}

/// Canonical multi-sets (ranks `1..=l`) for every composition of every
/// length up to `max_n`, keeping spaces of at most `max_size` orderings.
pub fn canonical_multisets(max_n: usize, max_size: u64) -> Vec<MultiSet> {
    let mut result = Vec::new();
    for n in 1..=max_n {
        let mut stack = vec![Vec::<usize>::new()];
        while let Some(prefix) = stack.pop() {
            let used: usize = prefix.iter().sum();
            if used == n {
                let ms = MultiSet::new(
                    prefix
                        .iter()
                        .enumerate()
                        .map(|(i, &m)| ((i + 1) as u32, m))
                        .collect(),
                )
                .expect("valid composition");
                if ms.space_size() <= BigUint::from(max_size) {
                    result.push(ms);
                }
                continue;
            }
            for next in 1..=n - used {
                let mut grown = prefix.clone();
                grown.push(next);
                stack.push(grown);
            }
        }
    }
    result
}

/// Word list plus the full pairwise distance matrix of a space.
struct SpaceTable {
    words: Vec<MultiPermutation>,
    dist: Vec<Vec<u16>>,
}

impl SpaceTable {
    fn build(alphabet: &MultiSet) -> Self {
        let words: Vec<MultiPermutation> = alphabet.orderings().collect();
        let dist: Vec<Vec<u16>> = words
            .par_iter()
            .map(|a| {
                words
                    .iter()
                    .map(|b| kendall_distance(a, b).expect("same alphabet") as u16)
                    .collect()
            })
            .collect();
        SpaceTable { words, dist }
    }

    fn index(&self) -> HashMap<&[u32], usize> {
        self.words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.seq(), i))
            .collect()
    }
}

/// BFS distances from every word in the adjacent-transposition graph.
fn bfs_all_pairs(table: &SpaceTable) -> Vec<Vec<u16>> {
    let index = table.index();
    let neighbours: Vec<Vec<usize>> = table
        .words
        .iter()
        .map(|w| {
            legal_transpositions(w)
                .into_iter()
                .map(|pos| {
                    let moved = apply_adjacent_transposition(w, pos).expect("legal");
                    index[moved.seq()]
                })
                .collect()
        })
        .collect();
    (0..table.words.len())
        .into_par_iter()
        .map(|source| {
            let mut dist = vec![u16::MAX; table.words.len()];
            let mut queue = std::collections::VecDeque::new();
            dist[source] = 0;
            queue.push_back(source);
            while let Some(v) = queue.pop_front() {
                for &w in &neighbours[v] {
                    if dist[w] == u16::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            dist
        })
        .collect()
}

pub fn check_metric_axioms(max_n: usize, max_size: u64) -> PropertyReport {
    const NAME: &str = "metric_axioms";
    let mut spaces = 0;
    for ms in canonical_multisets(max_n, max_size) {
        let table = SpaceTable::build(&ms);
        let m = table.words.len();
        for a in 0..m {
            if table.dist[a][a] != 0 {
                return PropertyReport::fail(NAME, format!("d({a},{a}) != 0 over {ms}"));
            }
            for b in 0..m {
                if a != b && table.dist[a][b] == 0 {
                    return PropertyReport::fail(
                        NAME,
                        format!("zero distance for distinct {} vs {}", table.words[a], table.words[b]),
                    );
                }
                if table.dist[a][b] != table.dist[b][a] {
                    return PropertyReport::fail(
                        NAME,
                        format!("asymmetry for {} vs {}", table.words[a], table.words[b]),
                    );
                }
            }
        }
        // triangle inequality per (a, b) over contiguous rows
        let bad = (0..m).into_par_iter().find_map_any(|a| {
            let row_a = &table.dist[a];
            for b in 0..m {
                let d_ab = table.dist[a][b];
                let row_b = &table.dist[b];
                for c in 0..m {
                    if row_a[c] > d_ab + row_b[c] {
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        if let Some((a, b, c)) = bad {
            return PropertyReport::fail(
                NAME,
                format!(
                    "triangle violated at {}, {}, {}",
                    table.words[a], table.words[b], table.words[c]
                ),
            );
        }
        spaces += 1;
    }
    PropertyReport::pass(NAME, format!("all axioms hold over {spaces} spaces (n <= {max_n})"))
}

pub fn check_distance_equals_shortest_path(max_n: usize, max_size: u64) -> PropertyReport {
    const NAME: &str = "distance_equals_shortest_path";
    let mut pairs = 0u64;
    for ms in canonical_multisets(max_n, max_size) {
        let table = SpaceTable::build(&ms);
        let bfs = bfs_all_pairs(&table);
        for a in 0..table.words.len() {
            for b in 0..table.words.len() {
                if table.dist[a][b] != bfs[a][b] {
                    return PropertyReport::fail(
                        NAME,
                        format!(
                            "formula {} vs path {} for {} -> {} over {ms}",
                            table.dist[a][b], bfs[a][b], table.words[a], table.words[b]
                        ),
                    );
                }
                pairs += 1;
            }
        }
    }
    // frozen spot values from the worked examples
    let spot = |a: &str, b: &str, want: u64| {
        let a: MultiPermutation = a.parse().unwrap();
        let b: MultiPermutation = b.parse().unwrap();
        kendall_distance(&a, &b).unwrap() == want
    };
    if !spot("1,1,2,2", "2,1,2,1", 3) || !spot("2,1,3,4", "3,2,4,1", 3) {
        return PropertyReport::fail(NAME, "worked example distance mismatch".into());
    }
    PropertyReport::pass(NAME, format!("{pairs} ordered pairs match"))
}

pub fn check_labelling_preserves_distance(max_n: usize) -> PropertyReport {
    const NAME: &str = "labelling_preserves_distance";
    let mut checked = 0u64;
    for ms in canonical_multisets(max_n, 720) {
        let words: Vec<MultiPermutation> = ms.orderings().collect();
        let thetas = ThetaVector::enumerate(&ms);
        let lifted: Vec<Vec<Permutation>> = thetas
            .iter()
            .map(|theta| words.iter().map(|w| t_theta(w, theta).unwrap()).collect())
            .collect();
        for a in 0..words.len() {
            for b in 0..words.len() {
                let base = kendall_distance(&words[a], &words[b]).unwrap();
                for (ti, _) in thetas.iter().enumerate() {
                    let image =
                        kendall_distance(&lifted[ti][a], &lifted[ti][b]).unwrap();
                    if image != base {
                        return PropertyReport::fail(
                            NAME,
                            format!(
                                "{} vs {}: base {base}, relabelled {image} over {ms}",
                                words[a], words[b]
                            ),
                        );
                    }
                    checked += 1;
                }
            }
        }
    }
    PropertyReport::pass(NAME, format!("{checked} relabelled pairs match"))
}

pub fn check_substitution_distance_bound(max_n: usize) -> PropertyReport {
    const NAME: &str = "substitution_distance_bound";
    let mut checked = 0u64;
    for ms in canonical_multisets(max_n, 120) {
        let words: Vec<MultiPermutation> = ms.orderings().collect();
        let thetas = ThetaVector::enumerate(&ms);
        // distance between matching blocks of two substitution vectors
        let block_distance = |x: &ThetaVector, y: &ThetaVector| -> u64 {
            x.blocks()
                .iter()
                .zip(y.blocks())
                .map(|(bx, by)| {
                    let px = Permutation::from_seq(bx.clone()).unwrap();
                    let py = Permutation::from_seq(by.clone()).unwrap();
                    kendall_distance(&px, &py).unwrap()
                })
                .sum()
        };
        for a in &words {
            for b in &words {
                let base = kendall_distance(a, b).unwrap();
                for x in &thetas {
                    let img_a = t_theta(a, x).unwrap();
                    for y in &thetas {
                        let img_b = t_theta(b, y).unwrap();
                        let lifted = kendall_distance(&img_a, &img_b).unwrap();
                        let bound = base + block_distance(x, y);
                        if lifted < bound {
                            return PropertyReport::fail(
                                NAME,
                                format!("{a} vs {b}: lifted {lifted} < bound {bound} over {ms}"),
                            );
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    PropertyReport::pass(NAME, format!("{checked} substituted pairs respect the bound"))
}

pub fn check_distance_parity_additivity(max_n: usize) -> PropertyReport {
    const NAME: &str = "distance_parity_additivity";
    let mut checked = 0u64;
    for ms in canonical_multisets(max_n, 720) {
        let table = SpaceTable::build(&ms);
        let m = table.words.len();
        let bad = (0..m).into_par_iter().find_map_any(|a| {
            for b in 0..m {
                for c in 0..m {
                    let lhs = table.dist[a][b] as u64 + table.dist[b][c] as u64;
                    if lhs % 2 != table.dist[a][c] as u64 % 2 {
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        if let Some((a, b, c)) = bad {
            return PropertyReport::fail(
                NAME,
                format!(
                    "parity broken at {}, {}, {} over {ms}",
                    table.words[a], table.words[b], table.words[c]
                ),
            );
        }
        checked += (m * m * m) as u64;
    }
    PropertyReport::pass(NAME, format!("{checked} triangles have even perimeter"))
}

pub fn check_projection_round_trip() -> PropertyReport {
    const NAME: &str = "projection_round_trip";
    let mut checked = 0u64;
    for k in 1..=4usize {
        for r in 1..=3usize {
            if k + r > 7 {
                continue;
            }
            let alphabet = MultiSet::redundancy(k, r);
            for sigma in MultiSet::symmetric(k).orderings() {
                let sigma = Permutation::from_multi(sigma).unwrap();
                for rho in alphabet.orderings() {
                    let word = star(&sigma, &rho).unwrap();
                    if project_down(&word, k).unwrap() != sigma
                        || project_zero(&word, k).unwrap() != rho
                    {
                        return PropertyReport::fail(
                            NAME,
                            format!("projections disagree for {sigma} * {rho}"),
                        );
                    }
                    checked += 1;
                }
            }
        }
    }
    PropertyReport::pass(NAME, format!("{checked} compositions project back"))
}

pub fn check_composition_distance_bound() -> PropertyReport {
    const NAME: &str = "composition_distance_bound";
    let mut checked = 0u64;
    for k in 1..=3usize {
        for r in 1..=3usize {
            let alphabet = MultiSet::redundancy(k, r);
            let sigmas: Vec<Permutation> = MultiSet::symmetric(k)
                .orderings()
                .map(|w| Permutation::from_multi(w).unwrap())
                .collect();
            let rhos: Vec<MultiPermutation> = alphabet.orderings().collect();
            for s1 in &sigmas {
                for s2 in &sigmas {
                    let ds = kendall_distance(s1, s2).unwrap();
                    for r1 in &rhos {
                        let w1 = star(s1, r1).unwrap();
                        for r2 in &rhos {
                            let dr = kendall_distance(r1, r2).unwrap();
                            let w2 = star(s2, r2).unwrap();
                            let dw = kendall_distance(&w1, &w2).unwrap();
                            if dw < ds + dr {
                                return PropertyReport::fail(
                                    NAME,
                                    format!(
                                        "{s1}*{r1} vs {s2}*{r2}: {dw} < {ds} + {dr}"
                                    ),
                                );
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    // the multi-set variant the general codes rely on
    let info: MultiSet = "1^2+2".parse().unwrap();
    let rho_alphabet: MultiSet = "0^3+4^2".parse().unwrap();
    let mut words = Vec::new();
    for kappa in info.orderings() {
        for rho in rho_alphabet.orderings() {
            let word = crate::kendall::substitute_zeros(&kappa, &rho).unwrap();
            words.push((kappa.clone(), rho, word));
        }
    }
    for (k1, r1, w1) in &words {
        for (k2, r2, w2) in &words {
            let dw = kendall_distance(w1, w2).unwrap();
            let bound =
                kendall_distance(k1, k2).unwrap() + kendall_distance(r1, r2).unwrap();
            if dw < bound {
                return PropertyReport::fail(
                    NAME,
                    format!("multi-set case {w1} vs {w2}: {dw} < {bound}"),
                );
            }
            checked += 1;
        }
    }
    PropertyReport::pass(NAME, format!("{checked} composed pairs respect the bound"))
}

pub fn check_projection_contraction(max_n: usize) -> PropertyReport {
    const NAME: &str = "projection_contraction";
    let mut checked = 0u64;
    for n in 2..=max_n {
        let words: Vec<Permutation> = MultiSet::symmetric(n)
            .orderings()
            .map(|w| Permutation::from_multi(w).unwrap())
            .collect();
        for k in 1..=n {
            let down: Vec<MultiPermutation> = words
                .iter()
                .map(|w| project_down(w, k).unwrap().into_multi())
                .collect();
            let zeroed: Vec<MultiPermutation> =
                words.iter().map(|w| project_zero(w, k).unwrap()).collect();
            let bad = (0..words.len()).into_par_iter().find_map_any(|a| {
                for b in 0..words.len() {
                    let d = kendall_distance(&words[a], &words[b]).unwrap();
                    if kendall_distance(&down[a], &down[b]).unwrap() > d
                        || kendall_distance(&zeroed[a], &zeroed[b]).unwrap() > d
                    {
                        return Some((a, b));
                    }
                }
                None
            });
            if let Some((a, b)) = bad {
                return PropertyReport::fail(
                    NAME,
                    format!("projection expanded {} vs {} at k = {k}", words[a], words[b]),
                );
            }
            checked += (words.len() * words.len()) as u64;
        }
    }
    // the multi-set projections used by the general decoder
    let info: MultiSet = "1^2+2".parse().unwrap();
    let word_alphabet: MultiSet = "1^2+2+4^2".parse().unwrap();
    let words: Vec<MultiPermutation> = word_alphabet.orderings().collect();
    for a in &words {
        let pa = crate::kendall::project_to_info(a, &info).unwrap();
        let za = crate::kendall::project_info_to_zero(a, &info).unwrap();
        for b in &words {
            let d = kendall_distance(a, b).unwrap();
            let pb = crate::kendall::project_to_info(b, &info).unwrap();
            let zb = crate::kendall::project_info_to_zero(b, &info).unwrap();
            if kendall_distance(&pa, &pb).unwrap() > d
                || kendall_distance(&za, &zb).unwrap() > d
            {
                return PropertyReport::fail(
                    NAME,
                    format!("multi-set projection expanded {a} vs {b}"),
                );
            }
            checked += 1;
        }
    }
    PropertyReport::pass(NAME, format!("{checked} projected pairs contract"))
}

pub fn check_embedding_bijective(max_n: usize, max_size: u64) -> PropertyReport {
    const NAME: &str = "embedding_bijective";
    let mut spaces = 0;
    for ms in canonical_multisets(max_n, max_size) {
        let expected = ms.space_size();
        // image cardinality from the monotone-block counts
        let sums = ms.prefix_sums();
        let mut image_size = BigUint::from(1u32);
        for i in 1..ms.num_ranks() {
            let m = ms.multiplicity(i);
            let bound = sums[i];
            image_size *= factorial(bound + m) / (factorial(m) * factorial(bound));
        }
        if image_size != expected {
            return PropertyReport::fail(
                NAME,
                format!("image size {image_size} != space size {expected} over {ms}"),
            );
        }
        let mut images = std::collections::HashSet::new();
        for w in ms.orderings() {
            let x = psi(&w);
            match psi_inverse(&x, &ms) {
                Ok(back) if back == w => {}
                _ => {
                    return PropertyReport::fail(NAME, format!("round trip failed for {w}"));
                }
            }
            images.insert(x.flat().to_vec());
        }
        if BigUint::from(images.len()) != expected {
            return PropertyReport::fail(
                NAME,
                format!("{} distinct images for {expected} words over {ms}", images.len()),
            );
        }
        spaces += 1;
    }
    PropertyReport::pass(NAME, format!("bijective over {spaces} spaces"))
}

pub fn check_embedding_contracts_distance(max_n: usize) -> PropertyReport {
    const NAME: &str = "embedding_contracts_distance";
    let mut checked = 0u64;
    for ms in canonical_multisets(max_n, 720) {
        let words: Vec<MultiPermutation> = ms.orderings().collect();
        let images: Vec<Vec<u64>> = words.iter().map(|w| psi(w).flat().to_vec()).collect();
        let bad = (0..words.len()).into_par_iter().find_map_any(|a| {
            for b in 0..words.len() {
                let dm = manhattan_distance(&images[a], &images[b]).unwrap();
                let dk = kendall_distance(&words[a], &words[b]).unwrap();
                if dm > dk {
                    return Some((a, b, dm, dk));
                }
            }
            None
        });
        if let Some((a, b, dm, dk)) = bad {
            return PropertyReport::fail(
                NAME,
                format!("{} vs {}: Manhattan {dm} > distance {dk} over {ms}", words[a], words[b]),
            );
        }
        checked += (words.len() * words.len()) as u64;
    }
    PropertyReport::pass(NAME, format!("{checked} pairs contract through the embedding"))
}

pub fn check_lee_below_manhattan() -> PropertyReport {
    const NAME: &str = "lee_below_manhattan";
    let q = 7u64;
    let mut x = vec![0u64; 3];
    let mut checked = 0u64;
    loop {
        let mut y = vec![0u64; 3];
        loop {
            let dl = lee_distance(&x, &y, q).unwrap();
            let dm = manhattan_distance(&x, &y).unwrap();
            if dl > dm {
                return PropertyReport::fail(NAME, format!("{x:?} vs {y:?}: {dl} > {dm}"));
            }
            checked += 1;
            if !odometer(&mut y, q) {
                break;
            }
        }
        if !odometer(&mut x, q) {
            break;
        }
    }
    PropertyReport::pass(NAME, format!("{checked} vector pairs ordered correctly"))
}

fn odometer(x: &mut [u64], q: u64) -> bool {
    for i in 0..x.len() {
        if x[i] + 1 < q {
            x[i] += 1;
            return true;
        }
        x[i] = 0;
    }
    false
}

pub fn check_single_error_code_perfect() -> PropertyReport {
    const NAME: &str = "single_error_code_perfect";
    let mut details = String::new();
    for n in [2usize, 3] {
        let check = golomb_welch_check(n).unwrap();
        let q = check.modulus;
        let mut codewords = Vec::new();
        let mut x = vec![0u64; n];
        loop {
            if check.weighted_sum(&x).unwrap() == 0 {
                codewords.push(x.clone());
            }
            if !odometer(&mut x, q) {
                break;
            }
        }
        let expected = (q as usize).pow(n as u32 - 1);
        if codewords.len() != expected {
            return PropertyReport::fail(
                NAME,
                format!("N = {n}: {} codewords, expected {expected}", codewords.len()),
            );
        }
        // every point of the cyclic box is within radius 1 of exactly one codeword
        let mut point = vec![0u64; n];
        loop {
            let covering = codewords
                .iter()
                .filter(|c| lee_distance(c, &point, q).unwrap() <= 1)
                .count();
            if covering != 1 {
                return PropertyReport::fail(
                    NAME,
                    format!("N = {n}: point {point:?} covered {covering} times"),
                );
            }
            if !odometer(&mut point, q) {
                break;
            }
        }
        let _ = write!(details, "N={n}: {} balls of {} points tile {}; ", codewords.len(), 2 * n + 1, (q as usize).pow(n as u32));
    }
    PropertyReport::pass(NAME, details.trim_end_matches("; ").to_string())
}

pub fn check_distinct_sums_give_coset_distance() -> PropertyReport {
    const NAME: &str = "distinct_sums_give_coset_distance";
    let cases = [(3usize, 1u64, 7u64), (3, 2, 104), (4, 2, 104)];
    let mut details = String::new();
    for (n, t, budget) in cases {
        let check = match find_check_sequence(n, t, budget) {
            Ok(c) => c,
            Err(e) => return PropertyReport::fail(NAME, format!("search failed: {e}")),
        };
        for residue in 0..check.modulus.min(3) {
            let code = CongruenceCode::new(check.clone(), residue, vec![3; n]).unwrap();
            match crate::congruence::brute_force_min_distance(&code) {
                Ok(Some(d)) if d < 2 * t + 1 => {
                    return PropertyReport::fail(
                        NAME,
                        format!("n = {n}, t = {t}, residue {residue}: distance {d}"),
                    );
                }
                Ok(_) => {}
                Err(e) => return PropertyReport::fail(NAME, e.to_string()),
            }
        }
        let _ = write!(details, "(n={n}, t={t}) modulus {}; ", check.modulus);
    }
    PropertyReport::pass(NAME, details.trim_end_matches("; ").to_string())
}

pub fn check_syndrome_decoder_exact() -> PropertyReport {
    const NAME: &str = "syndrome_decoder_exact";
    let check = find_check_sequence(3, 2, 104).unwrap();
    let table = crate::congruence::SyndromeTable::build(&check);
    let code = CongruenceCode::new(check, 1, vec![3, 3, 3]).unwrap();
    let mut checked = 0u64;
    let mut x = vec![0u64; 3];
    loop {
        if code.contains(&x).unwrap() {
            let mut failed = None;
            crate::congruence::for_each_weight_pattern(3, 2, |e| {
                if failed.is_some() {
                    return;
                }
                let mut y = Vec::with_capacity(3);
                for (&xi, &ei) in x.iter().zip(e) {
                    let v = xi as i64 + ei;
                    if !(0..=3).contains(&v) {
                        return;
                    }
                    y.push(v as u64);
                }
                match code.syndrome_decode(&y, &table) {
                    Ok(Some(found)) if found == e => {}
                    other => failed = Some(format!("x {x:?} + e {e:?}: {other:?}")),
                }
            });
            if let Some(msg) = failed {
                return PropertyReport::fail(NAME, msg);
            }
            checked += 1;
        }
        if !odometer(&mut x, 4) {
            break;
        }
    }
    PropertyReport::pass(NAME, format!("all weight-2 balls around {checked} codewords recovered"))
}

pub fn check_lifted_code_distance(max_n: usize) -> PropertyReport {
    const NAME: &str = "lifted_code_distance";
    let mut certified = 0u64;
    for ms in canonical_multisets(max_n, 120) {
        let dims = crate::embedding::embedding_bounds(&ms).len();
        if dims == 0 {
            continue;
        }
        let check = golomb_welch_check(dims).unwrap();
        for residue in 0..check.modulus {
            let code = CongruenceCode::new(
                check.clone(),
                residue,
                crate::embedding::embedding_bounds(&ms),
            )
            .unwrap();
            let lifted = lift_lee_code(&ms, &code).unwrap();
            match certify_min_distance(&lifted) {
                Ok(_) => certified += 1,
                Err(e) => {
                    return PropertyReport::fail(
                        NAME,
                        format!("coset {residue} over {ms}: {e}"),
                    );
                }
            }
        }
    }
    PropertyReport::pass(NAME, format!("{certified} lifted cosets certified"))
}

pub fn check_largest_coset_size_bound(max_n: usize, max_size: u64) -> PropertyReport {
    const NAME: &str = "largest_coset_size_bound";
    let mut checked = 0u64;
    for ms in canonical_multisets(max_n, max_size) {
        let dims = crate::embedding::embedding_bounds(&ms).len();
        let space: u64 = ms.space_size().try_into().unwrap();
        if dims == 0 {
            continue; // one-rank spaces have a single word; the bound is trivial
        }
        let check = golomb_welch_check(dims).unwrap();
        let (code, _) = lift_best_coset(&ms, &check).unwrap();
        // |C| * (2(n - m_1) + 1) >= |S(M)|
        if (code.len() as u64) * (2 * dims as u64 + 1) < space {
            return PropertyReport::fail(
                NAME,
                format!("best coset of {ms} has {} words, space {space}", code.len()),
            );
        }
        checked += 1;
    }
    PropertyReport::pass(NAME, format!("{checked} spaces meet the pigeonhole bound"))
}

pub fn check_t_error_coset_size_bound(max_n: usize) -> PropertyReport {
    const NAME: &str = "t_error_coset_size_bound";
    let t = 2u64;
    let mut checked = 0u64;
    for ms in canonical_multisets(max_n, 720) {
        let dims = crate::embedding::embedding_bounds(&ms).len();
        // the budget formula needs dims - 1 to be a prime power >= 2
        if dims < 3 || !is_prime_power(dims as u64 - 1) {
            continue;
        }
        let q = dims as u64 - 1;
        let budget = mt_bound(q, t).unwrap();
        let check = match find_check_sequence(dims, t, budget) {
            Ok(c) => c,
            Err(e) => return PropertyReport::fail(NAME, format!("search failed over {ms}: {e}")),
        };
        let (code, _) = lift_best_coset(&ms, &check).unwrap();
        let space: u64 = ms.space_size().try_into().unwrap();
        if (code.len() as u64) * budget < space {
            return PropertyReport::fail(
                NAME,
                format!("coset of {ms}: {} * {budget} < {space}", code.len()),
            );
        }
        if let Err(e) = certify_min_distance(&code) {
            return PropertyReport::fail(NAME, format!("distance of lifted coset over {ms}: {e}"));
        }
        checked += 1;
    }
    PropertyReport::pass(NAME, format!("{checked} double-error cosets meet the bound"))
}

pub fn check_parity_split_doubles_odd_distance() -> PropertyReport {
    const NAME: &str = "parity_split_doubles_odd_distance";
    let mut checked = 0u64;
    // full spaces (distance 1 -> 2)
    for ms in [MultiSet::redundancy(4, 2), MultiSet::redundancy(3, 2)] {
        let full = MultiPermCode::full_space(&ms).unwrap();
        let (even, odd) = crate::codes::parity_split(&full, &ms.sorted_word()).unwrap();
        for part in [&even, &odd] {
            if part.len() >= 2 {
                match certify_min_distance(part) {
                    Ok(d) if d >= 2 => checked += 1,
                    other => {
                        return PropertyReport::fail(NAME, format!("split of {ms}: {other:?}"))
                    }
                }
            }
        }
        if even.len() + odd.len() != full.len()
            || even.len().min(odd.len()) * 2 > full.len()
        {
            return PropertyReport::fail(NAME, format!("split sizes wrong over {ms}"));
        }
    }
    // a lifted single-error code (distance 3 -> 4)
    let ms = MultiSet::redundancy(4, 3);
    let check = golomb_welch_check(3).unwrap();
    let (lifted, _) = lift_best_coset(&ms, &check).unwrap();
    let (even, odd) = crate::codes::parity_split(&lifted, &ms.sorted_word()).unwrap();
    for part in [&even, &odd] {
        if part.len() >= 2 {
            match certify_min_distance(part) {
                Ok(d) if d >= 4 => checked += 1,
                other => return PropertyReport::fail(NAME, format!("lifted split: {other:?}")),
            }
        }
    }
    PropertyReport::pass(NAME, format!("{checked} parity classes certified"))
}

pub fn check_systematic_build_example() -> PropertyReport {
    const NAME: &str = "systematic_build_example";
    let mut details = String::new();
    for (k, r, t) in [(4usize, 2usize, 1u64), (5, 2, 1)] {
        let code = match SystematicCode::build(k, r, t) {
            Ok(c) => c,
            Err(e) => return PropertyReport::fail(NAME, format!("build({k},{r},{t}): {e}")),
        };
        let words = code.codewords().unwrap();
        let expected: u64 = MultiSet::symmetric(k).space_size().try_into().unwrap();
        let distinct: std::collections::HashSet<_> =
            words.iter().map(|w| w.seq().to_vec()).collect();
        if distinct.len() as u64 != expected {
            return PropertyReport::fail(
                NAME,
                format!("({k},{r},{t}): {} distinct codewords, expected {expected}", distinct.len()),
            );
        }
        for (word, sigma) in words.iter().zip(MultiSet::symmetric(k).orderings()) {
            if project_down(word, k).unwrap().as_multi() != &sigma {
                return PropertyReport::fail(NAME, format!("({k},{r},{t}): not systematic at {sigma}"));
            }
        }
        match code.certified_min_distance() {
            Ok(d) if d > 2 * t => {
                let _ = write!(details, "({k},{r},{t}): {expected} words, distance {d}; ");
            }
            other => return PropertyReport::fail(NAME, format!("({k},{r},{t}): distance {other:?}")),
        }
    }
    PropertyReport::pass(NAME, details.trim_end_matches("; ").to_string())
}

pub fn check_systematic_decoder_complete() -> PropertyReport {
    const NAME: &str = "systematic_decoder_complete";
    let mut checked = 0u64;
    for (k, r, t) in [(4usize, 2usize, 1u64), (5, 2, 1)] {
        let code = SystematicCode::build(k, r, t).unwrap();
        for word in code.codewords().unwrap() {
            for pos in legal_transpositions(word.as_multi()) {
                let corrupted = apply_adjacent_transposition(word.as_multi(), pos).unwrap();
                let corrupted = Permutation::from_multi(corrupted).unwrap();
                match code.decode(&corrupted) {
                    Ok(Some(decoded)) if decoded.codeword == word => checked += 1,
                    other => {
                        return PropertyReport::fail(
                            NAME,
                            format!("({k},{r},{t}): {word} + swap {pos}: {other:?}"),
                        );
                    }
                }
            }
        }
    }
    PropertyReport::pass(NAME, format!("{checked} single-error patterns decoded"))
}

pub fn check_decoder_matches_bruteforce() -> PropertyReport {
    const NAME: &str = "decoder_matches_bruteforce";
    let mut checked = 0u64;
    for (k, r) in [(4usize, 2usize), (5, 2)] {
        let code = SystematicCode::build(k, r, 1).unwrap();
        let inputs: Vec<Permutation> = MultiSet::symmetric(k + r)
            .orderings()
            .map(|w| Permutation::from_multi(w).unwrap())
            .collect();
        let bad = inputs.par_iter().find_map_any(|word| {
            let nearest = code.decode_bruteforce(word).unwrap();
            match code.decode(word).unwrap() {
                Some(decoded) => {
                    if decoded.codeword.as_multi() != &nearest.codeword
                        || decoded.errors != nearest.distance
                    {
                        return Some(format!("disagreement at {word}"));
                    }
                }
                None => {
                    if nearest.distance <= 1 {
                        return Some(format!(
                            "missed correction at {word} (nearest at {})",
                            nearest.distance
                        ));
                    }
                }
            }
            None
        });
        if let Some(msg) = bad {
            return PropertyReport::fail(NAME, format!("({k},{r},1): {msg}"));
        }
        checked += inputs.len() as u64;
    }
    PropertyReport::pass(NAME, format!("{checked} received words agree with the reference"))
}

/// Smallest workable double-error build found by scanning small parameters.
pub fn find_double_error_build() -> Result<SystematicCode> {
    for k in 4..=6usize {
        for r in 3..=5usize {
            match SystematicCode::build(k, r, 2) {
                Ok(code) => return Ok(code),
                Err(crate::error::Error::Infeasible { .. }) => continue,
                Err(crate::error::Error::NoCheckSequence { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Err(crate::error::Error::Infeasible {
        required: 0,
        achieved: 0,
    })
}

pub fn check_double_error_machinery() -> PropertyReport {
    const NAME: &str = "double_error_machinery";
    let code = match find_double_error_build() {
        Ok(c) => c,
        Err(e) => return PropertyReport::fail(NAME, format!("no (k <= 6, r <= 5) build: {e}")),
    };
    let (k, r) = (code.k(), code.r());
    match code.certified_min_distance() {
        Ok(d) if d >= 5 => {}
        other => return PropertyReport::fail(NAME, format!("({k},{r},2) distance: {other:?}")),
    }
    let mut checked = 0u64;
    for word in code.codewords().unwrap() {
        // all distinct words within two transpositions
        let mut reachable = std::collections::HashSet::new();
        for p1 in legal_transpositions(word.as_multi()) {
            let once = apply_adjacent_transposition(word.as_multi(), p1).unwrap();
            reachable.insert(once.seq().to_vec());
            for p2 in legal_transpositions(&once) {
                let twice = apply_adjacent_transposition(&once, p2).unwrap();
                reachable.insert(twice.seq().to_vec());
            }
        }
        for seq in reachable {
            let received =
                Permutation::from_multi(MultiPermutation::from_seq(seq).unwrap()).unwrap();
            match code.decode(&received) {
                Ok(Some(decoded)) if decoded.codeword == word => checked += 1,
                other => {
                    return PropertyReport::fail(
                        NAME,
                        format!("({k},{r},2): {word} -> {received}: {other:?}"),
                    );
                }
            }
        }
    }
    PropertyReport::pass(
        NAME,
        format!("({k},{r},2) modulus {}: distance >= 5, {checked} patterns decoded", code.modulus()),
    )
}

pub fn check_general_systematic_code() -> PropertyReport {
    const NAME: &str = "general_systematic_code";
    let info: MultiSet = "1^2+2".parse().unwrap();
    let redundancy: MultiSet = "3^2".parse().unwrap();
    let code = match GeneralSystematicCode::build(&info, &redundancy, 1) {
        Ok(c) => c,
        Err(e) => return PropertyReport::fail(NAME, format!("build failed: {e}")),
    };
    let mut seen = std::collections::HashSet::new();
    let mut decoded_patterns = 0u64;
    for kappa in info.orderings() {
        let word = match code.encode(&kappa) {
            Ok(w) => w,
            Err(e) => return PropertyReport::fail(NAME, format!("encode {kappa}: {e}")),
        };
        if !seen.insert(word.seq().to_vec()) {
            return PropertyReport::fail(NAME, format!("duplicate codeword for {kappa}"));
        }
        for pos in legal_transpositions(&word) {
            let corrupted = apply_adjacent_transposition(&word, pos).unwrap();
            match code.decode(&corrupted) {
                Ok(Some(d)) if d.codeword == word => decoded_patterns += 1,
                other => {
                    return PropertyReport::fail(
                        NAME,
                        format!("{word} + swap {pos}: {other:?}"),
                    );
                }
            }
        }
    }
    if seen.len() != 3 {
        return PropertyReport::fail(NAME, format!("{} codewords, expected 3", seen.len()));
    }
    match code.certified_min_distance() {
        Ok(d) if d >= 3 => {}
        other => return PropertyReport::fail(NAME, format!("min distance: {other:?}")),
    }
    PropertyReport::pass(
        NAME,
        format!("3 information words systematic, {decoded_patterns} single errors decoded"),
    )
}

pub fn check_corrupted_code_file_rejected() -> PropertyReport {
    const NAME: &str = "corrupted_code_file_rejected";
    let code = SystematicCode::build(4, 2, 1).unwrap();
    let json = code.to_json().unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rho0 = value["rhos"][0].clone();
    value["rhos"][1] = rho0;
    let corrupted = serde_json::to_string(&value).unwrap();
    match SystematicCode::from_json(&corrupted) {
        Err(_) => PropertyReport::pass(NAME, "duplicate redundancy word rejected".into()),
        Ok(_) => PropertyReport::fail(NAME, "corrupted file accepted".into()),
    }
}

pub fn check_simulation_within_radius() -> PropertyReport {
    const NAME: &str = "simulation_within_radius";
    let code = SystematicCode::build(5, 2, 1).unwrap();
    let trials = 10_000;
    let report = match simulate(&code, ChannelSpec { error_count: 1, seed: 2024 }, trials) {
        Ok(r) => r,
        Err(e) => return PropertyReport::fail(NAME, e.to_string()),
    };
    if report.corrected != trials || report.miscorrected != 0 {
        return PropertyReport::fail(
            NAME,
            format!(
                "corrected {} of {trials}, miscorrected {}",
                report.corrected, report.miscorrected
            ),
        );
    }
    PropertyReport::pass(NAME, format!("{trials} single-error trials all corrected"))
}

pub fn check_simulation_beyond_radius() -> PropertyReport {
    const NAME: &str = "simulation_beyond_radius";
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    let code = SystematicCode::build(5, 2, 1).unwrap();
    let trials = 10_000u64;
    let report = match simulate(&code, ChannelSpec { error_count: 2, seed: 2024 }, trials) {
        Ok(r) => r,
        Err(e) => return PropertyReport::fail(NAME, e.to_string()),
    };
    if report.corrected + report.miscorrected + report.detected_uncorrectable != trials {
        return PropertyReport::fail(NAME, "counters do not add up".into());
    }
    // replay the trials and audit the distance contract on every decode
    for trial in 0..trials {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        rng.set_stream(trial);
        let index = BigUint::from(rng.gen_range(0..120u64));
        let sigma = crate::rank::unrank(&index, code.general().info_alphabet()).unwrap();
        let word = code.general().encode(&sigma).unwrap();
        let received = crate::channel::corrupt(&word, 2, &mut rng).unwrap();
        if let Some(decoded) = code.general().decode(&received).unwrap() {
            let d = kendall_distance(&received, &decoded.codeword).unwrap();
            if d > 1 {
                return PropertyReport::fail(
                    NAME,
                    format!("trial {trial}: returned codeword at distance {d}"),
                );
            }
        }
    }
    PropertyReport::pass(
        NAME,
        format!(
            "{trials} double-error trials: {} corrected, {} miscorrected, {} detected, contract held",
            report.corrected, report.miscorrected, report.detected_uncorrectable
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_multisets_enumerate_compositions() {
        let sets = canonical_multisets(3, 1000);
        // compositions of 1, 2, 3: 1 + 2 + 4
        assert_eq!(sets.len(), 7);
        assert!(sets.iter().all(|ms| ms.len() <= 3));

        let bounded = canonical_multisets(7, 720);
        assert!(bounded
            .iter()
            .all(|ms| ms.space_size() <= BigUint::from(720u32)));
        // S_7 itself is excluded by the size cap
        assert!(!bounded.iter().any(|ms| ms == &MultiSet::symmetric(7)));
    }

    #[test]
    fn fast_suites_pass() {
        for report in verify_all(VerifyConfig { max_n: 4, suite: Suite::Core }) {
            assert!(report.passed, "{}: {}", report.property, report.details);
        }
        for report in verify_all(VerifyConfig { max_n: 4, suite: Suite::Lee }) {
            assert!(report.passed, "{}: {}", report.property, report.details);
        }
    }

    #[test]
    fn coverage_names_match_reports() {
        let reports = verify_all(VerifyConfig { max_n: 2, suite: Suite::All });
        let names: std::collections::HashSet<&str> =
            COVERAGE.iter().map(|&(name, _)| name).collect();
        for report in &reports {
            assert!(
                names.contains(report.property.as_str()),
                "unlisted property {}",
                report.property
            );
        }
        assert_eq!(reports.len(), COVERAGE.len());
    }
}
