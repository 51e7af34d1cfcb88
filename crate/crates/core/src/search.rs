//! Exhaustive search for pairs of triads with equal sums of fourth powers and
//! equal products, used as an independent check on the parametric family.
//!
//! Every multiset `{x ≤ y ≤ z} ⊂ [1, N]` is keyed by the exact pair
//! `(x⁴ + y⁴ + z⁴, xyz)`; triads sharing a key form the pairs. To bound
//! memory the key space is split into buckets by a hash of the key. Each
//! bucket re-enumerates all triads, keeps the ones that fall into it, sorts
//! them and reads off runs of equal keys. Buckets are independent, so they
//! can be handed to worker threads, and the final sort makes the output
//! independent of how the work was split.

use std::ops::RangeInclusive;
use std::time::Duration;

use crate::clock::Stopwatch;

use num_integer::Integer;

use crate::family::{final_family, FamilyError, ParamPoint, Triad, TriadPair};

/// Triads kept in memory per bucket, roughly.
const BUCKET_TARGET: u64 = 1 << 20;

type RawPair = ([u32; 3], [u32; 3]);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest entry allowed, `N ≥ 1`.
    pub bound: u32,
    pub primitive_only: bool,
    /// Number of worker threads; the key space is split into at least this
    /// many buckets.
    pub partitions: usize,
}

impl SearchConfig {
    pub fn new(bound: u32) -> Self {
        SearchConfig {
            bound,
            primitive_only: false,
            partitions: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    /// Sorted by `(sum4, left, right)`, no duplicates.
    pub pairs: Vec<TriadPair>,
    pub triads_enumerated: u64,
    pub elapsed: Duration,
}

/// Number of multisets `{x ≤ y ≤ z}` drawn from `[1, n]`.
pub fn triad_count(n: u32) -> u64 {
    let n = u64::from(n);
    n * (n + 1) * (n + 2) / 6
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Entry {
    sum4: u128,
    prod: u128,
    triad: [u32; 3],
}

fn bucket_of(sum4: u128, prod: u128, buckets: u64) -> u64 {
    if buckets == 1 {
        return 0;
    }
    let h = (sum4 as u64 ^ (sum4 >> 64) as u64)
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .rotate_left(29)
        ^ (prod as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    (h ^ (h >> 31)) % buckets
}

/// All triads in one bucket, sorted.
fn collect_bucket(bound: u32, fourth: &[u128], bucket: u64, buckets: u64) -> Vec<Entry> {
    let mut out = Vec::new();
    for z in 1..=bound {
        let z4 = fourth[z as usize];
        for y in 1..=z {
            let yz4 = z4 + fourth[y as usize];
            let yz = u128::from(y) * u128::from(z);
            for x in 1..=y {
                let sum4 = yz4 + fourth[x as usize];
                let prod = yz * u128::from(x);
                if bucket_of(sum4, prod, buckets) == bucket {
                    out.push(Entry {
                        sum4,
                        prod,
                        triad: [x, y, z],
                    });
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn gcd6(a: &[u32; 3], b: &[u32; 3]) -> u32 {
    a.iter().chain(b).fold(0u32, |g, v| g.gcd(v))
}

/// Pairs from runs of equal keys, plus the number of triads seen.
fn bucket_pairs(entries: &[Entry], primitive_only: bool) -> Vec<RawPair> {
    let mut out = Vec::new();
    for run in entries.chunk_by(|a, b| a.sum4 == b.sum4 && a.prod == b.prod) {
        for (i, left) in run.iter().enumerate() {
            for right in &run[i + 1..] {
                if primitive_only && gcd6(&left.triad, &right.triad) != 1 {
                    continue;
                }
                out.push((left.triad, right.triad));
            }
        }
    }
    out
}

fn to_pair(left: [u32; 3], right: [u32; 3]) -> TriadPair {
    let t = |v: [u32; 3]| Triad::from_u64s(v.map(u64::from)).expect("positive entries");
    TriadPair::new(t(left), t(right)).expect("search pairs share their key")
}

/// Every nontrivial pair of triads with entries in `[1, bound]`.
pub fn enumerate_pairs(cfg: &SearchConfig) -> SearchReport {
    let start = Stopwatch::start();
    let bound = cfg.bound;
    if bound == 0 {
        return SearchReport {
            pairs: Vec::new(),
            triads_enumerated: 0,
            elapsed: start.elapsed(),
        };
    }
    let fourth: Vec<u128> = (0..=u128::from(bound)).map(|v| v * v * v * v).collect();
    let total = triad_count(bound);
    let workers = cfg.partitions.max(1);
    let buckets = total.div_ceil(BUCKET_TARGET).max(workers as u64);

    let run_bucket = |b: u64| {
        let entries = collect_bucket(bound, &fourth, b, buckets);
        (
            entries.len() as u64,
            bucket_pairs(&entries, cfg.primitive_only),
        )
    };

    let results: Vec<(u64, Vec<RawPair>)> = if workers == 1 {
        (0..buckets).map(run_bucket).collect()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| {
                    let run_bucket = &run_bucket;
                    s.spawn(move || {
                        (w..buckets)
                            .step_by(workers)
                            .map(run_bucket)
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };

    let mut triads_enumerated = 0;
    let mut raw = Vec::new();
    for (count, pairs) in results {
        triads_enumerated += count;
        raw.extend(pairs);
    }
    let mut pairs: Vec<TriadPair> = raw.into_iter().map(|(l, r)| to_pair(l, r)).collect();
    sort_pairs(&mut pairs);
    SearchReport {
        pairs,
        triads_enumerated,
        elapsed: start.elapsed(),
    }
}

/// Sort by `(sum4, left, right)` and drop repeats of the same pair.
pub fn sort_pairs(pairs: &mut Vec<TriadPair>) {
    pairs.sort_by(|a, b| {
        a.key()
            .cmp(&b.key())
            .then_with(|| a.source().cmp(&b.source()))
    });
    pairs.dedup_by(|a, b| a.key() == b.key());
}

/// Family pairs over a grid of `(a, b)`.
#[derive(Debug, Clone, Default)]
pub struct GridReport {
    /// Nondegenerate, nontrivial canonical pairs, deduplicated and sorted;
    /// each keeps the first `(a, b)` that produced it.
    pub pairs: Vec<TriadPair>,
    pub points: usize,
    pub degenerate: usize,
    pub trivial: usize,
    /// Pairs dropped because an entry exceeded `max_element`.
    pub over_bound: usize,
}

pub fn family_grid(
    a_range: RangeInclusive<i64>,
    b_range: RangeInclusive<i64>,
    max_element: Option<u64>,
) -> Result<GridReport, FamilyError> {
    let mut report = GridReport::default();
    for a in a_range {
        for b in b_range.clone() {
            report.points += 1;
            let pt = ParamPoint { a, b };
            if a == 0 && b == 0 || !crate::family::classify(&pt).is_empty() {
                report.degenerate += 1;
                continue;
            }
            let member = match final_family(&pt) {
                Ok(m) => m,
                Err(FamilyError::Degenerate(_)) => {
                    report.degenerate += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            if member.trivial {
                report.trivial += 1;
                continue;
            }
            if let Some(max) = max_element {
                if member.pair.max_entry() > &max.into() {
                    report.over_bound += 1;
                    continue;
                }
            }
            report.pairs.push(member.pair);
        }
    }
    sort_pairs(&mut report.pairs);
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct CrossValidation {
    pub grid: GridReport,
    pub search_pairs: usize,
    pub triads_enumerated: u64,
    /// Family pairs within the bound that the search did not report.
    pub misses: Vec<TriadPair>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.misses.is_empty()
    }
}

/// Check that every family pair over the grid with entries `≤ bound` is found
/// by the exhaustive search.
pub fn cross_validate(
    a_range: RangeInclusive<i64>,
    b_range: RangeInclusive<i64>,
    bound: u32,
    partitions: usize,
) -> Result<CrossValidation, FamilyError> {
    let grid = family_grid(a_range, b_range, Some(u64::from(bound)))?;
    if grid.pairs.is_empty() {
        return Ok(CrossValidation {
            grid,
            search_pairs: 0,
            triads_enumerated: 0,
            misses: Vec::new(),
        });
    }
    let report = enumerate_pairs(&SearchConfig {
        bound,
        primitive_only: false,
        partitions,
    });
    let misses = grid
        .pairs
        .iter()
        .filter(|p| {
            report
                .pairs
                .binary_search_by(|q| q.key().cmp(&p.key()))
                .is_err()
        })
        .cloned()
        .collect();
    Ok(CrossValidation {
        search_pairs: report.pairs.len(),
        triads_enumerated: report.triads_enumerated,
        grid,
        misses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_pair() -> TriadPair {
        to_pair([7, 133, 153], [17, 49, 171])
    }

    #[test]
    fn counts() {
        assert_eq!(triad_count(1), 1);
        assert_eq!(triad_count(175), 908_600);
        assert_eq!(triad_count(400), 10_746_800);
    }

    #[test]
    fn tiny_bounds() {
        let r = enumerate_pairs(&SearchConfig::new(1));
        assert!(r.pairs.is_empty());
        assert_eq!(r.triads_enumerated, 1);
        let r = enumerate_pairs(&SearchConfig::new(6));
        assert!(r.pairs.is_empty());
        assert_eq!(r.triads_enumerated, 56);
    }

    #[test]
    fn bound_brackets_example_pair() {
        let hit = enumerate_pairs(&SearchConfig::new(171));
        assert!(hit.pairs.contains(&example_pair()));
        let miss = enumerate_pairs(&SearchConfig::new(170));
        assert!(!miss.pairs.contains(&example_pair()));
        assert_eq!(miss.triads_enumerated, triad_count(170));
    }

    #[test]
    fn bucketing_does_not_change_results() {
        let fourth: Vec<u128> = (0..=60u128).map(|v| v.pow(4)).collect();
        let whole = collect_bucket(60, &fourth, 0, 1);
        let mut split: Vec<Entry> = (0..7)
            .flat_map(|b| collect_bucket(60, &fourth, b, 7))
            .collect();
        split.sort_unstable();
        assert_eq!(whole, split);
    }

    #[test]
    fn grid_skips_degenerate_lines() {
        let g = family_grid(-3..=3, 0..=0, None).unwrap();
        assert!(g.pairs.is_empty());
        assert_eq!(g.degenerate, 7);
        let (lo, hi) = (1, 0);
        let empty = cross_validate(lo..=hi, lo..=hi, 50, 1).unwrap();
        assert!(empty.passed());
        assert_eq!(empty.grid.points, 0);
    }
}
