use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::mask_set::{binomial, MaskSet};

/// Largest number of `(position set, value assignment)` constraint sets an
/// exhaustive check runs without an explicit override.
pub const DEFAULT_GUARD: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub s: usize,
    pub m: u32,
    /// Constraint sets examined.
    pub checked: u128,
    /// Constraint sets with at least one covering mask.
    pub covered: u128,
    /// False when positions were sampled rather than enumerated.
    pub exhaustive: bool,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.covered == self.checked
    }
}

/// `C(2^m, s) * 2^s`.
pub fn coverage_size(s: usize, m: u32) -> u128 {
    binomial(1u64 << m, s as u64) << s
}

/// Exhaustive coverage check with the default guard.
pub fn verify_coverage(set: &MaskSet) -> Result<CoverageReport> {
    verify_coverage_with_guard(set, Some(DEFAULT_GUARD))
}

/// Checks that every set of `s` positions, under every value assignment, is
/// matched by some mask. `guard = None` disables the size limit.
pub fn verify_coverage_with_guard(set: &MaskSet, guard: Option<u128>) -> Result<CoverageReport> {
    let (s, m) = (set.s(), set.m());
    let n = set.n();
    if s > n {
        return param(format!("cannot choose {s} positions out of {n}"));
    }
    let estimate = coverage_size(s, m);
    if let Some(guard) = guard.filter(|&g| estimate > g) {
        return Err(Error::TooLarge { estimate, guard });
    }
    if s > 5 {
        return param("exhaustive coverage supports s <= 5");
    }
    let full: u64 = (1u64 << (1 << s)) - 1;
    // parallel over the smallest position of the subset
    let covered: u128 = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut covered = 0u128;
            let mut rest: Vec<usize> = (first + 1..first + s).collect();
            if rest.last().is_some_and(|&p| p >= n) {
                return 0;
            }
            loop {
                let mut seen = 0u64;
                for mask in set.masks() {
                    let mut pattern = mask.get(first) as usize;
                    for &p in &rest {
                        pattern = pattern << 1 | mask.get(p) as usize;
                    }
                    seen |= 1 << pattern;
                    if seen == full {
                        break;
                    }
                }
                covered += seen.count_ones() as u128;
                if !next_combination(&mut rest, first + 1, n) {
                    break;
                }
            }
            covered
        })
        .sum();
    Ok(CoverageReport {
        s,
        m,
        checked: estimate,
        covered,
        exhaustive: true,
    })
}

/// Advances `idx` (strictly increasing values in `lo..hi`) to the next
/// combination in lexicographic order.
fn next_combination(idx: &mut [usize], lo: usize, hi: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 && idx[i - 1] == hi - k + i - 1 {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    idx[i - 1] += 1;
    for j in i..k {
        idx[j] = idx[j - 1] + 1;
    }
    debug_assert!(idx.first().is_none_or(|&f| f >= lo));
    true
}

/// Randomized coverage check for sets too large to enumerate: `samples`
/// uniformly random position sets and value assignments, each checked by a
/// linear scan over the masks.
pub fn verify_coverage_sampled(set: &MaskSet, samples: u64, seed: u64) -> CoverageReport {
    let s = set.s().min(set.n());
    let covered = (0..samples)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let positions = sample(&mut rng, set.n(), s).into_vec();
            let values: Vec<bool> = (0..s).map(|_| rng.random()).collect();
            set.masks()
                .iter()
                .any(|w| positions.iter().zip(&values).all(|(&p, &v)| w.get(p) == v))
        })
        .count() as u128;
    CoverageReport {
        s: set.s(),
        m: set.m(),
        checked: samples as u128,
        covered,
        exhaustive: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mask_set::build_mask_set;

    #[test]
    fn sizes() {
        assert_eq!(coverage_size(2, 3), 112);
        assert_eq!(coverage_size(3, 4), 4480);
        assert_eq!(coverage_size(1, 5), 64);
    }

    #[test]
    fn small_sets_cover() {
        for (s, m) in [(1, 3), (2, 3), (3, 4)] {
            let r = verify_coverage(&build_mask_set(s, m).unwrap()).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.checked, coverage_size(s, m));
        }
    }

    #[test]
    fn guard_refuses() {
        let set = build_mask_set(4, 8).unwrap();
        assert!(matches!(verify_coverage(&set), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn s2_set_does_not_cover_three() {
        // M(2,3) viewed as a 3-defect code must fail somewhere
        let two = build_mask_set(2, 3).unwrap();
        let mut buf = Vec::new();
        two.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap().replacen("s=2", "s=3", 1);
        let relabeled = MaskSet::read_from(text.as_bytes()).unwrap();
        let r = verify_coverage(&relabeled).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn sampled_agrees() {
        let r = verify_coverage_sampled(&build_mask_set(3, 6).unwrap(), 500, 7);
        assert!(r.passed());
        assert!(!r.exhaustive);
    }
}
