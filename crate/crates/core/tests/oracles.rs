//! Library results against slow, independent reimplementations.

use std::collections::BTreeSet;

use rm_stuck::harness::verify_coverage;
use rm_stuck::{build_mask_set, greedy_label, label_s2, BitWord};

/// The mask recursion on plain byte vectors.
fn naive_masks(s: usize, m: u32) -> BTreeSet<Vec<u8>> {
    let n = 1usize << m;
    if s == 1 {
        return [vec![0; n], vec![1; n]].into_iter().collect();
    }
    if (1usize << m) <= s || (m as f64) <= (s as f64).log2().ceil() {
        return (0..1u64 << n)
            .map(|x| (0..n).map(|i| (x >> (n - 1 - i) & 1) as u8).collect())
            .collect();
    }
    let mut out = BTreeSet::new();
    for w in naive_masks(s, m - 1) {
        out.insert([w.clone(), w].concat());
    }
    for i in 1..s {
        for a in naive_masks(i, m - 1) {
            for b in naive_masks(s - i, m - 1) {
                out.insert([a.clone(), b].concat());
            }
        }
    }
    out
}

fn as_bytes(w: &BitWord) -> Vec<u8> {
    w.iter().map(u8::from).collect()
}

#[test]
fn mask_sets_match_naive_recursion() {
    for s in 1..=4 {
        for m in 2..=5u32 {
            if (1usize << m) < s {
                continue;
            }
            let set = build_mask_set(s, m).unwrap();
            let got: Vec<Vec<u8>> = set.masks().iter().map(as_bytes).collect();
            let want: Vec<Vec<u8>> = naive_masks(s, m).into_iter().collect();
            assert_eq!(got, want, "s={s} m={m}");
        }
    }
}

/// Every position set and value assignment, checked mask by mask.
fn naive_coverage(masks: &[Vec<u8>], n: usize, s: usize) -> bool {
    fn rec(masks: &[Vec<u8>], n: usize, s: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == s {
            return (0..1u32 << s).all(|vals| {
                masks.iter().any(|w| {
                    chosen
                        .iter()
                        .enumerate()
                        .all(|(k, &p)| w[p] as u32 == vals >> k & 1)
                })
            });
        }
        (start..n).all(|p| {
            chosen.push(p);
            let ok = rec(masks, n, s, p + 1, chosen);
            chosen.pop();
            ok
        })
    }
    rec(masks, n, s, 0, &mut Vec::new())
}

#[test]
fn coverage_agrees_with_naive_check() {
    for (s, m) in [(1, 3), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4)] {
        let set = build_mask_set(s, m).unwrap();
        let masks: Vec<Vec<u8>> = set.masks().iter().map(as_bytes).collect();
        assert!(naive_coverage(&masks, set.n(), s), "s={s} m={m}");
        assert!(verify_coverage(&set).unwrap().passed());
    }
}

#[test]
fn dropping_a_mask_breaks_coverage() {
    // M(2,3) is minimal: each non-constant mask is the only cover of some pair
    let set = build_mask_set(2, 3).unwrap();
    let masks: Vec<Vec<u8>> = set.masks().iter().map(as_bytes).collect();
    for skip in 0..masks.len() {
        let rest: Vec<Vec<u8>> = masks
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, w)| w.clone())
            .collect();
        assert!(!naive_coverage(&rest, 8, 2), "mask {skip} redundant");
    }
}

fn distinct_on(masks: &[BitWord], positions: &[usize]) -> bool {
    let projected: BTreeSet<Vec<bool>> = masks
        .iter()
        .map(|w| positions.iter().map(|&p| w.get(p)).collect())
        .collect();
    projected.len() == masks.len()
}

#[test]
fn labels_distinguish_every_mask() {
    for m in 1..=9 {
        let label = label_s2(m).unwrap();
        let set = build_mask_set(2, m).unwrap();
        assert!(distinct_on(set.masks(), label.positions()), "s=2 m={m}");
    }
    for (s, m) in [(3, 4), (3, 6), (4, 5)] {
        let set = build_mask_set(s, m).unwrap();
        let label = greedy_label(&set).unwrap();
        assert!(distinct_on(set.masks(), label.positions()), "s={s} m={m}");
    }
}
