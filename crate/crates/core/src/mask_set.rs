//! Recursive defect-masking sets.
//!
//! `M(s, m)` is a set of words of length `2^m` such that for any `s` cell
//! positions and any values demanded there, some member agrees with all of
//! them. The set is built as the union of
//!
//! * `[w, w]` for every `w` in `M(s, m-1)`, and
//! * `[w1, w2]` for `w1` in `M(i, m-1)`, `w2` in `M(s-i, m-1)`, `i = 1..s-1`,
//!
//! bottoming out at `M(1, .) = {0...0, 1...1}` and at `M(s, ceil(log2 s))`,
//! which is every word of length `2^ceil(log2 s)`.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::sync::Arc;

use crate::bitword::BitWord;
use crate::error::{param, Error, Result};

/// `ceil(log2 s)` for `s >= 1`.
pub fn ceil_log2(s: usize) -> u32 {
    assert!(s >= 1);
    s.next_power_of_two().trailing_zeros()
}

/// Largest exhaustive base level supported: `2^(2^4)` words of length 16.
const MAX_BASE_LOG: u32 = 4;

fn check_params(s: usize, m: u32) -> Result<()> {
    if s == 0 {
        return param("multiplicity s must be at least 1");
    }
    let l = ceil_log2(s);
    if l > m {
        return param(format!("ceil(log2 s) = {l} exceeds m = {m}"));
    }
    if l > MAX_BASE_LOG {
        return param(format!(
            "s = {s} needs an exhaustive base level of 2^{} words",
            1u64 << l
        ));
    }
    if m >= usize::BITS - 1 {
        return param(format!("m = {m} is too large"));
    }
    Ok(())
}

/// Cell positions with the value each one is stuck at (or, inside the codec,
/// the value a mask must take there).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StuckPattern {
    entries: Vec<(usize, bool)>,
}

impl StuckPattern {
    /// Rejects duplicate positions.
    pub fn new(entries: Vec<(usize, bool)>) -> Result<Self> {
        let mut seen: Vec<usize> = entries.iter().map(|e| e.0).collect();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return param(format!("duplicate stuck position {}", w[0]));
        }
        Ok(StuckPattern { entries })
    }

    pub fn empty() -> Self {
        StuckPattern::default()
    }

    pub fn entries(&self) -> &[(usize, bool)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_position(&self) -> Option<usize> {
        self.entries.iter().map(|e| e.0).max()
    }

    /// Parses whitespace- or comma-separated `pos:val` pairs, e.g. `2:1 5:1`.
    pub fn parse(spec: &str) -> Result<Self> {
        let entries = spec
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|tok| {
                let (p, v) = tok
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected pos:val, got {tok:?}")))?;
                let pos = p
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad position {p:?}: {e}")))?;
                let val = match v {
                    "0" => false,
                    "1" => true,
                    _ => {
                        return Err(Error::Parse(format!(
                            "stuck value must be 0 or 1, got {v:?}"
                        )))
                    }
                };
                Ok((pos, val))
            })
            .collect::<Result<Vec<_>>>()?;
        StuckPattern::new(entries)
    }
}

/// True iff `mask` takes value `v` at every `(p, v)` of `pattern`.
pub fn covers(mask: &BitWord, pattern: &StuckPattern) -> bool {
    pattern
        .entries
        .iter()
        .all(|&(p, v)| p < mask.len() && mask.get(p) == v)
}

/// A deduplicated mask set in canonical (lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskSet {
    s: usize,
    m: u32,
    masks: Vec<BitWord>,
}

impl MaskSet {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Word length `2^m`.
    pub fn n(&self) -> usize {
        1 << self.m
    }

    pub fn masks(&self) -> &[BitWord] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn index_of(&self, word: &BitWord) -> Option<usize> {
        self.masks.binary_search(word).ok()
    }

    pub fn is_member(&self, word: &BitWord) -> Result<bool> {
        if word.len() != self.n() {
            return param(format!(
                "word length {} does not match mask length {}",
                word.len(),
                self.n()
            ));
        }
        Ok(self.index_of(word).is_some())
    }

    /// A member covering `required`, built without searching the set.
    pub fn synthesize(&self, required: &StuckPattern) -> Result<BitWord> {
        synthesize_mask(self.s, self.m, required)
    }

    /// Writes the `maskset v1` text format.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "maskset v1 s={} m={} count={}",
            self.s,
            self.m,
            self.masks.len()
        )?;
        for w in &self.masks {
            writeln!(out, "{}", w.to_hex())?;
        }
        Ok(())
    }

    /// Reads the `maskset v1` text format. The masks must be distinct and in
    /// canonical order; membership in the construction is not re-derived.
    pub fn read_from<R: BufRead>(input: R) -> Result<MaskSet> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty mask-set file".into()))??;
        let fields = parse_header(&header, "maskset", &["s", "m", "count"])?;
        let (s, m, count) = (fields[0], fields[1] as u32, fields[2]);
        check_params(s, m)?;
        let n = 1usize << m;
        let mut masks = Vec::with_capacity(count);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            masks.push(BitWord::from_hex(&line, n)?);
        }
        if masks.len() != count {
            return Err(Error::Parse(format!(
                "header declares {count} masks, file has {}",
                masks.len()
            )));
        }
        if masks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(
                "masks are not distinct and canonically ordered".into(),
            ));
        }
        Ok(MaskSet { s, m, masks })
    }
}

/// Parses `<kind> v1 k1=<u> k2=<u> ...` with keys in the given order.
pub(crate) fn parse_header(line: &str, kind: &str, keys: &[&str]) -> Result<Vec<usize>> {
    let mut toks = line.split_whitespace();
    if toks.next() != Some(kind) || toks.next() != Some("v1") {
        return Err(Error::Parse(format!(
            "expected `{kind} v1` header, got {line:?}"
        )));
    }
    let mut values = Vec::with_capacity(keys.len());
    for key in keys {
        let tok = toks
            .next()
            .ok_or_else(|| Error::Parse(format!("header missing {key}=")))?;
        let v = tok
            .strip_prefix(key)
            .and_then(|t| t.strip_prefix('='))
            .ok_or_else(|| Error::Parse(format!("expected {key}=<n>, got {tok:?}")))?;
        values.push(
            v.parse()
                .map_err(|e| Error::Parse(format!("bad {key} value {v:?}: {e}")))?,
        );
    }
    Ok(values)
}

/// Memoizing builder; sub-results for every `(s', m')` are shared across
/// calls, so building a whole table of sets costs little more than the
/// largest one.
#[derive(Debug, Default)]
pub struct MaskSetBuilder {
    memo: HashMap<(usize, u32), Arc<Vec<BitWord>>>,
}

impl MaskSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn build(&mut self, s: usize, m: u32) -> Result<MaskSet> {
        check_params(s, m)?;
        let masks = self.level(s, m);
        Ok(MaskSet {
            s,
            m,
            masks: masks.as_ref().clone(),
        })
    }

    fn level(&mut self, s: usize, m: u32) -> Arc<Vec<BitWord>> {
        if let Some(hit) = self.memo.get(&(s, m)) {
            return Arc::clone(hit);
        }
        let n = 1usize << m;
        let masks = if s == 1 {
            vec![BitWord::zeros(n), BitWord::ones(n)]
        } else if m == ceil_log2(s) {
            // every word of length 2^m; counting upward is already lexicographic
            (0u64..1 << n)
                .map(|x| BitWord::from_fn(n, |i| x >> (n - 1 - i) & 1 == 1))
                .collect()
        } else {
            let same = self.level(s, m - 1);
            let mut out: Vec<BitWord> = same.iter().map(BitWord::doubled).collect();
            for i in 1..s {
                let left = self.level(i, m - 1);
                let right = self.level(s - i, m - 1);
                out.reserve(left.len() * right.len());
                for a in left.iter() {
                    for b in right.iter() {
                        out.push(a.concat(b));
                    }
                }
            }
            out.sort_unstable();
            out.dedup();
            out
        };
        let masks = Arc::new(masks);
        self.memo.insert((s, m), Arc::clone(&masks));
        masks
    }
}

/// Builds `M(s, m)`.
pub fn build_mask_set(s: usize, m: u32) -> Result<MaskSet> {
    MaskSetBuilder::new().build(s, m)
}

/// `|M(s, m)|`, by enumeration.
pub fn mask_count(s: usize, m: u32) -> Result<usize> {
    build_mask_set(s, m).map(|set| set.len())
}

/// `2^s * m^(s-1)`.
pub fn count_upper_bound(s: usize, m: u32) -> u128 {
    (1u128 << s) * (m as u128).pow(s.saturating_sub(1) as u32)
}

/// `2 * sum_{i=0}^{min(m, s-1)} C(m, i)`: generator rows of `RM(s-1, m)`
/// and their complements.
pub fn count_lower_bound(s: usize, m: u32) -> u128 {
    let top = (m as usize).min(s.saturating_sub(1));
    2 * (0..=top)
        .map(|i| binomial(m as u64, i as u64))
        .sum::<u128>()
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Builds a member of `M(s, m)` that takes the required value at every
/// constrained position.
///
/// With `k = |required|` constraints the mask is produced inside `M(k, m)`,
/// which nests inside `M(s, m)`. At each level the constraints either all
/// fall in one half (solve that half at the same multiplicity and duplicate
/// it) or split as `(i, k-i)` (solve each half at its own multiplicity). Base
/// levels fill unconstrained bits with 0.
pub fn synthesize_mask(s: usize, m: u32, required: &StuckPattern) -> Result<BitWord> {
    check_params(s, m)?;
    if required.len() > s {
        return Err(Error::Capacity {
            count: required.len(),
            max: s,
        });
    }
    let n = 1usize << m;
    if let Some(p) = required.max_position().filter(|&p| p >= n) {
        return param(format!("position {p} out of range for length {n}"));
    }
    Ok(synth(m, required.entries()))
}

fn synth(m: u32, constraints: &[(usize, bool)]) -> BitWord {
    let n = 1usize << m;
    match constraints {
        [] => BitWord::zeros(n),
        [(_, v)] => {
            if *v {
                BitWord::ones(n)
            } else {
                BitWord::zeros(n)
            }
        }
        _ if m == ceil_log2(constraints.len()) => {
            let mut w = BitWord::zeros(n);
            for &(p, v) in constraints {
                w.set(p, v);
            }
            w
        }
        _ => {
            let half = n / 2;
            let (left, right): (Vec<_>, Vec<_>) = constraints.iter().partition(|c| c.0 < half);
            let right: Vec<_> = right.into_iter().map(|(p, v)| (p - half, v)).collect();
            if left.is_empty() {
                synth(m - 1, &right).doubled()
            } else if right.is_empty() {
                synth(m - 1, &left).doubled()
            } else {
                synth(m - 1, &left).concat(&synth(m - 1, &right))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    fn pat(e: &[(usize, u8)]) -> StuckPattern {
        StuckPattern::new(e.iter().map(|&(p, v)| (p, v == 1)).collect()).unwrap()
    }

    #[test]
    fn single_defect_set_is_the_two_constants() {
        let set = build_mask_set(1, 3).unwrap();
        assert_eq!(set.masks(), &[w("00000000"), w("11111111")]);
    }

    #[test]
    fn two_defect_set_matches_matrix_view() {
        let set = build_mask_set(2, 3).unwrap();
        let mut expected: Vec<BitWord> = [
            "00000000", "00001111", "00110011", "01010101", "11111111", "11110000", "11001100",
            "10101010",
        ]
        .iter()
        .map(|s| w(s))
        .collect();
        expected.sort();
        assert_eq!(set.masks(), expected.as_slice());
    }

    #[test]
    fn three_defect_count_small() {
        assert_eq!(mask_count(3, 3).unwrap(), 34);
        assert!(34 <= count_upper_bound(3, 3));
    }

    #[test]
    fn s2_count_formula() {
        for m in 1..=10 {
            assert_eq!(mask_count(2, m).unwrap(), 2 * (m as usize + 1), "m={m}");
        }
    }

    #[test]
    fn bounds_arithmetic() {
        assert_eq!(count_upper_bound(3, 3), 72);
        assert_eq!(count_upper_bound(2, 5), 20);
        assert_eq!(count_lower_bound(3, 3), 14);
        assert_eq!(count_lower_bound(2, 3), 8);
        assert_eq!(count_lower_bound(1, 7), 2);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(build_mask_set(0, 3), Err(Error::Parameter(_))));
        assert!(matches!(build_mask_set(5, 2), Err(Error::Parameter(_))));
        assert!(matches!(build_mask_set(3, 1), Err(Error::Parameter(_))));
        assert!(build_mask_set(2, 1).is_ok());
    }

    #[test]
    fn covers_examples() {
        assert!(covers(&w("00001111"), &pat(&[(2, 0), (5, 1)])));
        assert!(covers(&w("01101001"), &StuckPattern::empty()));
        assert!(!covers(&w("00000000"), &pat(&[(0, 1)])));
    }

    #[test]
    fn synthesize_examples() {
        assert_eq!(
            synthesize_mask(2, 3, &pat(&[(2, 0), (5, 1)])).unwrap(),
            w("00001111")
        );
        assert_eq!(
            synthesize_mask(1, 3, &pat(&[(4, 1)])).unwrap(),
            w("11111111")
        );
        assert_eq!(
            synthesize_mask(3, 3, &StuckPattern::empty()).unwrap(),
            w("00000000")
        );
    }

    #[test]
    fn synthesize_errors() {
        assert!(matches!(
            synthesize_mask(2, 3, &pat(&[(0, 1), (1, 0), (2, 1)])),
            Err(Error::Capacity { count: 3, max: 2 })
        ));
        assert!(matches!(
            synthesize_mask(2, 3, &pat(&[(8, 1)])),
            Err(Error::Parameter(_))
        ));
        assert!(StuckPattern::new(vec![(1, true), (1, false)]).is_err());
    }

    #[test]
    fn membership() {
        let m23 = build_mask_set(2, 3).unwrap();
        assert!(m23.is_member(&w("01010101")).unwrap());
        assert!(!m23.is_member(&w("01010100")).unwrap());
        assert!(m23.is_member(&w("0101")).is_err());
        let m13 = build_mask_set(1, 3).unwrap();
        assert!(m13.is_member(&w("00000000")).unwrap());
    }

    #[test]
    fn file_round_trip() {
        let set = build_mask_set(3, 4).unwrap();
        let mut buf = Vec::new();
        set.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("maskset v1 s=3 m=4 count=60\n"));
        assert_eq!(text.lines().nth(1).unwrap().len(), 4);
        let back = MaskSet::read_from(buf.as_slice()).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn file_rejects_count_mismatch() {
        let text = "maskset v1 s=1 m=3 count=3\n00\nff\n";
        assert!(MaskSet::read_from(text.as_bytes()).is_err());
        let unordered = "maskset v1 s=1 m=3 count=2\nff\n00\n";
        assert!(MaskSet::read_from(unordered.as_bytes()).is_err());
    }

    #[test]
    fn stuck_pattern_parse() {
        let p = StuckPattern::parse("2:1 5:1").unwrap();
        assert_eq!(p.entries(), &[(2, true), (5, true)]);
        assert!(StuckPattern::parse("2:2").is_err());
        assert!(StuckPattern::parse("2:1,2:0").is_err());
        assert!(StuckPattern::parse("").unwrap().is_empty());
    }
}
