//! Labels: bit positions whose values identify a mask within its set.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::bitword::BitWord;
use crate::error::{param, Error, Result};
use crate::mask_set::{build_mask_set, ceil_log2, parse_header, MaskSet};

/// Sorted label positions plus the map from restricted bits to mask index
/// (in the set's canonical order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    s: usize,
    m: u32,
    positions: Vec<usize>,
    lookup: HashMap<BitWord, usize>,
}

impl Label {
    /// Validates `positions` on `set`; order and repetition of the input do
    /// not matter, the label is stored as a sorted set.
    pub fn new(set: &MaskSet, positions: &[usize]) -> Result<Label> {
        let mut positions = positions.to_vec();
        positions.sort_unstable();
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Label("duplicate label position".into()));
        }
        if let Some(&p) = positions.iter().find(|&&p| p >= set.n()) {
            return Err(Error::Label(format!(
                "position {p} out of range for length {}",
                set.n()
            )));
        }
        let mut lookup = HashMap::with_capacity(set.len());
        for (i, mask) in set.masks().iter().enumerate() {
            if let Some(j) = lookup.insert(mask.restrict(&positions), i) {
                return Err(Error::Label(format!(
                    "masks {} and {} agree on all {} label positions",
                    set.masks()[j],
                    mask,
                    positions.len()
                )));
            }
        }
        Ok(Label {
            s: set.s(),
            m: set.m(),
            positions,
            lookup,
        })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Mask index for the given label bits (ordered like [`Label::positions`]).
    pub fn lookup(&self, bits: &BitWord) -> Option<usize> {
        self.lookup.get(bits).copied()
    }

    /// Label bits of `word`.
    pub fn extract(&self, word: &BitWord) -> BitWord {
        word.restrict(&self.positions)
    }

    /// Writes the `label v1` text format.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "label v1 s={} m={} L={}", self.s, self.m, self.len())?;
        let line: Vec<String> = self.positions.iter().map(usize::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
        Ok(())
    }
}

/// Contents of a `label v1` file, not yet validated against a mask set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelFile {
    pub s: usize,
    pub m: u32,
    pub positions: Vec<usize>,
}

impl LabelFile {
    pub fn read_from<R: BufRead>(input: R) -> Result<LabelFile> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty label file".into()))??;
        let fields = parse_header(&header, "label", &["s", "m", "L"])?;
        let mut positions = Vec::new();
        for line in lines {
            for tok in line?.split_whitespace() {
                positions.push(
                    tok.parse()
                        .map_err(|e| Error::Parse(format!("bad position {tok:?}: {e}")))?,
                );
            }
        }
        if positions.len() != fields[2] {
            return Err(Error::Parse(format!(
                "header declares L={}, file lists {} positions",
                fields[2],
                positions.len()
            )));
        }
        Ok(LabelFile {
            s: fields[0],
            m: fields[1] as u32,
            positions,
        })
    }

    pub fn into_label(self, set: &MaskSet) -> Result<Label> {
        if (self.s, self.m) != (set.s(), set.m()) {
            return Err(Error::Label(format!(
                "label file is for s={} m={}, mask set is s={} m={}",
                self.s,
                self.m,
                set.s(),
                set.m()
            )));
        }
        Label::new(set, &self.positions)
    }
}

/// True iff the masks of `set` restricted to `positions` are pairwise distinct.
pub fn validate_label(set: &MaskSet, positions: &[usize]) -> bool {
    if positions.iter().any(|&p| p >= set.n()) {
        return false;
    }
    let mut seen = HashSet::with_capacity(set.len());
    set.masks()
        .iter()
        .all(|w| seen.insert(w.restrict(positions)))
}

/// Label size for `M(2, m)`: `1 + ceil(log2(m + 1))`.
pub fn label_size_s2(m: u32) -> usize {
    1 + ceil_log2(m as usize + 1) as usize
}

/// Label positions for `M(2, m)` in construction order `l_0 .. l_{L-1}`.
///
/// Row `k` (`1..=m`) of the non-constant half of `M(2, m)` is the word whose
/// value at column `j` is bit `m-k` of `j`. Assigning row `k` the `L`-bit
/// string of the integer `k` (MSB first) and reading the strings column-wise
/// gives, for each string position, an `m`-bit column pattern; the label
/// position is the column with that binary representation. Because `k < 2^(L-1)`
/// every assigned string starts with 0, so none is constant and no two are
/// complements.
pub fn label_s2_positions(m: u32) -> Vec<usize> {
    let len = label_size_s2(m);
    (0..len)
        .map(|j| {
            // bit j (MSB first) of the L-bit string of k, for k = 1..=m
            (1..=m as usize).fold(0usize, |col, k| {
                let bit = k >> (len - 1 - j) & 1;
                col | bit << (m as usize - k)
            })
        })
        .collect()
}

/// Constructed label for `M(2, m)`.
pub fn label_s2(m: u32) -> Result<Label> {
    if m == 0 {
        return param("label_s2 requires m >= 1");
    }
    let set = build_mask_set(2, m)?;
    label_s2_for(&set)
}

/// Constructed label for an already-built `M(2, m)`.
pub fn label_s2_for(set: &MaskSet) -> Result<Label> {
    if set.s() != 2 {
        return param(format!(
            "label_s2 needs an s = 2 mask set, got s = {}",
            set.s()
        ));
    }
    Label::new(set, &label_s2_positions(set.m()))
}

/// Number of distinct label sets for `M(2, m)`:
/// `prod_{i=1}^{m} (2^L - 2i) / L!`. `None` on `u128` overflow.
pub fn count_labels_s2(m: u32) -> Option<u128> {
    let len = label_size_s2(m) as u32;
    let full = 1u128.checked_shl(len)?;
    let mut num: u128 = 1;
    for i in 1..=m as u128 {
        num = num.checked_mul(full.checked_sub(2 * i)?)?;
    }
    let fact: u128 = (1..=len as u128).product();
    Some(num / fact)
}

/// Greedy distinguishing-column search.
///
/// Masks that agree on every column chosen so far form a bucket; each step
/// picks the column that splits the most still-undistinguished pairs (the
/// lowest index on ties) and refines the buckets, until all buckets are
/// singletons.
pub fn greedy_label(set: &MaskSet) -> Result<Label> {
    if set.len() < 2 {
        return param("greedy labeling needs at least two masks");
    }
    let masks = set.masks();
    // column-major copy: each column scan then stays within a few cache lines
    let columns: Vec<BitWord> = (0..set.n())
        .into_par_iter()
        .map(|c| BitWord::from_fn(masks.len(), |i| masks[i].get(c)))
        .collect();
    let mut buckets: Vec<Vec<u32>> = vec![(0..masks.len() as u32).collect()];
    let mut chosen = vec![false; set.n()];
    let mut positions = Vec::new();
    while !buckets.is_empty() {
        let (best_score, best_col) = (0..set.n())
            .into_par_iter()
            .filter(|&c| !chosen[c])
            .map(|c| {
                let col = &columns[c];
                let score: u64 = buckets
                    .iter()
                    .map(|b| {
                        let ones = b.iter().filter(|&&i| col.get(i as usize)).count() as u64;
                        ones * (b.len() as u64 - ones)
                    })
                    .sum();
                (score, std::cmp::Reverse(c))
            })
            .max()
            .map(|(s, c)| (s, c.0))
            .expect("an unchosen column remains while masks are undistinguished");
        assert!(best_score > 0, "identical masks in set");
        chosen[best_col] = true;
        positions.push(best_col);
        buckets = buckets
            .into_iter()
            .flat_map(|b| {
                let (ones, zeros): (Vec<u32>, Vec<u32>) = b
                    .into_iter()
                    .partition(|&i| columns[best_col].get(i as usize));
                [zeros, ones]
            })
            .filter(|b| b.len() > 1)
            .collect();
    }
    let label = Label::new(set, &positions)?;
    debug_assert!(
        set.len() < 2 || label.len() as u128 <= label_upper_bound(set.s(), set.len()),
        "greedy label exceeds pair-counting bound"
    );
    Ok(label)
}

/// Which form of the lower bound on label size to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LowerBoundForm {
    /// `2^(s-2) * L(2, m-s+2)` with `L(2, m') = 1 + ceil(log2(m'+1))`; this
    /// is the form that agrees with the published table.
    #[default]
    Recursive,
    /// `2^(s-2) * (1 + ceil(log2(m-s+2)))`, the closed form as printed.
    Literal,
}

/// Lower bound on the size of any label of `M(s, m)`, `2 <= s <= m`.
pub fn label_lower_bound(s: usize, m: u32) -> Result<usize> {
    label_lower_bound_form(s, m, LowerBoundForm::Recursive)
}

pub fn label_lower_bound_form(s: usize, m: u32, form: LowerBoundForm) -> Result<usize> {
    if s < 2 || s > m as usize {
        return param(format!(
            "label lower bound needs 2 <= s <= m, got s={s} m={m}"
        ));
    }
    let reduced = m as usize - s + 2;
    let tail = match form {
        LowerBoundForm::Recursive => label_size_s2(reduced as u32),
        LowerBoundForm::Literal => 1 + ceil_log2(reduced) as usize,
    };
    Ok((1usize << (s - 2)) * tail)
}

/// Pair-counting upper bound `2^s (2 ceil(log2 N) - 1)` for a set of
/// `n_masks >= 2` masks.
pub fn label_upper_bound(s: usize, n_masks: usize) -> u128 {
    assert!(n_masks >= 2, "upper bound needs at least two masks");
    (1u128 << s) * (2 * ceil_log2(n_masks) as u128 - 1)
}

/// The weaker bound obtained by substituting `N <= 2^s m^(s-1)`:
/// `2^(s+1) ((s-1)(1 + ceil(log2 m)) - 1)`.
pub fn label_upper_bound_from_count(s: usize, m: u32) -> i128 {
    let lg = if m == 0 {
        0
    } else {
        ceil_log2(m as usize) as i128
    };
    (1i128 << (s + 1)) * ((s as i128 - 1) * (1 + lg) - 1)
}
