//! Reed-Muller codes `RM(r, m)`.
//!
//! Columns are indexed by points of `F_2^m`: column `j` is the point whose
//! binary representation is `j`, and variable `x_i` is bit `i` of `j`.

mod anf;
mod matrix;

pub use anf::{anf, anf_degree, monomial};
pub use matrix::{Echelon, Gf2Matrix};

use crate::bitword::BitWord;
use crate::error::{param, Error, Result};
use crate::mask_set::binomial;

/// Largest supported `m` (codeword length 2^20).
pub const MAX_M: u32 = 20;

/// Parameters of `RM(r, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RmCode {
    pub r: u32,
    pub m: u32,
    /// Length `2^m`.
    pub n: usize,
    /// Dimension `sum_{i<=r} C(m, i)`.
    pub k: usize,
    /// Minimum distance `2^(m-r)`.
    pub d: usize,
    /// Guaranteed correction radius `2^(m-r-1) - 1`; 0 when `r >= m-1`.
    pub t: usize,
}

impl RmCode {
    pub fn new(r: u32, m: u32) -> Result<Self> {
        if r > m {
            return param(format!("order r = {r} exceeds m = {m}"));
        }
        if m > MAX_M {
            return param(format!("m = {m} exceeds supported maximum {MAX_M}"));
        }
        let k = (0..=r).map(|i| binomial(m as u64, i as u64)).sum::<u128>() as usize;
        let d = 1usize << (m - r);
        Ok(RmCode {
            r,
            m,
            n: 1 << m,
            k,
            d,
            t: (d / 2).saturating_sub(1),
        })
    }

    pub fn generator(&self) -> Gf2Matrix {
        generator_matrix(self.r, self.m)
    }

    pub fn is_codeword(&self, word: &BitWord) -> Result<bool> {
        is_codeword(word, self)
    }

    pub fn decode(&self, word: &BitWord) -> Result<(BitWord, bool)> {
        decode(word, self)
    }
}

/// Same as [`RmCode::new`].
pub fn rm_params(r: u32, m: u32) -> Result<RmCode> {
    RmCode::new(r, m)
}

/// Variable subsets of size `<= r` (as bit sets), ordered by size and then
/// lexicographically on the sorted index lists.
pub fn monomial_order(r: u32, m: u32) -> Vec<usize> {
    let mut out = Vec::new();
    for d in 0..=r.min(m) {
        let mut subsets: Vec<Vec<u32>> = Vec::new();
        combinations(m, d, 0, &mut Vec::new(), &mut subsets);
        out.extend(
            subsets
                .into_iter()
                .map(|s| s.iter().fold(0usize, |acc, &i| acc | 1 << i)),
        );
    }
    out
}

fn combinations(m: u32, d: u32, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() as u32 == d {
        out.push(cur.clone());
        return;
    }
    for i in start..m {
        cur.push(i);
        combinations(m, d, i + 1, cur, out);
        cur.pop();
    }
}

/// Generator of `RM(r, m)` whose rows are indicator vectors of intersections
/// of at most `r` coordinate hyperplanes `{x_i = 0}`, i.e. evaluations of
/// `prod_{i in S} (1 + x_i)` for `|S| <= r`. For `r = 1, m = 3` this is
///
/// ```text
/// 11111111
/// 10101010
/// 11001100
/// 11110000
/// ```
pub fn generator_matrix(r: u32, m: u32) -> Gf2Matrix {
    let n = 1usize << m;
    let rows = monomial_order(r, m)
        .into_iter()
        .map(|vars| BitWord::from_fn(n, |j| j & vars == 0))
        .collect();
    Gf2Matrix::new(rows, n).expect("rows have length 2^m")
}

/// Plotkin form `G(r,m) = [[G(r,m-1), G(r,m-1)], [0, G(r-1,m-1)]]`.
pub fn plotkin_generator(r: i64, m: u32) -> Gf2Matrix {
    let n = 1usize << m;
    Gf2Matrix::new(plotkin_rows(r, m), n).expect("rows have length 2^m")
}

fn plotkin_rows(r: i64, m: u32) -> Vec<BitWord> {
    if r < 0 {
        return Vec::new();
    }
    if m == 0 {
        return vec![BitWord::ones(1)];
    }
    let half = 1usize << (m - 1);
    let mut rows: Vec<BitWord> = plotkin_rows(r, m - 1)
        .iter()
        .map(BitWord::doubled)
        .collect();
    let zero = BitWord::zeros(half);
    rows.extend(plotkin_rows(r - 1, m - 1).iter().map(|g| zero.concat(g)));
    rows
}

/// True iff `word` has ANF degree at most `code.r`.
pub fn is_codeword(word: &BitWord, code: &RmCode) -> Result<bool> {
    check_len(word, code)?;
    Ok(anf_degree(word).is_none_or(|d| d <= code.r))
}

fn check_len(word: &BitWord, code: &RmCode) -> Result<()> {
    if word.len() != code.n {
        return param(format!(
            "word length {} does not match code length {}",
            word.len(),
            code.n
        ));
    }
    Ok(())
}

/// `k` columns of the generator, including `required`, whose generator
/// columns are linearly independent. Required positions come first (in the
/// given order), then the set is extended greedily by increasing column index.
/// The result is sorted.
pub fn choose_information_set(code: &RmCode, required: &[usize]) -> Result<Vec<usize>> {
    if required.len() > code.k {
        return Err(Error::InfeasibleLabel(format!(
            "{} required positions exceed dimension k = {}",
            required.len(),
            code.k
        )));
    }
    if let Some(&p) = required.iter().find(|&&p| p >= code.n) {
        return param(format!("position {p} out of range for length {}", code.n));
    }
    let columns = code.generator().transpose();
    let mut basis: Vec<(usize, BitWord)> = Vec::with_capacity(code.k);
    let mut chosen = vec![false; code.n];

    let try_add = |j: usize, basis: &mut Vec<(usize, BitWord)>| -> bool {
        let mut v = columns.row(j).clone();
        for (pivot, b) in basis.iter() {
            if v.get(*pivot) {
                v ^= b;
            }
        }
        match v.first_one() {
            Some(p) => {
                basis.push((p, v));
                true
            }
            None => false,
        }
    };

    for &j in required {
        if chosen[j] {
            return param(format!("duplicate position {j}"));
        }
        if !try_add(j, &mut basis) {
            return Err(Error::InfeasibleLabel(format!(
                "generator column {j} depends on earlier label columns"
            )));
        }
        chosen[j] = true;
    }
    for j in 0..code.n {
        if basis.len() == code.k {
            break;
        }
        if !chosen[j] && try_add(j, &mut basis) {
            chosen[j] = true;
        }
    }
    debug_assert_eq!(basis.len(), code.k);
    Ok((0..code.n).filter(|&j| chosen[j]).collect())
}

/// Systematic encoder over a fixed information set.
#[derive(Debug, Clone)]
pub struct SystematicEncoder {
    code: RmCode,
    info_set: Vec<usize>,
    /// Row `t` is the codeword equal to 1 at `info_set[t]` and 0 at every
    /// other information position.
    rows: Vec<BitWord>,
}

impl SystematicEncoder {
    pub fn new(code: RmCode, info_set: &[usize]) -> Result<Self> {
        if info_set.len() != code.k {
            return param(format!(
                "information set has {} positions, code dimension is {}",
                info_set.len(),
                code.k
            ));
        }
        if info_set.windows(2).any(|w| w[0] >= w[1])
            || info_set.last().is_some_and(|&p| p >= code.n)
        {
            return param("information set must be strictly increasing positions below n");
        }
        let mut rows = code.generator().rows().to_vec();
        for (t, &col) in info_set.iter().enumerate() {
            let Some(p) = (t..rows.len()).find(|&i| rows[i].get(col)) else {
                return param(format!("information set column {col} is dependent"));
            };
            rows.swap(t, p);
            let pivot = rows[t].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != t && row.get(col) {
                    *row ^= &pivot;
                }
            }
        }
        Ok(SystematicEncoder {
            code,
            info_set: info_set.to_vec(),
            rows,
        })
    }

    pub fn code(&self) -> &RmCode {
        &self.code
    }

    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    /// The codeword whose restriction to the information set is `message`.
    pub fn encode(&self, message: &[bool]) -> Result<BitWord> {
        if message.len() != self.code.k {
            return param(format!(
                "message has {} bits, code dimension is {}",
                message.len(),
                self.code.k
            ));
        }
        let mut c = BitWord::zeros(self.code.n);
        for (row, _) in self.rows.iter().zip(message).filter(|(_, &b)| b) {
            c ^= row;
        }
        Ok(c)
    }
}

/// One-shot systematic encoding; build a [`SystematicEncoder`] to encode many
/// messages.
pub fn systematic_encode(message: &[bool], code: &RmCode, info_set: &[usize]) -> Result<BitWord> {
    SystematicEncoder::new(*code, info_set)?.encode(message)
}

/// Reed majority-logic decoding.
///
/// Coefficients of the ANF are recovered from the highest degree down: each
/// degree-`d` coefficient receives `2^(m-d)` votes, one per coset of the
/// subcube spanned by its variables. The estimate is accepted only when it lies
/// within distance `t` of `word`; for `t = 0` that means `word` itself must be
/// a codeword.
pub fn decode(word: &BitWord, code: &RmCode) -> Result<(BitWord, bool)> {
    check_len(word, code)?;
    let m = code.m;
    let mut residual = word.clone();
    let mut estimate = BitWord::zeros(code.n);
    let order = monomial_order(code.r, m);
    for d in (0..=code.r).rev() {
        let votes_total = 1usize << (m - d);
        let mut decided = Vec::new();
        for &vars in order.iter().filter(|v| v.count_ones() == d) {
            let mut folded = residual.clone();
            for i in (0..m).filter(|i| vars >> i & 1 == 1) {
                folded.fold_variable(i);
            }
            let mono = monomial(m, vars);
            let ones = folded.and_weight(&mono);
            if 2 * ones > votes_total {
                decided.push(mono);
            }
        }
        for mono in &decided {
            residual ^= mono;
            estimate ^= mono;
        }
    }
    let ok = estimate.distance(word) <= code.t;
    Ok((estimate, ok))
}
