//! Algebraic normal form of evaluation vectors.
//!
//! Position `j` of a word of length `2^m` is the value at the point whose
//! binary representation is `j`; variable `x_i` is bit `i` of `j`.

use crate::bitword::BitWord;

/// Coefficient vector of the ANF: bit `j` is the coefficient of the monomial
/// `prod_{i in bits(j)} x_i`.
///
/// # Panics
/// If the word length is not a power of two.
pub fn anf(word: &BitWord) -> BitWord {
    let m = word.log_len().expect("ANF requires a word of length 2^m");
    let mut out = word.clone();
    for var in 0..m {
        out.fold_variable(var);
    }
    out
}

/// Degree of the ANF polynomial; `None` for the zero polynomial.
pub fn anf_degree(word: &BitWord) -> Option<u32> {
    let coeffs = anf(word);
    (0..coeffs.len())
        .filter(|&j| coeffs.get(j))
        .map(|j| j.count_ones())
        .max()
}

/// Evaluation vector of the monomial `prod_{i in vars} x_i`, with `vars`
/// given as a bit set.
pub fn monomial(m: u32, vars: usize) -> BitWord {
    BitWord::from_fn(1 << m, |j| j & vars == vars)
}
