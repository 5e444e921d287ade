//! Joint stuck-at masking and random-error correction.
//!
//! Encoding places the user bits on the information positions of a
//! systematic `RM(r, m)` encoder, leaving the label positions at zero, then
//! adds a mask from `M(s, m)` that makes the word agree with every stuck
//! cell. Since the mask set lies inside `RM(s-1, m) ⊆ RM(r, m)`, the result is
//! still a codeword, and its label positions carry exactly the mask's label
//! bits. Decoding corrects random errors, reads the label, and strips the mask.
//!
//! All positions are codeword coordinates: user bit `i` goes to the `i`-th
//! smallest information position that is not a label position.

use crate::bitword::BitWord;
use crate::error::{param, Error, Result};
use crate::labeling::{greedy_label, label_s2_for, Label};
use crate::mask_set::{build_mask_set, ceil_log2, synthesize_mask, MaskSet, StuckPattern};
use crate::reed_muller::{choose_information_set, decode as rm_decode, RmCode, SystematicEncoder};

/// A fully wired encoder/decoder. Immutable once built.
#[derive(Debug, Clone)]
pub struct CodecConfig {
    code: RmCode,
    s: usize,
    mask_set: MaskSet,
    label: Label,
    encoder: SystematicEncoder,
    user_positions: Vec<usize>,
}

/// Intermediate values of one encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodeTrace {
    /// Intermediate message over the information set (label bits zero).
    pub intermediate_message: Vec<bool>,
    /// Systematic codeword before masking.
    pub intermediate_codeword: BitWord,
    pub mask: BitWord,
    pub codeword: BitWord,
}

/// Intermediate values of one decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeTrace {
    pub codeword: BitWord,
    pub label_bits: BitWord,
    pub mask_index: usize,
    pub mask: BitWord,
    pub intermediate_codeword: BitWord,
    pub message: Vec<bool>,
}

impl CodecConfig {
    /// Builds `M(s, m)`, picks a label (the given one, the constructed one for
    /// `s = 2`, greedy otherwise) and an information set containing it.
    pub fn new(r: u32, m: u32, s: usize, label: Option<&[usize]>) -> Result<Self> {
        check_orders(r, m, s)?;
        let mask_set = build_mask_set(s, m)?;
        let label = match label {
            Some(p) => Label::new(&mask_set, p)?,
            None if s == 2 => label_s2_for(&mask_set)?,
            None => greedy_label(&mask_set)?,
        };
        Self::from_parts(r, mask_set, label)
    }

    /// Wires a prebuilt mask set and label into `RM(r, m)`.
    pub fn from_parts(r: u32, mask_set: MaskSet, label: Label) -> Result<Self> {
        let (m, s) = (mask_set.m(), mask_set.s());
        check_orders(r, m, s)?;
        if (label.s(), label.m()) != (s, m) {
            return Err(Error::Label(format!(
                "label built for s={} m={}, mask set is s={s} m={m}",
                label.s(),
                label.m()
            )));
        }
        let code = RmCode::new(r, m)?;
        let info_set = choose_information_set(&code, label.positions())?;
        let encoder = SystematicEncoder::new(code, &info_set)?;
        let user_positions = info_set
            .iter()
            .copied()
            .filter(|p| label.positions().binary_search(p).is_err())
            .collect();
        Ok(CodecConfig {
            code,
            s,
            mask_set,
            label,
            encoder,
            user_positions,
        })
    }

    pub fn code(&self) -> &RmCode {
        &self.code
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn mask_set(&self) -> &MaskSet {
        &self.mask_set
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    pub fn info_set(&self) -> &[usize] {
        self.encoder.info_set()
    }

    /// Codeword positions carrying user bits, in message order.
    pub fn user_positions(&self) -> &[usize] {
        &self.user_positions
    }

    pub fn n(&self) -> usize {
        self.code.n
    }

    /// Number of user bits, `k - L`.
    pub fn k_user(&self) -> usize {
        self.user_positions.len()
    }

    /// Parity redundancy `n - k` plus stuck-at redundancy `L`.
    pub fn redundancy(&self) -> usize {
        self.code.n - self.code.k + self.label.len()
    }

    pub fn encode(&self, message: &[bool], stuck: &StuckPattern) -> Result<BitWord> {
        self.encode_trace(message, stuck).map(|t| t.codeword)
    }

    pub fn encode_trace(&self, message: &[bool], stuck: &StuckPattern) -> Result<EncodeTrace> {
        if message.len() != self.k_user() {
            return param(format!(
                "message has {} bits, codec carries {}",
                message.len(),
                self.k_user()
            ));
        }
        if stuck.len() > self.s {
            return Err(Error::Capacity {
                count: stuck.len(),
                max: self.s,
            });
        }
        if let Some(p) = stuck.max_position().filter(|&p| p >= self.n()) {
            return param(format!(
                "stuck position {p} out of range for length {}",
                self.n()
            ));
        }

        let mut user = message.iter();
        let intermediate_message: Vec<bool> = self
            .info_set()
            .iter()
            .map(|p| {
                if self.label.positions().binary_search(p).is_ok() {
                    false
                } else {
                    *user.next().expect("message length checked")
                }
            })
            .collect();
        let intermediate_codeword = self.encoder.encode(&intermediate_message)?;
        let required = StuckPattern::new(
            stuck
                .entries()
                .iter()
                .map(|&(p, d)| (p, d ^ intermediate_codeword.get(p)))
                .collect(),
        )?;
        let mask = synthesize_mask(self.s, self.code.m, &required)?;
        let codeword = &intermediate_codeword ^ &mask;
        Ok(EncodeTrace {
            intermediate_message,
            intermediate_codeword,
            mask,
            codeword,
        })
    }

    pub fn decode(&self, read: &BitWord) -> Result<Vec<bool>> {
        self.decode_trace(read).map(|t| t.message)
    }

    pub fn decode_trace(&self, read: &BitWord) -> Result<DecodeTrace> {
        let (codeword, ok) = rm_decode(read, &self.code)?;
        if !ok {
            return Err(Error::Uncorrectable);
        }
        let label_bits = self.label.extract(&codeword);
        let mask_index = self
            .label
            .lookup(&label_bits)
            .ok_or_else(|| Error::LabelMiss(label_bits.to_string()))?;
        let mask = self.mask_set.masks()[mask_index].clone();
        let intermediate_codeword = &codeword ^ &mask;
        let message = self
            .user_positions
            .iter()
            .map(|&p| intermediate_codeword.get(p))
            .collect();
        Ok(DecodeTrace {
            codeword,
            label_bits,
            mask_index,
            mask,
            intermediate_codeword,
            message,
        })
    }
}

fn check_orders(r: u32, m: u32, s: usize) -> Result<()> {
    if s == 0 {
        return param("multiplicity s must be at least 1");
    }
    if ceil_log2(s) > m {
        return param(format!("ceil(log2 s) exceeds m = {m}"));
    }
    if (s as u64 - 1) > r as u64 || r > m {
        return param(format!("need s-1 <= r <= m, got s={s} r={r} m={m}"));
    }
    Ok(())
}

/// Same as [`CodecConfig::new`].
pub fn new_codec(r: u32, m: u32, s: usize, label: Option<&[usize]>) -> Result<CodecConfig> {
    CodecConfig::new(r, m, s, label)
}
