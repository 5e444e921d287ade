//! Joint stuck-at and random error correction for binary memories with
//! Reed-Muller codes.
//!
//! * [`mask_set`]: the recursive masking sets `M(s, m)` and search-free mask
//!   synthesis.
//! * [`reed_muller`]: `RM(r, m)` generators, ANF membership, systematic
//!   encoding and majority-logic decoding.
//! * [`labeling`]: label positions that identify masks.
//! * [`codec`]: the end-to-end encoder and decoder.
//! * [`harness`]: exhaustive and randomized verification, table
//!   reproduction and channel simulation.

pub mod bitword;
pub mod codec;
pub mod error;
pub mod harness;
pub mod labeling;
pub mod mask_set;
pub mod pbm;
pub mod reed_muller;

pub use bitword::BitWord;
pub use codec::{new_codec, CodecConfig, DecodeTrace, EncodeTrace};
pub use error::{Error, Result};
pub use labeling::{
    count_labels_s2, greedy_label, label_lower_bound, label_lower_bound_form, label_s2,
    label_s2_for, label_upper_bound, label_upper_bound_from_count, validate_label, Label,
    LabelFile, LowerBoundForm,
};
pub use mask_set::{
    build_mask_set, count_lower_bound, count_upper_bound, covers, mask_count, synthesize_mask,
    MaskSet, MaskSetBuilder, StuckPattern,
};
pub use reed_muller::{
    anf_degree, choose_information_set, generator_matrix, is_codeword, rm_params,
    systematic_encode, Gf2Matrix, RmCode, SystematicEncoder,
};
