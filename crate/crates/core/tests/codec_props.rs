use proptest::prelude::*;

use rm_stuck::{build_mask_set, covers, synthesize_mask, BitWord, CodecConfig, StuckPattern};

fn stuck_pattern(n: usize, max: usize) -> impl Strategy<Value = StuckPattern> {
    proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 0..=max)
        .prop_flat_map(|pos| {
            let k = pos.len();
            (Just(pos), proptest::collection::vec(any::<bool>(), k))
        })
        .prop_map(|(pos, vals)| StuckPattern::new(pos.into_iter().zip(vals).collect()).unwrap())
}

proptest! {
    #[test]
    fn synthesized_masks_are_members(pattern in stuck_pattern(32, 4)) {
        let set = build_mask_set(4, 5).unwrap();
        let mask = synthesize_mask(4, 5, &pattern).unwrap();
        prop_assert!(covers(&mask, &pattern));
        prop_assert!(set.is_member(&mask).unwrap());
    }

    #[test]
    fn codec_round_trip_with_errors(
        message in proptest::collection::vec(any::<bool>(), 64),
        pattern in stuck_pattern(64, 3),
        flips in proptest::sample::subsequence((0..64usize).collect::<Vec<_>>(), 0..=7),
    ) {
        let cfg = CodecConfig::new(2, 6, 3, None).unwrap();
        let message = &message[..cfg.k_user()];
        let stored = cfg.encode(message, &pattern).unwrap();
        prop_assert!(covers(&stored, &pattern));
        prop_assert!(cfg.code().is_codeword(&stored).unwrap());
        let mut read = stored;
        for p in flips {
            read.flip(p);
        }
        prop_assert_eq!(cfg.decode(&read).unwrap(), message);
    }

    #[test]
    fn hex_round_trip(bits in proptest::collection::vec(any::<bool>(), 1..200)) {
        let w = BitWord::from_bits(bits);
        prop_assert_eq!(BitWord::from_hex(&w.to_hex(), w.len()).unwrap(), w);
    }
}

#[test]
fn s2_codec_exhaustive_small() {
    // RM(1,4) with M(2,4): every message, every stuck pair and value
    let cfg = CodecConfig::new(1, 4, 2, None).unwrap();
    let k = cfg.k_user();
    for msg in 0u32..1 << k {
        let message: Vec<bool> = (0..k).map(|i| msg >> i & 1 == 1).collect();
        for a in 0..16 {
            for b in a + 1..16 {
                for vals in 0..4u8 {
                    let pattern =
                        StuckPattern::new(vec![(a, vals & 1 == 1), (b, vals & 2 == 2)]).unwrap();
                    let c = cfg.encode(&message, &pattern).unwrap();
                    assert!(covers(&c, &pattern));
                    assert_eq!(cfg.decode(&c).unwrap(), message);
                }
            }
        }
    }
}

const LABEL_M3_6: [usize; 9] = [0, 3, 14, 20, 25, 43, 50, 60, 63];
const LABEL_M4_9: [usize; 31] = [
    0, 40, 49, 63, 86, 88, 99, 106, 135, 154, 166, 172, 205, 208, 233, 241, 246, 267, 284, 294,
    306, 320, 345, 357, 383, 405, 425, 439, 451, 462, 508,
];

#[test]
fn published_label_rates() {
    // stuck-at only: the full space RM(m,m) leaves n - L user bits
    let cfg = CodecConfig::new(6, 6, 3, Some(&LABEL_M3_6)).unwrap();
    assert_eq!((cfg.n(), cfg.k_user()), (64, 55));
    let cfg = CodecConfig::new(9, 9, 4, Some(&LABEL_M4_9)).unwrap();
    assert_eq!((cfg.n(), cfg.k_user()), (512, 481));

    // with random-error protection the label comes out of k
    let cfg = CodecConfig::new(2, 6, 3, Some(&LABEL_M3_6)).unwrap();
    assert_eq!((cfg.k_user(), cfg.redundancy()), (13, 51));
    let cfg = CodecConfig::new(3, 9, 4, Some(&LABEL_M4_9)).unwrap();
    assert_eq!(cfg.k_user(), 130 - 31);
}
