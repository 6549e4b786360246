//! Whole-pipeline properties: exact roundtrips, the byte-level XOR oracle
//! the DNA stages must collapse to, and structural invariants of the key
//! schedule and envelope.

use chaodna_core::chaos::{generate, quantize_bytes, ChaosParams};
use chaodna_core::cipher::{decrypt, encrypt, CipherConfig, CipherEnvelope, CipherMode};
use chaodna_core::dna::{decode_quad, dna_xor, encode_byte, Rule};
use chaodna_core::key_schedule::{derive_initial, fold_window, Key128, SeedSpec, StreamRole};
use chaodna_core::GrayImage;
use proptest::prelude::*;

fn image_strategy() -> impl Strategy<Value = GrayImage> {
    (8u32..=64, 8u32..=64).prop_flat_map(|(w, h)| {
        proptest::collection::vec(any::<u8>(), (w * h) as usize)
            .prop_map(move |pixels| GrayImage::new(w, h, pixels).unwrap())
    })
}

fn key_strategy() -> impl Strategy<Value = Key128> {
    any::<u128>().prop_map(Key128::from_bits)
}

fn stream_bytes(key: Key128, role: StreamRole, cfg: &CipherConfig, count: usize) -> Vec<u8> {
    let params = ChaosParams::chaotic(cfg.u, derive_initial(key, role), cfg.burn_in).unwrap();
    quantize_bytes(&generate(&params, count))
}

proptest! {
    #[test]
    fn chaos_dna_roundtrip_and_xor_oracle(plain in image_strategy(), key in key_strategy()) {
        let cfg = CipherConfig::default();
        let env = encrypt(&plain, key, &cfg).unwrap();

        // the DNA pipeline must collapse to plain ^ S ^ K byte-wise
        let s = stream_bytes(key, StreamRole::MainStream, &cfg, plain.pixel_count());
        let k = stream_bytes(key, StreamRole::KeyImageStream, &cfg, plain.pixel_count());
        let expected: Vec<u8> = plain
            .pixels()
            .iter()
            .zip(&s)
            .zip(&k)
            .map(|((&p, &a), &b)| p ^ a ^ b)
            .collect();
        prop_assert_eq!(env.payload(), expected.as_slice());

        let back = decrypt(&env, key, &cfg).unwrap();
        prop_assert_eq!(back, plain);
    }

    #[test]
    fn chaos_only_roundtrip_and_mode_separation(plain in image_strategy(), key in key_strategy()) {
        let cfg = CipherConfig { mode: CipherMode::ChaosOnly, ..CipherConfig::default() };
        let env = encrypt(&plain, key, &cfg).unwrap();

        let s = stream_bytes(key, StreamRole::MainStream, &cfg, plain.pixel_count());
        let expected: Vec<u8> = plain.pixels().iter().zip(&s).map(|(&p, &a)| p ^ a).collect();
        prop_assert_eq!(env.payload(), expected.as_slice());

        let back = decrypt(&env, key, &cfg).unwrap();
        prop_assert_eq!(back, plain);
    }

    #[test]
    fn rule_window_bits_never_touch_the_payload(
        plain in image_strategy(),
        key in key_strategy(),
        bit in 0u32..32,
    ) {
        // the per-pixel rule stream cancels out of the DNA XOR, so flipping
        // key bits in the rule window must leave the ciphertext unchanged
        let cfg = CipherConfig::default();
        let flipped = Key128::from_bits(
            key.bits() ^ (1u128 << (127 - (StreamRole::RuleStream.bit_offset() as u32 + bit))),
        );
        let a = encrypt(&plain, key, &cfg).unwrap();
        let b = encrypt(&plain, flipped, &cfg).unwrap();
        prop_assert_eq!(a.payload(), b.payload());
        // and decryption under the flipped key still inverts exactly
        prop_assert_eq!(decrypt(&b, flipped, &cfg).unwrap(), plain);
    }

    #[test]
    fn fold_is_linear_over_xor(k1 in key_strategy(), k2 in key_strategy(), offset in 0u8..=96) {
        let spec = SeedSpec { bit_offset: offset, role: StreamRole::MainStream };
        let folded_xor = fold_window(k1 ^ k2, spec).unwrap();
        prop_assert_eq!(folded_xor, fold_window(k1, spec).unwrap() ^ fold_window(k2, spec).unwrap());
    }

    #[test]
    fn window_bit_flips_change_the_fold(key in key_strategy(), offset in 0u8..=96, bit in 0u32..32) {
        let spec = SeedSpec { bit_offset: offset, role: StreamRole::MainStream };
        let flipped = Key128::from_bits(key.bits() ^ (1u128 << (127 - (offset as u32 + bit))));
        prop_assert_ne!(fold_window(key, spec).unwrap(), fold_window(flipped, spec).unwrap());
    }

    #[test]
    fn envelope_serialization_roundtrips(
        mode_dna in any::<bool>(),
        w in 1u32..=32,
        h in 1u32..=32,
        seed in any::<u8>(),
    ) {
        let mode = if mode_dna { CipherMode::ChaosDna } else { CipherMode::ChaosOnly };
        let payload: Vec<u8> = (0..(w * h) as usize).map(|i| (i as u8).wrapping_mul(seed)).collect();
        let env = CipherEnvelope::new(mode, w, h, payload).unwrap();
        prop_assert_eq!(CipherEnvelope::from_bytes(&env.to_bytes()).unwrap(), env);
    }
}

#[test]
fn dna_xor_linearity_exhaustive() {
    // decode(enc(a) xor enc(b)) == a ^ b for every rule and all byte pairs
    for rule in Rule::ALL {
        for a in 0u16..=255 {
            let qa = encode_byte(a as u8, rule);
            for b in 0u16..=255 {
                let qb = encode_byte(b as u8, rule);
                let mixed = [
                    dna_xor(qa[0], qb[0], rule),
                    dna_xor(qa[1], qb[1], rule),
                    dna_xor(qa[2], qb[2], rule),
                    dna_xor(qa[3], qb[3], rule),
                ];
                assert_eq!(decode_quad(mixed, rule), (a ^ b) as u8);
            }
        }
    }
}

#[test]
fn dna_xor_linearity_through_planes() {
    // the same law through the plane API, all byte pairs on 1x1 planes
    use chaodna_core::dna::{decode_plane, encode_plane, xor_planes};
    let rule_ids = [1u8, 4, 8];
    for &rule in &rule_ids {
        for a in (0u16..=255).step_by(17) {
            for b in 0u16..=255 {
                let pa =
                    encode_plane(&GrayImage::new(1, 1, vec![a as u8]).unwrap(), &[rule]).unwrap();
                let pb =
                    encode_plane(&GrayImage::new(1, 1, vec![b as u8]).unwrap(), &[rule]).unwrap();
                let mixed = xor_planes(&pa, &pb).unwrap();
                assert_eq!(decode_plane(&mixed).pixels(), &[(a ^ b) as u8]);
            }
        }
    }
}

#[test]
fn decrypt_rejects_wrong_stream_parameters() {
    let plain = GrayImage::new(8, 8, (0..64).map(|i| i as u8 * 3).collect()).unwrap();
    let key = Key128::parse("c3b6a1d2e5f40789316f2a5b4c8d9e0f").unwrap();
    let cfg = CipherConfig::default();
    let env = encrypt(&plain, key, &cfg).unwrap();

    let other_cfg = CipherConfig {
        burn_in: 999,
        ..CipherConfig::default()
    };
    let wrong = decrypt(&env, key, &other_cfg).unwrap();
    assert_ne!(wrong, plain);
}
