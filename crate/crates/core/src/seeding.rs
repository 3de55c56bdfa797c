//! Deterministic seed derivation.
//!
//! Every random stream in the simulator is derived from the master seed with
//! the splitmix64 mixer, so a run is reproducible bit-for-bit across
//! platforms and worker counts. Realization `r` gets `mix(master, r)`; each
//! consumer within a realization derives its own stream with a fixed label.

/// splitmix64 increment (golden-ratio constant).
pub const SPLITMIX64_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stream labels used inside one realization.
pub mod stream {
    pub const DROP: u64 = 1;
    pub const GAIN: u64 = 2;
    pub const BAC: u64 = 3;
    pub const DAC: u64 = 4;
    pub const OAC: u64 = 5;
}

/// One splitmix64 output step.
#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a child seed from `(seed, n)`.
#[inline]
pub fn mix(seed: u64, n: u64) -> u64 {
    splitmix64(seed.wrapping_add(n.wrapping_add(1).wrapping_mul(SPLITMIX64_GAMMA)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mix_is_deterministic_and_label_sensitive() {
        assert_eq!(mix(1, 0), mix(1, 0));
        assert_ne!(mix(1, 0), mix(1, 1));
        assert_ne!(mix(1, 0), mix(2, 0));
        // Nested derivation does not collide across realizations.
        let a = mix(mix(7, 0), stream::DROP);
        let b = mix(mix(7, 1), stream::DROP);
        assert_ne!(a, b);
    }
}
