//! Decibel and linear-unit conversions.
//!
//! Internal convention: powers are linear milliwatts, channel gains are
//! linear power ratios, distances are meters. dB / dBm appear only at
//! configuration and reporting boundaries.

/// dB ratio to linear ratio.
#[inline]
pub fn db_to_lin(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Linear ratio to dB.
#[inline]
pub fn lin_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}

/// dBm to milliwatts.
#[inline]
pub fn dbm_to_mw(dbm: f64) -> f64 {
    db_to_lin(dbm)
}

/// Milliwatts to dBm.
#[inline]
pub fn mw_to_dbm(mw: f64) -> f64 {
    lin_to_db(mw)
}

/// Thermal noise power over a bandwidth, from a noise spectral density.
pub fn noise_power_mw(noise_psd_dbm_hz: f64, bandwidth_hz: f64) -> f64 {
    dbm_to_mw(noise_psd_dbm_hz + 10.0 * bandwidth_hz.log10())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_round_trip() {
        for &db in &[-121.45, -30.55, 0.0, 3.0, 23.0] {
            assert!((lin_to_db(db_to_lin(db)) - db).abs() < 1e-12);
        }
    }

    #[test]
    fn ten_db_is_a_factor_of_ten() {
        assert!((db_to_lin(10.0) - 10.0).abs() < 1e-12);
        assert!((dbm_to_mw(0.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noise_over_one_rb() {
        // -174 dBm/Hz over 180 kHz is about -121.45 dBm.
        let n = noise_power_mw(-174.0, 180e3);
        assert!((mw_to_dbm(n) - (-121.4473)).abs() < 1e-3);
    }
}
