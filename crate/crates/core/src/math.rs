//! dB helpers on top of `libm`.

#[inline]
pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

#[inline]
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * libm::log10(linear)
}

/// Thermal noise floor in dBm/Hz at 290 K.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;
