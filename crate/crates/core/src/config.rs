//! Scenario configuration.
//!
//! All physical, protocol and method parameters in one flat struct. The
//! defaults reproduce the standard simulation setup (7 cells of 400 m, one
//! CUE per cell, 10 available pairs per cell, 23 dBm power caps, -174 dBm/Hz
//! noise over a 180 kHz resource block, path-loss coefficients -30.55 /
//! -28.03 dB with exponents 3.67 / 4, 5000 realizations).
//!
//! Config files are flat `key = value` text; `#` starts a comment. Every key
//! is optional and unknown keys are rejected.

use serde::{Deserialize, Serialize};

use crate::channel::ChannelParams;
use crate::units::{dbm_to_mw, noise_power_mw};
use crate::{Error, Result};

/// Admission/power-control method selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bac,
    Dac,
    Oac,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Bac => "bac",
            Method::Dac => "dac",
            Method::Oac => "oac",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "bac" => Ok(Method::Bac),
            "dac" => Ok(Method::Dac),
            "oac" => Ok(Method::Oac),
            other => Err(Error::InvalidConfig(format!("unknown method `{other}`"))),
        }
    }
}

/// Full scenario description: physics, layout, method targets, run control.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    // Layout and population.
    pub n_cells: usize,
    pub cell_radius_m: f64,
    /// Available D2D pairs per cell (N-hat).
    pub pairs_per_cell: usize,
    /// Min CUE-BS distance, m.
    pub d_min_m: f64,
    /// D2D pair separation bounds, m.
    pub d2d_min_m: f64,
    pub d2d_max_m: f64,

    // Radio.
    pub noise_psd_dbm_hz: f64,
    pub bandwidth_hz: f64,
    /// Carrier frequency, GHz. Carried as metadata; path loss is fully
    /// specified by the coefficients below.
    pub carrier_ghz: f64,
    pub p_d_max_dbm: f64,
    pub p_c_max_dbm: f64,
    /// Path-loss coefficient user->BS, dB.
    pub c0_db: f64,
    /// Path-loss coefficient user->user, dB.
    pub cd_db: f64,
    /// Path-loss exponent user->BS.
    pub alpha0: f64,
    /// Path-loss exponent user->user.
    pub alpha_d: f64,
    pub shadow_sigma_db: f64,
    /// Unit-mean exponential fast fading on realized links.
    pub fading_enabled: bool,

    // Method targets.
    /// Tolerable CUE SINR loss, dB (> 0).
    pub delta_db: f64,
    /// D2D target SINR, dB.
    pub gamma_d_db: f64,
    /// OFPC path-loss compensation factor, in [0, 1].
    pub alpha_p: f64,
    /// OFPC open-loop target SNR, dB.
    pub gamma_cue_th_db: f64,
    /// OFPC long-term gain includes shadowing (open-loop semantics keep fast
    /// fading out either way).
    pub ofpc_include_shadowing: bool,

    // Statistical-model knobs.
    /// Lower distance bound for the user->user interference gain classes
    /// (D2D interferer and CUE->D2D), m.
    pub user_user_floor_m: f64,
    /// Normalize the triangular distance pdf in closed-form gain
    /// expectations (off = literal model).
    pub normalized_pdf: bool,

    // Method behavior.
    /// BAC: clamp channel-inversion power at the cap instead of dropping the
    /// pair.
    pub bac_clamp_mode: bool,
    /// BAC: fixed received power override, dBm. When unset the design-point
    /// value is used.
    pub bac_p_r_d_dbm: Option<f64>,
    /// DAC fixed-point iteration bound.
    pub dac_max_iters: usize,
    /// OAC guard: refuse instances with more total pairs than this.
    pub oac_max_pairs: usize,
    /// OAC runs only on the first this-many realizations.
    pub oac_realizations: usize,
    /// OAC subset-search node budget (feasibility-oracle invocations).
    pub oac_node_budget: usize,

    // Run control.
    pub realizations: usize,
    pub master_seed: u64,
    pub methods: Vec<Method>,
    /// Parallel worker override; `None` uses the rayon default. The
    /// D2DSIM_WORKERS environment variable takes precedence at run time.
    pub workers: Option<usize>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            n_cells: 7,
            cell_radius_m: 400.0,
            pairs_per_cell: 10,
            d_min_m: 10.0,
            d2d_min_m: 10.0,
            d2d_max_m: 40.0,
            noise_psd_dbm_hz: -174.0,
            bandwidth_hz: 180e3,
            carrier_ghz: 2.0,
            p_d_max_dbm: 23.0,
            p_c_max_dbm: 23.0,
            c0_db: -30.55,
            cd_db: -28.03,
            alpha0: 3.67,
            alpha_d: 4.0,
            shadow_sigma_db: 8.0,
            fading_enabled: false,
            delta_db: 2.0,
            gamma_d_db: 16.0,
            alpha_p: 0.8,
            gamma_cue_th_db: 10.0,
            ofpc_include_shadowing: true,
            user_user_floor_m: 10.0,
            normalized_pdf: false,
            bac_clamp_mode: false,
            bac_p_r_d_dbm: None,
            dac_max_iters: 10,
            oac_max_pairs: 16,
            oac_realizations: 100,
            oac_node_budget: 2_000_000,
            realizations: 5000,
            master_seed: 1,
            methods: vec![Method::Bac, Method::Dac],
            workers: None,
        }
    }
}

impl ScenarioConfig {
    /// Noise power at a BS receiver over one resource block, mW.
    pub fn noise_bs_mw(&self) -> f64 {
        noise_power_mw(self.noise_psd_dbm_hz, self.bandwidth_hz)
    }

    /// Noise power at a D2D receiver, mW. Same density and bandwidth as the
    /// BS receiver.
    pub fn noise_d2d_mw(&self) -> f64 {
        self.noise_bs_mw()
    }

    pub fn p_d_max_mw(&self) -> f64 {
        dbm_to_mw(self.p_d_max_dbm)
    }

    pub fn p_c_max_mw(&self) -> f64 {
        dbm_to_mw(self.p_c_max_dbm)
    }

    pub fn channel_params(&self) -> ChannelParams {
        ChannelParams {
            c0: dbm_to_mw(self.c0_db),
            cd: dbm_to_mw(self.cd_db),
            alpha0: self.alpha0,
            alpha_d: self.alpha_d,
            shadow_sigma_db: self.shadow_sigma_db,
            fading_enabled: self.fading_enabled,
        }
    }

    pub fn has_method(&self, m: Method) -> bool {
        self.methods.contains(&m)
    }

    pub fn total_pairs(&self) -> usize {
        self.n_cells * self.pairs_per_cell
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_cells != 1 && self.n_cells != 7 {
            return Err(Error::UnsupportedCellCount(self.n_cells));
        }
        if self.cell_radius_m <= 0.0 || self.d_min_m <= 0.0 || self.d_min_m >= self.cell_radius_m
        {
            return Err(Error::InvalidConfig(format!(
                "need 0 < d_min < R, got d_min={} R={}",
                self.d_min_m, self.cell_radius_m
            )));
        }
        if self.d2d_min_m <= 0.0 || self.d2d_min_m > self.d2d_max_m {
            return Err(Error::InvalidConfig(format!(
                "need 0 < D_min <= D_max, got D_min={} D_max={}",
                self.d2d_min_m, self.d2d_max_m
            )));
        }
        if self.alpha0 <= 2.0 || self.alpha_d <= 2.0 {
            return Err(Error::InvalidConfig(format!(
                "path-loss exponents must exceed 2, got alpha0={} alpha_d={}",
                self.alpha0, self.alpha_d
            )));
        }
        if self.delta_db <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "delta_db must be positive (delta > 1 in linear units), got {}",
                self.delta_db
            )));
        }
        if !self.gamma_d_db.is_finite() {
            return Err(Error::InvalidConfig("gamma_d_db must be finite".into()));
        }
        if !(0.0..=1.0).contains(&self.alpha_p) {
            return Err(Error::InvalidConfig(format!(
                "alpha_p must lie in [0, 1], got {}",
                self.alpha_p
            )));
        }
        if self.shadow_sigma_db < 0.0 {
            return Err(Error::InvalidConfig("shadow_sigma_db must be >= 0".into()));
        }
        if self.has_method(Method::Oac) && self.total_pairs() > self.oac_max_pairs {
            return Err(Error::OacGuard {
                pairs: self.total_pairs(),
                guard: self.oac_max_pairs,
            });
        }
        Ok(())
    }

    /// Parse a flat `key = value` config document. Unknown keys are errors.
    pub fn from_kv_text(text: &str) -> Result<Self> {
        let mut cfg = ScenarioConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("line {}: expected key = value", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    /// Apply one `key = value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn f64v(key: &str, value: &str) -> Result<f64> {
            value.parse().map_err(|_| {
                Error::InvalidConfig(format!("key `{key}`: expected a number, got `{value}`"))
            })
        }
        fn usizev(key: &str, value: &str) -> Result<usize> {
            value.parse().map_err(|_| {
                Error::InvalidConfig(format!("key `{key}`: expected an integer, got `{value}`"))
            })
        }
        fn boolv(key: &str, value: &str) -> Result<bool> {
            match value {
                "true" | "1" | "yes" | "on" => Ok(true),
                "false" | "0" | "no" | "off" => Ok(false),
                _ => Err(Error::InvalidConfig(format!(
                    "key `{key}`: expected a boolean, got `{value}`"
                ))),
            }
        }

        match key {
            "n_cells" => self.n_cells = usizev(key, value)?,
            "cell_radius_m" => self.cell_radius_m = f64v(key, value)?,
            "pairs_per_cell" => self.pairs_per_cell = usizev(key, value)?,
            "d_min_m" => self.d_min_m = f64v(key, value)?,
            "d2d_min_m" => self.d2d_min_m = f64v(key, value)?,
            "d2d_max_m" => self.d2d_max_m = f64v(key, value)?,
            "noise_psd_dbm_hz" => self.noise_psd_dbm_hz = f64v(key, value)?,
            "bandwidth_hz" => self.bandwidth_hz = f64v(key, value)?,
            "carrier_ghz" => self.carrier_ghz = f64v(key, value)?,
            "p_d_max_dbm" => self.p_d_max_dbm = f64v(key, value)?,
            "p_c_max_dbm" => self.p_c_max_dbm = f64v(key, value)?,
            "c0_db" => self.c0_db = f64v(key, value)?,
            "cd_db" => self.cd_db = f64v(key, value)?,
            "alpha0" => self.alpha0 = f64v(key, value)?,
            "alpha_d" => self.alpha_d = f64v(key, value)?,
            "shadow_sigma_db" => self.shadow_sigma_db = f64v(key, value)?,
            "fading_enabled" => self.fading_enabled = boolv(key, value)?,
            "delta_db" => self.delta_db = f64v(key, value)?,
            "gamma_d_db" => self.gamma_d_db = f64v(key, value)?,
            "alpha_p" => self.alpha_p = f64v(key, value)?,
            "gamma_cue_th_db" => self.gamma_cue_th_db = f64v(key, value)?,
            "ofpc_include_shadowing" => self.ofpc_include_shadowing = boolv(key, value)?,
            "user_user_floor_m" => self.user_user_floor_m = f64v(key, value)?,
            "normalized_pdf" => self.normalized_pdf = boolv(key, value)?,
            "bac_clamp_mode" => self.bac_clamp_mode = boolv(key, value)?,
            "bac_p_r_d_dbm" => {
                self.bac_p_r_d_dbm = if value == "none" {
                    None
                } else {
                    Some(f64v(key, value)?)
                }
            }
            "dac_max_iters" => self.dac_max_iters = usizev(key, value)?,
            "oac_max_pairs" => self.oac_max_pairs = usizev(key, value)?,
            "oac_realizations" => self.oac_realizations = usizev(key, value)?,
            "oac_node_budget" => self.oac_node_budget = usizev(key, value)?,
            "realizations" => self.realizations = usizev(key, value)?,
            "master_seed" => {
                self.master_seed = value.parse().map_err(|_| {
                    Error::InvalidConfig(format!("key `{key}`: expected u64, got `{value}`"))
                })?
            }
            "methods" => {
                let mut methods = Vec::new();
                for part in value.split(',').filter(|p| !p.trim().is_empty()) {
                    methods.push(part.parse()?);
                }
                self.methods = methods;
            }
            "workers" => {
                self.workers = if value == "none" {
                    None
                } else {
                    Some(usizev(key, value)?)
                }
            }
            other => return Err(Error::UnknownConfigKey(other.to_string())),
        }
        Ok(())
    }
}
