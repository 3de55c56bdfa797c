//! Realized channel gains.
//!
//! Every directed link follows `G = c * d^-alpha * 10^(s/10) * |h|^2` with a
//! per-link-kind propagation constant and exponent, an i.i.d. log-normal
//! shadowing draw `s ~ N(0, sigma)` per directed link, and unit-mean
//! exponential fast fading `|h|^2` that is off by default (`E[|h|^2] = 1`).
//! [`build_gain_table`] assembles the full tensor over all transmitters
//! (CUEs, D2D transmitters) and receivers (BSs, D2D receivers) of one
//! realization.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Normal};

use crate::geometry::{NetworkRealization, Point};
use crate::units::lin_to_db;
use crate::{Error, Result};

/// Propagation parameters for the two link classes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Linear path-loss coefficient user->BS.
    pub c0: f64,
    /// Linear path-loss coefficient user->user.
    pub cd: f64,
    /// Path-loss exponent user->BS.
    pub alpha0: f64,
    /// Path-loss exponent user->user.
    pub alpha_d: f64,
    pub shadow_sigma_db: f64,
    pub fading_enabled: bool,
}

impl ChannelParams {
    pub fn coeff(&self, kind: LinkKind) -> (f64, f64) {
        match kind {
            LinkKind::UserToBs => (self.c0, self.alpha0),
            LinkKind::UserToUser => (self.cd, self.alpha_d),
        }
    }
}

/// Receiver side of a link: a BS or another device.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkKind {
    UserToBs,
    UserToUser,
}

/// One directed link gain: path loss times the shadowing offset. Fast fading
/// is folded in by the caller when enabled (`|h|^2 = 1` here).
pub fn link_gain(
    tx_pos: &Point,
    rx_pos: &Point,
    kind: LinkKind,
    params: &ChannelParams,
    shadow_db: f64,
) -> Result<f64> {
    let d = tx_pos.distance(rx_pos);
    if d <= 0.0 {
        return Err(Error::ZeroDistance);
    }
    let (c, alpha) = params.coeff(kind);
    Ok(c * d.powf(-alpha) * 10f64.powf(shadow_db / 10.0))
}

/// Channel gain tensor for one realization.
///
/// `gain(a, b, i, j)` is the gain from transmitter `b` in cell `a` to
/// receiver `j` in cell `i`, where index 0 is the CUE (as transmitter) or
/// the BS (as receiver) and indices >= 1 are D2D pairs (transmitter of pair
/// `b` / receiver of pair `j`).
#[derive(Debug, Clone)]
pub struct GainTable {
    n_cells: usize,
    /// Entities per cell on each side: 1 + pairs_per_cell.
    n_entities: usize,
    data: Vec<f64>,
}

impl GainTable {
    #[inline]
    fn idx(&self, a: usize, b: usize, i: usize, j: usize) -> usize {
        ((a * self.n_entities + b) * self.n_cells + i) * self.n_entities + j
    }

    /// Raw tensor lookup in the 0-convention indexing.
    #[inline]
    pub fn gain(&self, a: usize, b: usize, i: usize, j: usize) -> f64 {
        self.data[self.idx(a, b, i, j)]
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    /// D2D pairs per cell covered by the table.
    pub fn pairs_per_cell(&self) -> usize {
        self.n_entities - 1
    }

    /// CUE of cell `a` -> BS of cell `i`.
    #[inline]
    pub fn cue_to_bs(&self, a: usize, i: usize) -> f64 {
        self.gain(a, 0, i, 0)
    }

    /// Transmitter of pair `k` in cell `a` -> BS of cell `i`.
    #[inline]
    pub fn d2d_to_bs(&self, a: usize, k: usize, i: usize) -> f64 {
        self.gain(a, k + 1, i, 0)
    }

    /// CUE of cell `a` -> receiver of pair `j` in cell `i`.
    #[inline]
    pub fn cue_to_rx(&self, a: usize, i: usize, j: usize) -> f64 {
        self.gain(a, 0, i, j + 1)
    }

    /// Transmitter of pair `b` in cell `a` -> receiver of pair `j` in cell `i`.
    #[inline]
    pub fn tx_to_rx(&self, a: usize, b: usize, i: usize, j: usize) -> f64 {
        self.gain(a, b + 1, i, j + 1)
    }

    /// Intra-pair gain of pair `k` in cell `x`.
    #[inline]
    pub fn intra_pair(&self, x: usize, k: usize) -> f64 {
        self.tx_to_rx(x, k, x, k)
    }

    /// Flat debugging dump: `a,b,i,j,gain_db` rows.
    pub fn dump_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "a,b,i,j,gain_db")?;
        for a in 0..self.n_cells {
            for b in 0..self.n_entities {
                for i in 0..self.n_cells {
                    for j in 0..self.n_entities {
                        writeln!(w, "{a},{b},{i},{j},{}", lin_to_db(self.gain(a, b, i, j)))?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Populate the gain tensor for a realization. Deterministic in `seed`; one
/// independent shadowing draw per directed link.
pub fn build_gain_table(
    real: &NetworkRealization,
    params: &ChannelParams,
    seed: u64,
) -> Result<GainTable> {
    let n_cells = real.n_cells();
    let n_entities = 1 + real.d2d_pairs.iter().map(Vec::len).max().unwrap_or(0);
    for pairs in &real.d2d_pairs {
        debug_assert_eq!(pairs.len() + 1, n_entities, "uneven pair counts per cell");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shadow = Normal::new(0.0, params.shadow_sigma_db)
        .map_err(|e| Error::InvalidConfig(format!("shadowing sigma: {e}")))?;
    let fading = Exp::new(1.0).expect("unit-rate exponential");

    let mut data = vec![0.0; n_cells * n_entities * n_cells * n_entities];
    let mut pos = 0usize;
    for a in 0..n_cells {
        for b in 0..n_entities {
            let tx = if b == 0 {
                real.cues[a]
            } else {
                real.d2d_pairs[a][b - 1].tx
            };
            for i in 0..n_cells {
                for j in 0..n_entities {
                    let (rx, kind) = if j == 0 {
                        (real.layout.cell_centers[i], LinkKind::UserToBs)
                    } else {
                        (real.d2d_pairs[i][j - 1].rx, LinkKind::UserToUser)
                    };
                    let s = shadow.sample(&mut rng);
                    let mut g = link_gain(&tx, &rx, kind, params, s)?;
                    if params.fading_enabled {
                        g *= fading.sample(&mut rng);
                    }
                    data[pos] = g;
                    pos += 1;
                }
            }
        }
    }

    Ok(GainTable {
        n_cells,
        n_entities,
        data,
    })
}
