//! Multi-cell layout and random user drops.
//!
//! The layout is a set of circular cells with the BS at each center: one
//! center cell plus, for the 7-cell case, six neighbors at distance `2R` and
//! angles `k * 60°` (adjacent circular cells touching). Per realization each
//! cell gets one CUE, area-uniform over the annulus `[d_min, R]` around its
//! BS, and `n_pairs` D2D pairs: the transmitter area-uniform over the cell
//! disc, the receiver at a distance drawn uniformly from `[D_min, D_max]` at
//! a uniform angle. The receiver may land outside the cell disc; pairs are
//! anchored by the transmitter's cell.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::{Error, Result};

/// A point in the simulation plane, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Cell centers (BS positions) and the common cell radius.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellLayout {
    pub cell_centers: Vec<Point>,
    pub cell_radius_m: f64,
    /// Cell from which metrics are collected.
    pub center_cell_index: usize,
}

impl CellLayout {
    pub fn n_cells(&self) -> usize {
        self.cell_centers.len()
    }

    /// Cell disc area, m².
    pub fn cell_area_m2(&self) -> f64 {
        std::f64::consts::PI * self.cell_radius_m * self.cell_radius_m
    }
}

/// One D2D pair: transmitter and receiver positions.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct D2dPair {
    pub tx: Point,
    pub rx: Point,
}

/// One random drop of users on a layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetworkRealization {
    pub layout: CellLayout,
    /// One CUE position per cell.
    pub cues: Vec<Point>,
    /// D2D pairs per cell.
    pub d2d_pairs: Vec<Vec<D2dPair>>,
    pub realization_seed: u64,
}

impl NetworkRealization {
    pub fn n_cells(&self) -> usize {
        self.layout.n_cells()
    }

    pub fn pairs_in(&self, cell: usize) -> usize {
        self.d2d_pairs[cell].len()
    }

    pub fn total_pairs(&self) -> usize {
        self.d2d_pairs.iter().map(Vec::len).sum()
    }

    /// Order-insensitive FNV-1a hash over all positions; used to assert that
    /// methods compared in one realization saw the identical drop.
    pub fn drop_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |v: f64| {
            for b in v.to_bits().to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100_0000_01b3);
            }
        };
        for c in &self.cues {
            eat(c.x);
            eat(c.y);
        }
        for pairs in &self.d2d_pairs {
            for p in pairs {
                eat(p.tx.x);
                eat(p.tx.y);
                eat(p.rx.x);
                eat(p.rx.y);
            }
        }
        h
    }
}

/// Build the cell layout. Supports the single-cell and 7-cell arrangements.
pub fn build_layout(n_cells: usize, radius_m: f64) -> Result<CellLayout> {
    if radius_m <= 0.0 {
        return Err(Error::InvalidDistanceBounds(format!(
            "cell radius must be positive, got {radius_m}"
        )));
    }
    let cell_centers = match n_cells {
        1 => vec![Point::new(0.0, 0.0)],
        7 => {
            let mut centers = vec![Point::new(0.0, 0.0)];
            for k in 0..6 {
                let angle = (k as f64) * std::f64::consts::PI / 3.0;
                centers.push(Point::new(
                    2.0 * radius_m * angle.cos(),
                    2.0 * radius_m * angle.sin(),
                ));
            }
            centers
        }
        other => return Err(Error::UnsupportedCellCount(other)),
    };
    Ok(CellLayout {
        cell_centers,
        cell_radius_m: radius_m,
        center_cell_index: 0,
    })
}

/// Area-uniform point in the annulus `[r_min, r_max]` around `center`.
fn annulus_point(rng: &mut impl Rng, center: &Point, r_min: f64, r_max: f64) -> Point {
    let u: f64 = rng.random_range(0.0..1.0);
    let r = (r_min * r_min + u * (r_max * r_max - r_min * r_min)).sqrt();
    let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    Point::new(center.x + r * theta.cos(), center.y + r * theta.sin())
}

/// Drop one CUE per cell and `pairs_per_cell` D2D pairs per cell.
///
/// Pure in `(layout, cfg, seed)`: the same inputs produce bit-identical
/// positions.
pub fn drop_users(
    layout: &CellLayout,
    cfg: &ScenarioConfig,
    seed: u64,
) -> Result<NetworkRealization> {
    let r_cell = layout.cell_radius_m;
    if !(cfg.d_min_m > 0.0 && cfg.d_min_m < r_cell) {
        return Err(Error::InvalidDistanceBounds(format!(
            "need 0 < d_min < R, got d_min={} R={}",
            cfg.d_min_m, r_cell
        )));
    }
    if !(cfg.d2d_min_m > 0.0 && cfg.d2d_min_m <= cfg.d2d_max_m) {
        return Err(Error::InvalidDistanceBounds(format!(
            "need 0 < D_min <= D_max, got D_min={} D_max={}",
            cfg.d2d_min_m, cfg.d2d_max_m
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cues = Vec::with_capacity(layout.n_cells());
    let mut d2d_pairs = Vec::with_capacity(layout.n_cells());

    for center in &layout.cell_centers {
        cues.push(annulus_point(&mut rng, center, cfg.d_min_m, r_cell));

        let mut pairs = Vec::with_capacity(cfg.pairs_per_cell);
        for _ in 0..cfg.pairs_per_cell {
            let tx = annulus_point(&mut rng, center, 0.0, r_cell);
            // Separation distance-uniform on [D_min, D_max], not area-uniform.
            let d = rng.random_range(cfg.d2d_min_m..=cfg.d2d_max_m);
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let rx = Point::new(tx.x + d * theta.cos(), tx.y + d * theta.sin());
            pairs.push(D2dPair { tx, rx });
        }
        d2d_pairs.push(pairs);
    }

    Ok(NetworkRealization {
        layout: layout.clone(),
        cues,
        d2d_pairs,
        realization_seed: seed,
    })
}
