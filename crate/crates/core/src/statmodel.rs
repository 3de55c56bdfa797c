//! Statistical interference and channel-gain model.
//!
//! With no CSI, a link gain is modeled as `G = c * d^-alpha` with the
//! distance `d` drawn from the triangular density `2x / d_max^2` on
//! `[d_min, d_max]`. The closed-form expectation is
//!
//! ```text
//! E[G] = 2c (d_min^-(alpha-2) - d_max^-(alpha-2)) / (d_max^2 (alpha - 2))
//! ```
//!
//! valid for `alpha > 2`. Interferers are assumed confined to a disc whose
//! radius is the distance at which a max-power transmitter's expected
//! received power drops to the noise floor:
//! `d_w = (P_max c / N)^(1/alpha)`.
//!
//! Model note: the triangular density integrates to `1 - d_min^2/d_max^2`,
//! not 1, whenever `d_min > 0`. The closed forms here keep the literal model
//! (the small deficit is part of it); `normalized_pdf` mode divides it out.
//! The CUE transmit-power expectation is a true (normalized) expectation and
//! is evaluated by quadrature.

use crate::channel::ChannelParams;
use crate::config::ScenarioConfig;
use crate::{Error, Result};

use std::f64::consts::PI;

/// Distance support of one gain class, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceBounds {
    pub min_m: f64,
    pub max_m: f64,
}

impl DistanceBounds {
    pub fn new(min_m: f64, max_m: f64) -> Result<Self> {
        if !(min_m > 0.0 && min_m < max_m) {
            return Err(Error::InvalidDistanceBounds(format!(
                "need 0 < d_min < d_max, got [{min_m}, {max_m}]"
            )));
        }
        Ok(DistanceBounds { min_m, max_m })
    }
}

/// Closed-form expected gain over the triangular distance density.
pub fn expected_gain(c: f64, alpha: f64, d_min: f64, d_max: f64) -> Result<f64> {
    if alpha <= 2.0 {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let b = DistanceBounds::new(d_min, d_max)?;
    let e = alpha - 2.0;
    Ok(2.0 * c * (b.min_m.powf(-e) - b.max_m.powf(-e)) / (b.max_m * b.max_m * e))
}

/// [`expected_gain`] with the optional density normalization applied.
pub fn expected_gain_mode(
    c: f64,
    alpha: f64,
    d_min: f64,
    d_max: f64,
    normalized: bool,
) -> Result<f64> {
    let raw = expected_gain(c, alpha, d_min, d_max)?;
    if normalized {
        Ok(raw / (1.0 - (d_min * d_min) / (d_max * d_max)))
    } else {
        Ok(raw)
    }
}

/// Interference radius: distance at which a max-power interferer's expected
/// received power equals the noise floor (`E[|h|^2] = 1`).
pub fn interference_radius(p_tx_max_mw: f64, c: f64, alpha: f64, noise_mw: f64) -> f64 {
    (p_tx_max_mw * c / noise_mw).powf(1.0 / alpha)
}

/// Adaptive Simpson quadrature to absolute tolerance `tol * scale`.
fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Integrate `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let scale = whole.abs().max(1e-300);
    adaptive_simpson(&f, a, b, fa, fm, fb, whole, rel_tol * scale, 48)
}

/// Expected CUE transmit power under open-loop fractional power control,
/// averaged over the in-cell distance density (shadowing excluded):
/// `E[(gamma_th N_BS / G)^alpha_p] * (P_C^max)^(1 - alpha_p)`.
///
/// Evaluated by quadrature as a true (normalized) expectation; collapsed
/// bounds degenerate to a point evaluation.
pub fn expected_cue_tx_power(
    c0: f64,
    alpha0: f64,
    noise_bs_mw: f64,
    p_c_max_mw: f64,
    gamma_cue_th: f64,
    alpha_p: f64,
    d_min: f64,
    d_max: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha_p) {
        return Err(Error::InvalidConfig(format!(
            "alpha_p must lie in [0, 1], got {alpha_p}"
        )));
    }
    let power_at = |d: f64| {
        (gamma_cue_th * noise_bs_mw / (c0 * d.powf(-alpha0))).powf(alpha_p)
            * p_c_max_mw.powf(1.0 - alpha_p)
    };
    if d_max <= d_min * (1.0 + 1e-12) {
        return Ok(power_at(d_min));
    }
    let pdf_mass = integrate(|x| 2.0 * x / (d_max * d_max), d_min, d_max, 1e-10);
    let raw = integrate(
        |x| power_at(x) * 2.0 * x / (d_max * d_max),
        d_min,
        d_max,
        1e-10,
    );
    Ok(raw / pdf_mass)
}

/// Expected inter-cell interference from CUEs at a BS:
/// `(A_annulus / A_cl) * E[P_tx] * E[G_out]` where the annulus spans the
/// cell edge to the CUE interference radius. Degenerate annulus gives 0.
pub fn expected_cue_interference_at_bs(
    ctx: &ExpectationContext,
    cell_area_m2: f64,
    alpha_p: f64,
    gamma_cue_th: f64,
) -> Result<f64> {
    if ctx.cue_bs_radius_m <= ctx.cell_radius_m {
        return Ok(0.0);
    }
    let annulus =
        PI * (ctx.cue_bs_radius_m * ctx.cue_bs_radius_m - ctx.cell_radius_m * ctx.cell_radius_m);
    let e_p = ctx.e_p_tx_cue_mw(alpha_p, gamma_cue_th)?;
    Ok(annulus / cell_area_m2 * e_p * ctx.e_g_cue_bs_out)
}

/// Expected interference from CUEs at a D2D receiver:
/// `(A_disc / A_cl) * E[P_tx] * E[G_cue_d2d]`.
pub fn expected_cue_interference_at_d2d(
    ctx: &ExpectationContext,
    cell_area_m2: f64,
    alpha_p: f64,
    gamma_cue_th: f64,
) -> Result<f64> {
    let disc = PI * ctx.cue_d2d_radius_m * ctx.cue_d2d_radius_m;
    let e_p = ctx.e_p_tx_cue_mw(alpha_p, gamma_cue_th)?;
    Ok(disc / cell_area_m2 * e_p * ctx.e_g_cue_d2d)
}

/// Precomputed expectation machinery shared by BAC and DAC: noise and power
/// caps, per-class distance supports, interference radii/areas and the
/// closed-form expected gains.
#[derive(Debug, Clone)]
pub struct ExpectationContext {
    pub params: ChannelParams,
    pub noise_bs_mw: f64,
    pub noise_d2d_mw: f64,
    pub p_d_max_mw: f64,
    pub p_c_max_mw: f64,
    pub cell_radius_m: f64,
    pub normalized_pdf: bool,

    /// Distance supports per gain class.
    pub d2d_pair: DistanceBounds,
    pub d2d_to_bs: DistanceBounds,
    pub d2d_interferer: DistanceBounds,
    pub cue_to_bs_in: DistanceBounds,
    pub cue_to_bs_out: DistanceBounds,
    pub cue_to_d2d: DistanceBounds,

    /// Interference radii (max bounds of the classes above), meters.
    pub d2d_bs_radius_m: f64,
    pub d2d_i_radius_m: f64,
    pub cue_bs_radius_m: f64,
    pub cue_d2d_radius_m: f64,

    /// Expected gains per class.
    pub e_g_d2d: f64,
    pub e_g_d2d_bs: f64,
    pub e_g_d2d_i: f64,
    pub e_g_cue_bs_in: f64,
    pub e_g_cue_bs_out: f64,
    pub e_g_cue_d2d: f64,
}

impl ExpectationContext {
    pub fn from_config(cfg: &ScenarioConfig) -> Result<Self> {
        let params = cfg.channel_params();
        let noise_bs = cfg.noise_bs_mw();
        let noise_d2d = cfg.noise_d2d_mw();
        let p_d_max = cfg.p_d_max_mw();
        let p_c_max = cfg.p_c_max_mw();
        let r = cfg.cell_radius_m;

        let d2d_bs_radius = interference_radius(p_d_max, params.c0, params.alpha0, noise_bs);
        let d2d_i_radius = interference_radius(p_d_max, params.cd, params.alpha_d, noise_d2d);
        let cue_bs_radius = interference_radius(p_c_max, params.c0, params.alpha0, noise_bs);
        let cue_d2d_radius = interference_radius(p_c_max, params.cd, params.alpha_d, noise_d2d);

        let d2d_pair = DistanceBounds::new(cfg.d2d_min_m, cfg.d2d_max_m)?;
        let d2d_to_bs = DistanceBounds::new(cfg.d_min_m, d2d_bs_radius)?;
        let d2d_interferer = DistanceBounds::new(cfg.user_user_floor_m, d2d_i_radius)?;
        let cue_to_bs_in = DistanceBounds::new(cfg.d_min_m, r)?;
        let cue_to_bs_out = DistanceBounds::new(r, cue_bs_radius.max(r * (1.0 + 1e-9)))?;
        let cue_to_d2d = DistanceBounds::new(cfg.user_user_floor_m, cue_d2d_radius)?;

        let norm = cfg.normalized_pdf;
        let eg = |c: f64, alpha: f64, b: &DistanceBounds| {
            expected_gain_mode(c, alpha, b.min_m, b.max_m, norm)
        };

        Ok(ExpectationContext {
            e_g_d2d: eg(params.cd, params.alpha_d, &d2d_pair)?,
            e_g_d2d_bs: eg(params.c0, params.alpha0, &d2d_to_bs)?,
            e_g_d2d_i: eg(params.cd, params.alpha_d, &d2d_interferer)?,
            e_g_cue_bs_in: eg(params.c0, params.alpha0, &cue_to_bs_in)?,
            e_g_cue_bs_out: eg(params.c0, params.alpha0, &cue_to_bs_out)?,
            e_g_cue_d2d: eg(params.cd, params.alpha_d, &cue_to_d2d)?,
            params,
            noise_bs_mw: noise_bs,
            noise_d2d_mw: noise_d2d,
            p_d_max_mw: p_d_max,
            p_c_max_mw: p_c_max,
            cell_radius_m: r,
            normalized_pdf: norm,
            d2d_pair,
            d2d_to_bs,
            d2d_interferer,
            cue_to_bs_in,
            cue_to_bs_out,
            cue_to_d2d,
            d2d_bs_radius_m: d2d_bs_radius,
            d2d_i_radius_m: d2d_i_radius,
            cue_bs_radius_m: cue_bs_radius,
            cue_d2d_radius_m: cue_d2d_radius,
        })
    }

    /// Interference area around a BS when D2D links interfere (`A_x0`).
    pub fn area_d2d_at_bs_m2(&self) -> f64 {
        PI * self.d2d_bs_radius_m * self.d2d_bs_radius_m
    }

    /// Interference area around a D2D receiver when D2D links interfere
    /// (`A_xk`).
    pub fn area_d2d_at_d2d_m2(&self) -> f64 {
        PI * self.d2d_i_radius_m * self.d2d_i_radius_m
    }

    /// Interference area around a D2D receiver when CUEs interfere
    /// (`A_xk^C`).
    pub fn area_cue_at_d2d_m2(&self) -> f64 {
        PI * self.cue_d2d_radius_m * self.cue_d2d_radius_m
    }

    /// Annulus between the cell edge and the CUE interference radius
    /// (`A_x0^C`), zero when degenerate.
    pub fn area_cue_at_bs_m2(&self) -> f64 {
        if self.cue_bs_radius_m <= self.cell_radius_m {
            0.0
        } else {
            PI * (self.cue_bs_radius_m * self.cue_bs_radius_m
                - self.cell_radius_m * self.cell_radius_m)
        }
    }

    /// Expected CUE transmit power, quadrature over the in-cell distance
    /// density.
    pub fn e_p_tx_cue_mw(&self, alpha_p: f64, gamma_cue_th: f64) -> Result<f64> {
        expected_cue_tx_power(
            self.params.c0,
            self.params.alpha0,
            self.noise_bs_mw,
            self.p_c_max_mw,
            gamma_cue_th,
            alpha_p,
            self.cue_to_bs_in.min_m,
            self.cue_to_bs_in.max_m,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{db_to_lin, dbm_to_mw, noise_power_mw};

    #[test]
    fn expected_gain_matches_quadrature_grid() {
        // Quadrature of x^-alpha * 2x/d_max^2 over each support, relative
        // error < 1e-9 on a 4x4 grid of (alpha, bounds).
        let alphas = [2.5, 3.0, 3.67, 4.0];
        let bounds = [(10.0, 40.0), (10.0, 50.0), (1.0, 400.0), (50.0, 1270.0)];
        for &alpha in &alphas {
            for &(lo, hi) in &bounds {
                let closed = expected_gain(1.0, alpha, lo, hi).unwrap();
                let quad = integrate(|x| x.powf(-alpha) * 2.0 * x / (hi * hi), lo, hi, 1e-12);
                let rel = (closed - quad).abs() / quad;
                assert!(rel < 1e-9, "alpha={alpha} [{lo},{hi}] rel={rel:e}");
            }
        }
    }

    #[test]
    fn expected_gain_reference_value() {
        // c_d = 10^-2.803, alpha = 4, [10, 40] m: about 9.22e-9 (-80.4 dB).
        let cd = db_to_lin(-28.03);
        let e = expected_gain(cd, 4.0, 10.0, 40.0).unwrap();
        assert!((e - 9.224e-9).abs() / 9.224e-9 < 1e-3, "got {e:e}");
    }

    #[test]
    fn expected_gain_vanishes_with_distant_support() {
        let near = expected_gain(1.0, 4.0, 1.0, 100.0).unwrap();
        let far = expected_gain(1.0, 4.0, 1.0, 1e6).unwrap();
        assert!(far < near * 1e-6);
    }

    #[test]
    fn expected_gain_linear_in_coefficient() {
        let e1 = expected_gain(1.0, 3.67, 10.0, 400.0).unwrap();
        let e2 = expected_gain(2.0, 3.67, 10.0, 400.0).unwrap();
        assert!((e2 / e1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn expected_gain_rejects_shallow_exponents() {
        assert!(matches!(
            expected_gain(1.0, 2.0, 10.0, 40.0),
            Err(Error::AlphaOutOfRange(_))
        ));
        assert!(expected_gain(1.0, 1.5, 10.0, 40.0).is_err());
    }

    #[test]
    fn normalized_mode_divides_out_the_density_deficit() {
        let raw = expected_gain_mode(1.0, 4.0, 10.0, 40.0, false).unwrap();
        let norm = expected_gain_mode(1.0, 4.0, 10.0, 40.0, true).unwrap();
        let mass = 1.0 - (10.0f64 * 10.0) / (40.0 * 40.0);
        assert!((norm * mass - raw).abs() / raw < 1e-12);
    }

    #[test]
    fn interference_radius_reference_value() {
        // 23 dBm, c0 = -30.55 dB, alpha0 = 3.67 against the 180 kHz noise
        // floor: about 1.27 km.
        let p = dbm_to_mw(23.0);
        let c0 = db_to_lin(-30.55);
        let noise = noise_power_mw(-174.0, 180e3);
        let d = interference_radius(p, c0, 3.67, noise);
        assert!((d - 1.27e3).abs() / 1.27e3 < 0.01, "got {d}");
        // Defining identity: p * c * d^-alpha = noise.
        let resid = p * c0 * d.powf(-3.67);
        assert!((resid - noise).abs() / noise < 1e-12);
    }

    #[test]
    fn interference_radius_unit_and_power_law() {
        assert!((interference_radius(2.0, 3.0, 3.5, 6.0) - 1.0).abs() < 1e-12);
        let d1 = interference_radius(1.0, 1.0, 2.0, 1e-6);
        let d4 = interference_radius(4.0, 1.0, 2.0, 1e-6);
        assert!((d4 / d1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cue_power_no_compensation_is_the_cap() {
        let p = expected_cue_tx_power(
            db_to_lin(-30.55),
            3.67,
            noise_power_mw(-174.0, 180e3),
            dbm_to_mw(23.0),
            db_to_lin(10.0),
            0.0,
            10.0,
            400.0,
        )
        .unwrap();
        assert!((p - dbm_to_mw(23.0)).abs() / dbm_to_mw(23.0) < 1e-9);
    }

    #[test]
    fn cue_power_full_compensation_at_fixed_distance() {
        // Collapsed bounds: deterministic gain, P = gamma N / (c0 d^-alpha0).
        let c0 = db_to_lin(-30.55);
        let noise = noise_power_mw(-174.0, 180e3);
        let gamma = db_to_lin(10.0);
        let d = 200.0;
        let p = expected_cue_tx_power(c0, 3.67, noise, dbm_to_mw(23.0), gamma, 1.0, d, d).unwrap();
        let expect = gamma * noise / (c0 * d.powf(-3.67));
        assert!((p - expect).abs() / expect < 1e-12);
    }

    #[test]
    fn cue_power_matches_high_resolution_simpson() {
        // Independent oracle: fixed-panel composite Simpson.
        let c0 = db_to_lin(-30.55);
        let noise = noise_power_mw(-174.0, 180e3);
        let gamma = db_to_lin(10.0);
        let p_max = dbm_to_mw(23.0);
        let (lo, hi) = (10.0, 400.0);
        let p = expected_cue_tx_power(c0, 3.67, noise, p_max, gamma, 0.8, lo, hi).unwrap();

        let f = |x: f64| {
            (gamma * noise / (c0 * x.powf(-3.67))).powf(0.8)
                * p_max.powf(0.2)
                * (2.0 * x / (hi * hi))
        };
        let n = 200_000;
        let h = (hi - lo) / n as f64;
        let mut acc = f(lo) + f(hi);
        for i in 1..n {
            let x = lo + i as f64 * h;
            acc += if i % 2 == 0 { 2.0 } else { 4.0 } * f(x);
        }
        let raw = acc * h / 3.0;
        let mass = 1.0 - (lo * lo) / (hi * hi);
        let oracle = raw / mass;
        assert!((p - oracle).abs() / oracle < 0.005, "p={p} oracle={oracle}");
    }

    #[test]
    fn context_from_default_config() {
        let cfg = ScenarioConfig::default();
        let ctx = ExpectationContext::from_config(&cfg).unwrap();
        assert!(ctx.e_g_d2d > ctx.e_g_d2d_i); // pairs are closer than interferers
        assert!(ctx.d2d_bs_radius_m > 1000.0 && ctx.d2d_bs_radius_m < 1500.0);
        assert!(ctx.cue_bs_radius_m > cfg.cell_radius_m);
        assert!(ctx.area_cue_at_bs_m2() > 0.0);
        // Interference radii satisfy their defining equation.
        let resid = ctx.p_d_max_mw * ctx.params.cd * ctx.d2d_i_radius_m.powf(-ctx.params.alpha_d);
        assert!((resid - ctx.noise_d2d_mw).abs() / ctx.noise_d2d_mw < 1e-12);
    }

    #[test]
    fn cue_interference_density_scaling_and_degenerate_annulus() {
        let cfg = ScenarioConfig::default();
        let ctx = ExpectationContext::from_config(&cfg).unwrap();
        let a_cl = PI * cfg.cell_radius_m * cfg.cell_radius_m;
        let gamma = db_to_lin(cfg.gamma_cue_th_db);
        let base = expected_cue_interference_at_bs(&ctx, a_cl, cfg.alpha_p, gamma).unwrap();
        assert!(base > 0.0);
        let doubled = expected_cue_interference_at_bs(&ctx, 2.0 * a_cl, cfg.alpha_p, gamma).unwrap();
        assert!((doubled * 2.0 - base).abs() / base < 1e-12);

        // Annulus collapses when the interference radius is inside the cell.
        let mut degen = ctx.clone();
        degen.cue_bs_radius_m = degen.cell_radius_m * 0.5;
        let z = expected_cue_interference_at_bs(&degen, a_cl, cfg.alpha_p, gamma).unwrap();
        assert_eq!(z, 0.0);

        // D2D-side value vanishes as the cell area grows.
        let d = expected_cue_interference_at_d2d(&ctx, a_cl, cfg.alpha_p, gamma).unwrap();
        let d_far = expected_cue_interference_at_d2d(&ctx, 1e9 * a_cl, cfg.alpha_p, gamma).unwrap();
        assert!(d > 0.0 && d_far < d * 1e-8);
    }

    #[test]
    fn cue_at_d2d_sublinear_in_radius() {
        // Doubling the CUE->D2D interference radius grows the value by less
        // than the 4x area factor because the gain expectation shrinks.
        let cfg = ScenarioConfig::default();
        let ctx = ExpectationContext::from_config(&cfg).unwrap();
        let a_cl = PI * cfg.cell_radius_m * cfg.cell_radius_m;
        let gamma = db_to_lin(cfg.gamma_cue_th_db);
        let base = expected_cue_interference_at_d2d(&ctx, a_cl, cfg.alpha_p, gamma).unwrap();

        let mut wide = ctx.clone();
        wide.cue_d2d_radius_m *= 2.0;
        wide.cue_to_d2d = DistanceBounds::new(ctx.cue_to_d2d.min_m, wide.cue_d2d_radius_m).unwrap();
        wide.e_g_cue_d2d = expected_gain_mode(
            ctx.params.cd,
            ctx.params.alpha_d,
            wide.cue_to_d2d.min_m,
            wide.cue_to_d2d.max_m,
            false,
        )
        .unwrap();
        let grown = expected_cue_interference_at_d2d(&wide, a_cl, cfg.alpha_p, gamma).unwrap();
        assert!(grown > base && grown < 4.0 * base, "base={base} grown={grown}");
    }
}
