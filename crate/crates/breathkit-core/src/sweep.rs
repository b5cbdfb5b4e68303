//! Sweeps of the swelling model over a grid of swelling factors, with
//! detection of the coefficient's local extrema and comparison against the
//! predicted minimum positions `2^n cos(alpha0)` (60-hexagonal states) and
//! `2^(n+1) cos(alpha0) sqrt(3)/3` (30-hexagonal states).

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::packing::{
    breathing_bs, initial_body_area_tilde, PackingError, PackingScenario, PackingState,
};
use crate::partition::{validity_gate, Validity, ValidityConfig};

/// Largest admissible sweep end point (overflow guard).
pub const XI_MAX: f64 = 1048576.0; // 2^20

/// Errors from sweep configuration and extrema detection.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepError {
    InvalidConfig(&'static str),
    /// Fewer than three usable points: no interior extremum can exist.
    InsufficientData,
    Model(PackingError),
}

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepError::InvalidConfig(msg) => write!(f, "invalid sweep config: {msg}"),
            SweepError::InsufficientData => write!(f, "series too short for extrema detection"),
            SweepError::Model(e) => write!(f, "model error: {e}"),
        }
    }
}

impl core::error::Error for SweepError {}

impl From<PackingError> for SweepError {
    fn from(e: PackingError) -> Self {
        SweepError::Model(e)
    }
}

/// Grid spacing. The model is periodic in `log2(xi)`, so logarithmic
/// spacing is the default; linear spacing suits plotting on linear axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    Log2,
    Linear,
}

impl Spacing {
    pub fn as_str(self) -> &'static str {
        match self {
            Spacing::Log2 => "log2",
            Spacing::Linear => "linear",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "log2" => Some(Spacing::Log2),
            "linear" => Some(Spacing::Linear),
            _ => None,
        }
    }
}

/// A sweep: scenario, swelling-factor range, sample count, spacing, and the
/// uncertainty configuration applied to each point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub scenario: PackingScenario,
    pub xi_start: f64,
    pub xi_end: f64,
    pub samples: usize,
    pub spacing: Spacing,
    pub validity: ValidityConfig,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        if !self.xi_start.is_finite() || self.xi_start < 1.0 {
            return Err(SweepError::InvalidConfig("xi_start must be >= 1"));
        }
        if !self.xi_end.is_finite() || self.xi_end <= self.xi_start {
            return Err(SweepError::InvalidConfig("xi_end must exceed xi_start"));
        }
        if self.xi_end > XI_MAX {
            return Err(SweepError::InvalidConfig("xi_end above 2^20"));
        }
        if self.samples < 2 {
            return Err(SweepError::InvalidConfig("at least 2 samples required"));
        }
        Ok(())
    }

    /// The sample positions, endpoints exact.
    pub fn grid(&self) -> Result<Vec<f64>, SweepError> {
        self.validate()?;
        let n = self.samples;
        let mut xs = Vec::with_capacity(n);
        match self.spacing {
            Spacing::Linear => {
                let step = (self.xi_end - self.xi_start) / (n - 1) as f64;
                for i in 0..n {
                    xs.push(self.xi_start + step * i as f64);
                }
            }
            Spacing::Log2 => {
                let l0 = self.xi_start.log2();
                let l1 = self.xi_end.log2();
                let step = (l1 - l0) / (n - 1) as f64;
                for i in 0..n {
                    xs.push((l0 + step * i as f64).exp2());
                }
            }
        }
        xs[0] = self.xi_start;
        xs[n - 1] = self.xi_end;
        Ok(xs)
    }
}

/// One sampled point of the sweep. When the validity gate rejects the point
/// the coefficient fields hold NaN sentinels and must not be consumed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub xi: f64,
    pub n: u32,
    pub alpha: f64,
    pub u_bs: f64,
    pub u_vs: f64,
    pub chi: f64,
    pub a_body_tilde: f64,
    pub validity: Validity,
}

/// Evaluates a single sweep point.
pub fn evaluate_point(
    scenario: &PackingScenario,
    validity_cfg: &ValidityConfig,
    xi: f64,
) -> Result<SweepPoint, SweepError> {
    let state = PackingState::evaluate(scenario, xi)?;
    let d_body = state.a_body_tilde - state.a_body0_tilde;
    let d_solid = PI * (xi * xi - 1.0);
    let validity = validity_gate(d_body, d_solid, validity_cfg);
    let (u_bs, u_vs) = if validity == Validity::Invalid {
        (f64::NAN, f64::NAN)
    } else {
        let u = breathing_bs(xi, scenario)?;
        (u, u - 1.0)
    };
    Ok(SweepPoint {
        xi,
        n: state.n,
        alpha: state.alpha,
        u_bs,
        u_vs,
        chi: state.a_solid_tilde / state.a_body_tilde,
        a_body_tilde: state.a_body_tilde,
        validity,
    })
}

/// Runs the sweep; points come out sorted by `xi`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepPoint>, SweepError> {
    let grid = cfg.grid()?;
    grid.iter()
        .map(|&xi| evaluate_point(&cfg.scenario, &cfg.validity, xi))
        .collect()
}

/// Detected extrema of a sweep, with the predicted minimum positions in
/// range and the worst distance from a detected minimum to its nearest
/// prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremaReport {
    /// `(xi, u_bs)` of each local minimum.
    pub minima: Vec<(f64, f64)>,
    /// `(xi, u_bs)` of each local maximum.
    pub maxima: Vec<(f64, f64)>,
    pub predicted_minima: Vec<f64>,
    pub max_abs_position_error: f64,
}

/// Predicted local-minimum positions within `[xi_start, xi_end]` for an
/// initial angle with cosine `cos_alpha0`: every return to the hexagonal
/// arrangements.
pub fn predicted_minima(cos_alpha0: f64, xi_start: f64, xi_end: f64) -> Vec<f64> {
    let sqrt3_third = 3.0_f64.sqrt() / 3.0;
    let mut out = Vec::new();
    let mut p = 2.0 * cos_alpha0;
    while p <= xi_end {
        if p >= xi_start {
            out.push(p);
        }
        p *= 2.0;
    }
    let mut q = 2.0 * cos_alpha0 * sqrt3_third;
    while q <= xi_end {
        if q >= xi_start {
            out.push(q);
        }
        q *= 2.0;
    }
    out.sort_by(|a, b| a.partial_cmp(b).expect("positions are finite"));
    out
}

/// Three-point discrete extrema detection with plateau handling (ties take
/// the leftmost index). Points flagged invalid or with non-finite
/// coefficient are excluded before detection, so gaps never fabricate an
/// extremum.
pub fn detect_extrema(series: &[SweepPoint]) -> Result<ExtremaReport, SweepError> {
    if series.len() < 3 {
        return Err(SweepError::InsufficientData);
    }
    let usable: Vec<&SweepPoint> = series
        .iter()
        .filter(|p| p.validity != Validity::Invalid && p.u_bs.is_finite())
        .collect();
    if usable.len() < 3 {
        return Err(SweepError::InsufficientData);
    }
    let mut minima = Vec::new();
    let mut maxima = Vec::new();
    for i in 1..usable.len() - 1 {
        let (prev, cur, next) = (usable[i - 1].u_bs, usable[i].u_bs, usable[i + 1].u_bs);
        if prev > cur && cur <= next {
            minima.push((usable[i].xi, cur));
        } else if prev < cur && cur >= next {
            maxima.push((usable[i].xi, cur));
        }
    }

    // The initial-angle cosine is recoverable from any sampled state:
    // cos(alpha0) = xi * cos(alpha) / 2^n. Recovery is exact to a couple of
    // ulps, so the range filter gets matching slack to keep predictions that
    // sit exactly on the sweep endpoints.
    let first = usable[0];
    let cos_alpha0 = first.xi * first.alpha.cos() / 2.0_f64.powi(first.n as i32);
    let xi_start = series.first().map(|p| p.xi).unwrap_or(1.0);
    let xi_end = series.last().map(|p| p.xi).unwrap_or(1.0);
    let predicted = predicted_minima(cos_alpha0, xi_start * (1.0 - 1e-12), xi_end * (1.0 + 1e-12));

    let mut max_err = 0.0_f64;
    for &(xi, _) in &minima {
        let nearest = predicted
            .iter()
            .map(|&p| (xi - p).abs())
            .fold(f64::INFINITY, f64::min);
        if nearest.is_finite() {
            max_err = max_err.max(nearest);
        }
    }
    Ok(ExtremaReport {
        minima,
        maxima,
        predicted_minima: predicted,
        max_abs_position_error: max_err,
    })
}

/// The limiting value of the coefficient's local minima at high transition
/// index: `sqrt(12)/pi`, the reciprocal of the densest monosized-disc solid
/// fraction.
pub fn minimisation_limit() -> f64 {
    12.0_f64.sqrt() / PI
}

/// The scenario-dependent floor of the coefficient along a sweep. Hexagonal
/// starts never fall below the minima limit family; a square start decreases
/// until its first 30-hexagonal reorganisation at `xi = 2 cos(alpha0)/sqrt(3)`,
/// where `u_bs = 4 cos(alpha0) / (pi (1 + 2 cos(alpha0)/sqrt(3)))`.
pub fn coefficient_floor(scenario: &PackingScenario) -> f64 {
    let c = scenario.alpha0().cos();
    if scenario.is_square_initial() {
        4.0 * c / (PI * (1.0 + 2.0 * c / 3.0_f64.sqrt()))
    } else {
        // Smallest closed-form minimum over the periods; the first periods
        // are the lowest for hexagonal starts.
        let a0 = initial_body_area_tilde(scenario);
        let mut floor = f64::INFINITY;
        for n in 0..=12 {
            if let Ok((at_hex, at_30)) = crate::packing::closed_form_minima(n, scenario.alpha0(), a0)
            {
                if at_hex > 0.0 {
                    floor = floor.min(at_hex);
                }
                if at_30 > 0.0 {
                    floor = floor.min(at_30);
                }
            }
        }
        floor
    }
}
