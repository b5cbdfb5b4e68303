//! Closed-form model of perfect uniaxial swelling of a monosized disc packing.
//!
//! Discs of initial radius `R0` swell uniformly by a factor `xi = R/R0`
//! inside a container that only allows vertical expansion. The packing is
//! tracked by its angle `alpha` (smallest positive angle between horizontal
//! and a line joining touching disc centres, in `[0, pi/3)`) and by the
//! transition index `n`, the number of times the packing has reached the
//! 60-hexagonal arrangement. Everything is nondimensional: areas are divided
//! by `4*R0^2` so that a representative tile holding four discs has solid
//! area `pi*xi^2`.

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};
use core::fmt;

pub(crate) const SQRT_3: f64 = 1.732050807568877293527446341505872367_f64;

/// Slack for accepting `alpha` exactly at the `pi/3` branch boundary.
const ALPHA_BOUNDARY_SLACK: f64 = 1e-12;

/// Errors from the swelling model.
#[derive(Debug, Clone, PartialEq)]
pub enum PackingError {
    /// Swelling factor must be finite and at least 1.
    DomainXi(f64),
    /// Packing angle outside its admissible range.
    DomainAlpha(f64),
    /// Initial angle outside `[0, pi/3)` or inconsistent with the kind.
    InvalidScenario,
    /// `(xi, n)` pair puts the arccos argument outside `(0, 1]`.
    InconsistentIndex { xi: f64, n: u32 },
    /// Closed-form minimum requested at a point where its denominator vanishes.
    DegenerateMinimum,
}

impl fmt::Display for PackingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PackingError::DomainXi(xi) => write!(f, "swelling factor {xi} outside [1, inf)"),
            PackingError::DomainAlpha(a) => write!(f, "packing angle {a} outside [0, pi/3]"),
            PackingError::InvalidScenario => write!(f, "invalid packing scenario"),
            PackingError::InconsistentIndex { xi, n } => {
                write!(f, "transition index {n} inconsistent with swelling factor {xi}")
            }
            PackingError::DegenerateMinimum => {
                write!(f, "closed-form minimum is degenerate at this (n, alpha0)")
            }
        }
    }
}

impl core::error::Error for PackingError {}

/// The three periodic monosized-disc arrangements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PackingKind {
    /// Discs on a square grid; occurs only as an initial packing.
    Square,
    /// Hexagonal arrangement at packing angle `pi/6`.
    Hex30,
    /// Hexagonal arrangement at packing angle `0` (equivalently `pi/3`).
    Hex60,
}

impl PackingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PackingKind::Square => "square",
            PackingKind::Hex30 => "hex30",
            PackingKind::Hex60 => "hex60",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "square" => Some(PackingKind::Square),
            "hex30" => Some(PackingKind::Hex30),
            "hex60" => Some(PackingKind::Hex60),
            _ => None,
        }
    }
}

impl fmt::Display for PackingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Initial packing: kind plus initial angle `alpha0 = alpha(xi = 1)`.
///
/// Scenarios are canonical after construction: `Hex30` becomes `Hex60` with
/// `alpha0 = pi/6` (same parametric family), and a square initial packing
/// with `alpha0 >= pi/6` is already hexagonal, so it becomes `Hex60` too.
/// A `Square` scenario therefore always has `alpha0 < pi/6`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PackingScenario {
    kind: PackingKind,
    alpha0: f64,
}

impl PackingScenario {
    pub fn new(kind: PackingKind, alpha0: f64) -> Result<Self, PackingError> {
        if !alpha0.is_finite() || !(0.0..FRAC_PI_3).contains(&alpha0) {
            return Err(PackingError::InvalidScenario);
        }
        match kind {
            PackingKind::Hex30 => {
                if (alpha0 - FRAC_PI_6).abs() > 1e-12 {
                    return Err(PackingError::InvalidScenario);
                }
                Ok(PackingScenario { kind: PackingKind::Hex60, alpha0: FRAC_PI_6 })
            }
            PackingKind::Square if alpha0 >= FRAC_PI_6 => {
                Ok(PackingScenario { kind: PackingKind::Hex60, alpha0 })
            }
            kind => Ok(PackingScenario { kind, alpha0 }),
        }
    }

    pub fn square(alpha0: f64) -> Result<Self, PackingError> {
        PackingScenario::new(PackingKind::Square, alpha0)
    }

    pub fn hex60(alpha0: f64) -> Result<Self, PackingError> {
        PackingScenario::new(PackingKind::Hex60, alpha0)
    }

    pub fn hex30() -> Self {
        PackingScenario { kind: PackingKind::Hex60, alpha0: FRAC_PI_6 }
    }

    /// Canonical kind: `Square` or `Hex60`.
    pub fn kind(&self) -> PackingKind {
        self.kind
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn is_square_initial(&self) -> bool {
        self.kind == PackingKind::Square
    }
}

/// Derived state of the packing at a given swelling factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PackingState {
    pub xi: f64,
    pub n: u32,
    pub alpha: f64,
    pub a_body_tilde: f64,
    pub a_body0_tilde: f64,
    pub a_solid_tilde: f64,
}

impl PackingState {
    pub fn evaluate(scenario: &PackingScenario, xi: f64) -> Result<Self, PackingError> {
        let n = transition_index(xi, scenario.alpha0)?;
        let alpha = packing_angle(xi, scenario.alpha0, n)?;
        let a_body_tilde = body_area_tilde(xi, alpha, scenario, n)?;
        let a_body0_tilde = initial_body_area_tilde(scenario);
        let a_solid_tilde = PI * xi * xi;
        debug_assert!(a_body_tilde >= a_solid_tilde * (1.0 - 1e-12));
        Ok(PackingState { xi, n, alpha, a_body_tilde, a_body0_tilde, a_solid_tilde })
    }
}

/// Number of completed returns to the 60-hexagonal arrangement.
///
/// Resets the angle to zero (`xi' = xi / cos(alpha0)`), then halves while
/// `xi' > 2` strictly, so an exact power of two lands at `alpha = pi/3` of
/// the previous period rather than `alpha = 0` of the next; both give the
/// same area by continuity.
pub fn transition_index(xi: f64, alpha0: f64) -> Result<u32, PackingError> {
    if !xi.is_finite() || xi < 1.0 {
        return Err(PackingError::DomainXi(xi));
    }
    if !alpha0.is_finite() || !(0.0..FRAC_PI_3).contains(&alpha0) {
        return Err(PackingError::InvalidScenario);
    }
    let mut n = 0u32;
    let mut xi_prime = xi / alpha0.cos();
    while xi_prime > 2.0 {
        n += 1;
        xi_prime /= 2.0;
    }
    Ok(n)
}

/// Packing angle `alpha = arccos(2^n * cos(alpha0) / xi)`.
///
/// With the index from [`transition_index`] the argument lies in `[1/2, 1]`
/// and the angle in `[0, pi/3]`; an argument outside `(0, 1]` means the
/// `(xi, n)` pair is inconsistent.
pub fn packing_angle(xi: f64, alpha0: f64, n: u32) -> Result<f64, PackingError> {
    if !xi.is_finite() || xi < 1.0 {
        return Err(PackingError::DomainXi(xi));
    }
    let c = 2.0_f64.powi(n as i32) * alpha0.cos() / xi;
    if c.is_nan() || c <= 0.0 || c > 1.0 + 1e-12 {
        return Err(PackingError::InconsistentIndex { xi, n });
    }
    Ok(c.min(1.0).acos())
}

/// Nondimensional body area (representative-tile area over `4*R0^2`) at a
/// given angle. Three branches: the square tile (only while a square initial
/// packing has not yet reorganised), the 60-hexagonal tile for
/// `alpha < pi/6`, and the shared tile for `alpha in [pi/6, pi/3]`.
pub fn body_area_tilde(
    xi: f64,
    alpha: f64,
    scenario: &PackingScenario,
    n: u32,
) -> Result<f64, PackingError> {
    if !alpha.is_finite() || !(0.0..=FRAC_PI_3 + ALPHA_BOUNDARY_SLACK).contains(&alpha) {
        return Err(PackingError::DomainAlpha(alpha));
    }
    let xi2 = xi * xi;
    let area = if alpha < FRAC_PI_6 {
        if scenario.is_square_initial() && n == 0 {
            4.0 * xi2 * alpha.cos()
        } else {
            xi2 * (SQRT_3 + 2.0 * (2.0 * PI / 3.0 - 2.0 * alpha).sin())
        }
    } else {
        8.0 * xi2 * alpha.cos() * alpha.sin()
    };
    Ok(area)
}

/// Nondimensional body area at `xi = 1`, which depends only on the scenario.
pub fn initial_body_area_tilde(scenario: &PackingScenario) -> f64 {
    let a0 = scenario.alpha0;
    if a0 < FRAC_PI_6 {
        if scenario.is_square_initial() {
            4.0 * a0.cos()
        } else {
            SQRT_3 + 2.0 * (2.0 * PI / 3.0 - 2.0 * a0).sin()
        }
    } else {
        8.0 * a0.cos() * a0.sin()
    }
}

/// Breathing coefficient `u_bs` of the packing: body-area variation over
/// solid-area variation, both nondimensional.
///
/// At `xi = 1` the ratio is 0/0; the analytic one-sided limit is returned
/// instead: `2*cos(alpha0)/pi` for a square initial packing, a flagged
/// `+inf` for a 60-hexagonal initial packing at `alpha0 = 0` (the compact
/// state converts any swelling into void), and the finite derivative ratio
/// for hexagonal scenarios with `alpha0 > 0`.
pub fn breathing_bs(xi: f64, scenario: &PackingScenario) -> Result<f64, PackingError> {
    if !xi.is_finite() || xi < 1.0 {
        return Err(PackingError::DomainXi(xi));
    }
    if xi == 1.0 {
        return Ok(breathing_bs_at_unity(scenario));
    }
    let state = PackingState::evaluate(scenario, xi)?;
    Ok((state.a_body_tilde - state.a_body0_tilde) / (PI * (xi * xi - 1.0)))
}

fn breathing_bs_at_unity(scenario: &PackingScenario) -> f64 {
    let a0 = scenario.alpha0;
    if scenario.is_square_initial() {
        return 2.0 * a0.cos() / PI;
    }
    if a0 == 0.0 {
        return f64::INFINITY;
    }
    // d(a_body_tilde)/dxi at xi = 1, over d(a_solid_tilde)/dxi = 2*pi,
    // with dalpha/dxi = cos(alpha0)/sin(alpha0) at xi = 1.
    let cot = a0.cos() / a0.sin();
    let derivative = if a0 < FRAC_PI_6 {
        let arg = 2.0 * PI / 3.0 - 2.0 * a0;
        2.0 * (SQRT_3 + 2.0 * arg.sin()) - 4.0 * arg.cos() * cot
    } else {
        8.0 * (2.0 * a0).sin() + 8.0 * (2.0 * a0).cos() * cot
    };
    derivative / (2.0 * PI)
}

/// Solid fraction `chi = pi*xi^2 / a_body_tilde`, never above `pi/sqrt(12)`.
pub fn solid_fraction(xi: f64, scenario: &PackingScenario) -> Result<f64, PackingError> {
    let state = PackingState::evaluate(scenario, xi)?;
    Ok(state.a_solid_tilde / state.a_body_tilde)
}

/// Closed-form breathing coefficient at the two local-minimum families of a
/// period: returns `(u_bs at alpha = 0, u_bs at alpha = pi/6)`, i.e. at
/// `xi = 2^n cos(alpha0)` and `xi = 2^(n+1) cos(alpha0) * sqrt(3)/3`.
pub fn closed_form_minima(
    n: u32,
    alpha0: f64,
    a_body0_tilde: f64,
) -> Result<(f64, f64), PackingError> {
    if !alpha0.is_finite() || !(0.0..FRAC_PI_3).contains(&alpha0) {
        return Err(PackingError::InvalidScenario);
    }
    if !a_body0_tilde.is_finite() || a_body0_tilde <= 0.0 {
        return Err(PackingError::InvalidScenario);
    }
    let c2 = alpha0.cos() * alpha0.cos();
    let p = 2.0_f64.powi(2 * n as i32);
    let den_hex = p * c2 - 1.0;
    let den_30 = 4.0 * p * c2 - 3.0;
    // Relative zero test: exact cancellation makes the expression meaningless.
    if den_hex.abs() <= 1e-12 * (p * c2).max(1.0) || den_30.abs() <= 1e-12 * (4.0 * p * c2).max(3.0)
    {
        return Err(PackingError::DegenerateMinimum);
    }
    let at_hex = (2.0 * p * SQRT_3 * c2 - a_body0_tilde) / (PI * den_hex);
    let at_30 = (8.0 * p * SQRT_3 * c2 - 3.0 * a_body0_tilde) / (PI * den_30);
    Ok((at_hex, at_30))
}

/// Large-swelling limits of the coefficient. As the initial areas become
/// negligible the coefficient collapses onto the static composition:
/// `u_bs -> 1/chi` and `u_vs = u_bs - 1 -> 1/chi - 1`, the void-to-solid
/// area ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticLimits {
    pub u_bs_limit: f64,
    pub u_vs_limit: f64,
}

pub fn asymptotic_limits(
    scenario: &PackingScenario,
    xi_large: f64,
) -> Result<AsymptoticLimits, PackingError> {
    let chi = solid_fraction(xi_large, scenario)?;
    Ok(AsymptoticLimits { u_bs_limit: 1.0 / chi, u_vs_limit: 1.0 / chi - 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hex0() -> PackingScenario {
        PackingScenario::hex60(0.0).unwrap()
    }

    fn square0() -> PackingScenario {
        PackingScenario::square(0.0).unwrap()
    }

    #[test]
    fn scenario_canonicalisation() {
        let s = PackingScenario::new(PackingKind::Hex30, FRAC_PI_6).unwrap();
        assert_eq!(s.kind(), PackingKind::Hex60);
        assert_eq!(s.alpha0(), FRAC_PI_6);
        assert!(PackingScenario::new(PackingKind::Hex30, 0.1).is_err());

        let s = PackingScenario::square(0.9).unwrap();
        assert_eq!(s.kind(), PackingKind::Hex60, "square at alpha0 >= pi/6 is already hexagonal");

        assert!(PackingScenario::square(FRAC_PI_3).is_err());
        assert!(PackingScenario::square(-0.1).is_err());
    }

    #[test]
    fn transition_index_traces() {
        assert_eq!(transition_index(1.0, 0.0).unwrap(), 0);
        assert_eq!(transition_index(4.0, 0.0).unwrap(), 1);
        assert_eq!(transition_index(2.802, 0.0).unwrap(), 1);
        // Strict comparison: an exact power of two stays in the lower period.
        assert_eq!(transition_index(2.0, 0.0).unwrap(), 0);
        assert_eq!(transition_index(1024.0, 0.0).unwrap(), 9);
        assert!(transition_index(0.5, 0.0).is_err());
        assert!(transition_index(f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn packing_angle_values() {
        assert!((packing_angle(1.0, 0.2, 0).unwrap() - 0.2).abs() < 1e-15);
        assert!((packing_angle(4.0, 0.0, 1).unwrap() - FRAC_PI_3).abs() < 1e-15);
        let xi = 4.0 * SQRT_3 / 3.0;
        assert!((packing_angle(xi, 0.0, 1).unwrap() - FRAC_PI_6).abs() < 1e-15);
        assert!(packing_angle(1.0, 0.0, 3).is_err());
    }

    #[test]
    fn body_area_branches() {
        let sq = square0();
        let hex = hex0();
        assert_eq!(body_area_tilde(1.0, 0.0, &sq, 0).unwrap(), 4.0);
        let a = body_area_tilde(1.0, 0.0, &hex, 0).unwrap();
        assert!((a - 2.0 * SQRT_3).abs() < 1e-15);
        let a = body_area_tilde(4.0, FRAC_PI_3, &hex, 1).unwrap();
        assert!((a - 32.0 * SQRT_3).abs() < 1e-12);
        assert!(body_area_tilde(1.0, -0.1, &hex, 0).is_err());
        assert!(body_area_tilde(1.0, FRAC_PI_3 + 0.1, &hex, 0).is_err());
    }

    #[test]
    fn initial_area_values() {
        assert_eq!(initial_body_area_tilde(&square0()), 4.0);
        assert!((initial_body_area_tilde(&hex0()) - 2.0 * SQRT_3).abs() < 1e-15);
        // Continuity across the pi/6 branch: both forms give 2*sqrt(3).
        let at_pi6 = initial_body_area_tilde(&PackingScenario::hex30());
        assert!((at_pi6 - 2.0 * SQRT_3).abs() < 1e-15);
        let just_below = initial_body_area_tilde(&PackingScenario::hex60(FRAC_PI_6 - 1e-9).unwrap());
        assert!((just_below - at_pi6).abs() < 1e-8);
    }

    #[test]
    fn breathing_near_unity_square() {
        let u = breathing_bs(1.0 + 1e-6, &square0()).unwrap();
        assert!((u - 2.0 / PI).abs() < 1e-5);
        // Exact xi = 1 returns the analytic limit.
        assert_eq!(breathing_bs(1.0, &square0()).unwrap(), 2.0 / PI);
        assert_eq!(breathing_bs(1.0, &hex0()).unwrap(), f64::INFINITY);
    }

    #[test]
    fn breathing_unity_limit_matches_numeric_derivative() {
        // Hexagonal starts away from the compact state have a finite limit.
        // The curvature near xi = 1 grows like cot^2(alpha0), so keep the
        // step small and the tolerance scaled.
        for alpha0 in [0.1, 0.3, FRAC_PI_6, 0.7, 1.0] {
            let s = PackingScenario::hex60(alpha0).unwrap();
            let analytic = breathing_bs(1.0, &s).unwrap();
            let numeric = breathing_bs(1.0 + 1e-8, &s).unwrap();
            assert!(
                (analytic - numeric).abs() < 1e-4 * analytic.max(1.0),
                "alpha0 = {alpha0}: analytic {analytic} vs numeric {numeric}"
            );
        }
        for alpha0 in [0.05, 0.2, 0.4] {
            let s = PackingScenario::square(alpha0).unwrap();
            assert_eq!(breathing_bs(1.0, &s).unwrap(), 2.0 * alpha0.cos() / PI);
            let numeric = breathing_bs(1.0 + 1e-8, &s).unwrap();
            assert!((2.0 * alpha0.cos() / PI - numeric).abs() < 1e-6);
        }
    }

    #[test]
    fn breathing_at_four_is_exact_hex_minimum() {
        let u = breathing_bs(4.0, &hex0()).unwrap();
        assert!((u - 2.0 * SQRT_3 / PI).abs() < 1e-12);
        assert!((u - 1.102657791).abs() < 5e-10);
    }

    #[test]
    fn breathing_near_reported_maximum() {
        // Independent algebraic route for the hex branch with n = 1,
        // alpha = arccos(2/xi) >= pi/6: a_body = 16*sqrt(xi^2 - 4).
        let xi = 2.802;
        let u = breathing_bs(xi, &hex0()).unwrap();
        let direct = (16.0 * (xi * xi - 4.0).sqrt() - 2.0 * SQRT_3) / (PI * (xi * xi - 1.0));
        assert!((u - direct).abs() < 1e-12);
        assert!((u - 1.298).abs() < 2e-3);
    }

    #[test]
    fn solid_fraction_values() {
        let chi = solid_fraction(4.0, &hex0()).unwrap();
        assert!((chi - PI / 12.0_f64.sqrt()).abs() < 1e-12);
        let chi = solid_fraction(1.0, &square0()).unwrap();
        assert!((chi - PI / 4.0).abs() < 1e-15);
        let chi = solid_fraction(2.802, &hex0()).unwrap();
        assert!((chi - 0.785).abs() < 1e-3);
    }

    #[test]
    fn closed_form_minima_values() {
        let a0_hex = 2.0 * SQRT_3;
        let (at_hex, at_30) = closed_form_minima(1, 0.0, a0_hex).unwrap();
        assert!((at_hex - 2.0 * SQRT_3 / PI).abs() < 1e-14);
        assert!(at_30.is_finite());

        let (at_hex_sq, _) = closed_form_minima(1, 0.0, 4.0).unwrap();
        assert!((at_hex_sq - (8.0 * SQRT_3 - 4.0) / (3.0 * PI)).abs() < 1e-14);
        assert!((at_hex_sq - 1.0457).abs() < 1e-4);

        // n -> infinity: both families converge to sqrt(12)/pi.
        let (a, b) = closed_form_minima(20, 0.0, a0_hex).unwrap();
        let limit = 12.0_f64.sqrt() / PI;
        assert!((a - limit).abs() < 1e-9);
        assert!((b - limit).abs() < 1e-9);

        assert_eq!(closed_form_minima(0, 0.0, a0_hex), Err(PackingError::DegenerateMinimum));
        // alpha0 = pi/6, n = 0 degenerates the pi/6 form.
        assert_eq!(
            closed_form_minima(0, FRAC_PI_6, 2.0 * SQRT_3),
            Err(PackingError::DegenerateMinimum)
        );
    }

    #[test]
    fn asymptotics_at_large_swelling() {
        let limits = asymptotic_limits(&hex0(), 1024.0).unwrap();
        assert!((limits.u_bs_limit - 12.0_f64.sqrt() / PI).abs() < 1e-12);
        assert!((limits.u_vs_limit - (limits.u_bs_limit - 1.0)).abs() < 1e-15);
        let u = breathing_bs(1024.0, &hex0()).unwrap();
        assert!((u - limits.u_bs_limit).abs() < 1e-9);
    }

    #[test]
    fn angle_is_periodic_in_log2_xi() {
        for alpha0 in [0.0, 0.2, FRAC_PI_6] {
            let s = PackingScenario::hex60(alpha0).unwrap();
            for xi in [2.5, 3.1, 5.7, 9.3] {
                let xi = xi * alpha0.cos();
                let a1 = PackingState::evaluate(&s, xi).unwrap().alpha;
                let a2 = PackingState::evaluate(&s, 2.0 * xi).unwrap().alpha;
                assert!((a1 - a2).abs() < 1e-12, "alpha0 {alpha0} xi {xi}");
            }
        }
    }

    #[test]
    fn alpha_at_unity_equals_alpha0() {
        for alpha0 in [0.0, 0.1, FRAC_PI_6, 0.9] {
            let s = PackingScenario::hex60(alpha0).unwrap();
            let state = PackingState::evaluate(&s, 1.0).unwrap();
            assert!((state.alpha - alpha0).abs() < 1e-15);
        }
    }

    #[test]
    fn area_continuous_at_first_transition() {
        let s = square0();
        let xi_t = 2.0 / SQRT_3; // alpha reaches pi/6
        let lo = PackingState::evaluate(&s, xi_t - 1e-9).unwrap().a_body_tilde;
        let hi = PackingState::evaluate(&s, xi_t + 1e-9).unwrap().a_body_tilde;
        assert!((lo - hi).abs() < 1e-7);
    }
}
