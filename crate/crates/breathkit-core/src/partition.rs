//! Volume-variation partition of a porous body.
//!
//! A porous body splits as `v_body = v_solid + v_void`, and so does any
//! variation between two states: `d_body = d_solid + d_void`. The breathing
//! coefficient is the ratio of two of the three variations; six definitions
//! exist, one per ordered pair of distinct phases. This module computes the
//! coefficients, converts between definitions, classifies the partition into
//! breathing regimes, and gates results against a volume uncertainty.

#[allow(unused_imports)]
use num_traits::Float;

use core::fmt;

/// Relative tolerance on the partition sum invariants.
pub const REL_TOL_PARTITION: f64 = 1e-12;

/// Default classification tolerance, relative to the largest delta component.
pub const DEFAULT_EPS_CLASS: f64 = 1e-9;

/// Default factor operationalising "much larger than" in the validity gate.
pub const DEFAULT_THRESHOLD_FACTOR: f64 = 10.0;

/// Errors from partition construction and classification.
#[derive(Debug, Clone, PartialEq)]
pub enum PartitionError {
    /// A volume partition violates non-negativity or the sum invariant.
    InvalidPartition { residual: f64 },
    /// A volume delta violates the sum invariant.
    InvalidDelta { residual: f64 },
    /// A component is not a finite number.
    NotFinite,
    /// Invalid uncertainty configuration.
    InvalidConfig,
    /// All three delta components are zero: no breathing occurred.
    NoBreathing,
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::InvalidPartition { residual } => write!(
                f,
                "volume partition violates v_body = v_solid + v_void (residual {residual:e}) or non-negativity"
            ),
            PartitionError::InvalidDelta { residual } => write!(
                f,
                "volume delta violates d_body = d_solid + d_void (residual {residual:e})"
            ),
            PartitionError::NotFinite => write!(f, "volume component is not finite"),
            PartitionError::InvalidConfig => {
                write!(f, "sigma must be finite and non-negative, threshold factor > 1")
            }
            PartitionError::NoBreathing => write!(f, "all delta components are zero"),
        }
    }
}

impl core::error::Error for PartitionError {}

/// One of the three phases of a porous body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Body,
    Solid,
    Void,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Body => "body",
            Phase::Solid => "solid",
            Phase::Void => "void",
        }
    }
}

/// Which ratio of volume variations to take: numerator phase over
/// denominator phase. Exactly six admissible combinations exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientDefinition {
    /// d_body / d_solid
    BodySolid,
    /// d_void / d_solid
    VoidSolid,
    /// d_void / d_body
    VoidBody,
    /// d_solid / d_body
    SolidBody,
    /// d_solid / d_void
    SolidVoid,
    /// d_body / d_void
    BodyVoid,
}

impl CoefficientDefinition {
    /// All six definitions, in the conventional order.
    pub const ALL: [CoefficientDefinition; 6] = [
        CoefficientDefinition::BodySolid,
        CoefficientDefinition::VoidSolid,
        CoefficientDefinition::VoidBody,
        CoefficientDefinition::SolidBody,
        CoefficientDefinition::SolidVoid,
        CoefficientDefinition::BodyVoid,
    ];

    pub fn numerator(self) -> Phase {
        match self {
            CoefficientDefinition::BodySolid | CoefficientDefinition::BodyVoid => Phase::Body,
            CoefficientDefinition::SolidBody | CoefficientDefinition::SolidVoid => Phase::Solid,
            CoefficientDefinition::VoidSolid | CoefficientDefinition::VoidBody => Phase::Void,
        }
    }

    pub fn denominator(self) -> Phase {
        match self {
            CoefficientDefinition::BodySolid | CoefficientDefinition::VoidSolid => Phase::Solid,
            CoefficientDefinition::VoidBody | CoefficientDefinition::SolidBody => Phase::Body,
            CoefficientDefinition::SolidVoid | CoefficientDefinition::BodyVoid => Phase::Void,
        }
    }

    /// Two-letter tag: numerator phase then denominator phase.
    pub fn as_str(self) -> &'static str {
        match self {
            CoefficientDefinition::BodySolid => "bs",
            CoefficientDefinition::VoidSolid => "vs",
            CoefficientDefinition::VoidBody => "vb",
            CoefficientDefinition::SolidBody => "sb",
            CoefficientDefinition::SolidVoid => "sv",
            CoefficientDefinition::BodyVoid => "bv",
        }
    }

    pub fn parse(tag: &str) -> Option<Self> {
        match tag {
            "bs" => Some(CoefficientDefinition::BodySolid),
            "vs" => Some(CoefficientDefinition::VoidSolid),
            "vb" => Some(CoefficientDefinition::VoidBody),
            "sb" => Some(CoefficientDefinition::SolidBody),
            "sv" => Some(CoefficientDefinition::SolidVoid),
            "bv" => Some(CoefficientDefinition::BodyVoid),
            _ => None,
        }
    }
}

impl fmt::Display for CoefficientDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Volumes of the three phases at one instant. `v_body = v_solid + v_void`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumePartition {
    pub v_body: f64,
    pub v_solid: f64,
    pub v_void: f64,
}

impl VolumePartition {
    pub fn new(v_body: f64, v_solid: f64, v_void: f64) -> Result<Self, PartitionError> {
        let p = VolumePartition { v_body, v_solid, v_void };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), PartitionError> {
        if !(self.v_body.is_finite() && self.v_solid.is_finite() && self.v_void.is_finite()) {
            return Err(PartitionError::NotFinite);
        }
        if self.v_body < 0.0 || self.v_solid < 0.0 || self.v_void < 0.0 {
            return Err(PartitionError::InvalidPartition { residual: f64::NAN });
        }
        let residual = self.v_body - (self.v_solid + self.v_void);
        let scale = self.v_body.max(self.v_solid + self.v_void);
        if residual.abs() > REL_TOL_PARTITION * scale {
            return Err(PartitionError::InvalidPartition { residual });
        }
        Ok(())
    }
}

/// Signed variation of the three phase volumes between two states.
/// `d_body = d_solid + d_void`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeDelta {
    pub d_body: f64,
    pub d_solid: f64,
    pub d_void: f64,
}

impl VolumeDelta {
    pub fn new(d_body: f64, d_solid: f64, d_void: f64) -> Result<Self, PartitionError> {
        let d = VolumeDelta { d_body, d_solid, d_void };
        d.validate()?;
        Ok(d)
    }

    /// Builds the delta from the two phase variations; the body variation is
    /// their exact sum.
    pub fn from_solid_void(d_solid: f64, d_void: f64) -> Self {
        VolumeDelta { d_body: d_solid + d_void, d_solid, d_void }
    }

    /// Builds the delta with the void variation inferred as `d_body - d_solid`.
    pub fn from_body_solid(d_body: f64, d_solid: f64) -> Self {
        VolumeDelta { d_body, d_solid, d_void: d_body - d_solid }
    }

    /// Builds the delta with the solid variation inferred as `d_body - d_void`.
    pub fn from_body_void(d_body: f64, d_void: f64) -> Self {
        VolumeDelta { d_body, d_solid: d_body - d_void, d_void }
    }

    pub fn validate(&self) -> Result<(), PartitionError> {
        if !(self.d_body.is_finite() && self.d_solid.is_finite() && self.d_void.is_finite()) {
            return Err(PartitionError::NotFinite);
        }
        let residual = self.d_body - (self.d_solid + self.d_void);
        let scale = self.d_body.abs().max(self.d_solid.abs() + self.d_void.abs());
        if residual.abs() > REL_TOL_PARTITION * scale {
            return Err(PartitionError::InvalidDelta { residual });
        }
        Ok(())
    }

    pub fn component(&self, phase: Phase) -> f64 {
        match phase {
            Phase::Body => self.d_body,
            Phase::Solid => self.d_solid,
            Phase::Void => self.d_void,
        }
    }
}

/// Volume uncertainty `sigma` and the factor `k` that stands in for
/// "much larger than": a variation is trusted when its magnitude is at
/// least `k * sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityConfig {
    pub sigma: f64,
    pub threshold_factor: f64,
}

impl ValidityConfig {
    pub fn new(sigma: f64, threshold_factor: f64) -> Result<Self, PartitionError> {
        if !sigma.is_finite() || sigma < 0.0 || !threshold_factor.is_finite() || threshold_factor <= 1.0
        {
            return Err(PartitionError::InvalidConfig);
        }
        Ok(ValidityConfig { sigma, threshold_factor })
    }

    /// Exact data: zero uncertainty, default threshold factor.
    pub fn exact() -> Self {
        ValidityConfig { sigma: 0.0, threshold_factor: DEFAULT_THRESHOLD_FACTOR }
    }
}

impl Default for ValidityConfig {
    fn default() -> Self {
        ValidityConfig::exact()
    }
}

/// How much of a coefficient can be trusted given the uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Validity {
    /// Both the value and its sign are trustworthy.
    ValueAndSign,
    /// The value (it diverges) is meaningful but its sign is not.
    ValueOnly,
    /// Neither value nor sign can be concluded.
    Invalid,
}

impl Validity {
    pub fn as_str(self) -> &'static str {
        match self {
            Validity::ValueAndSign => "value_and_sign",
            Validity::ValueOnly => "value_only",
            Validity::Invalid => "invalid",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "value_and_sign" => Some(Validity::ValueAndSign),
            "value_only" => Some(Validity::ValueOnly),
            "invalid" => Some(Validity::Invalid),
            _ => None,
        }
    }
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A computed breathing coefficient: which ratio, its value (possibly
/// infinite; NaN sentinel when invalid), and how far it can be trusted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientResult {
    pub definition: CoefficientDefinition,
    pub value: f64,
    pub validity: Validity,
}

/// Relative orientation of the three variations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Configuration {
    /// Solid variation opposes the body variation.
    OppositeSolid,
    /// Solid and void variations share the body variation's direction.
    Oriented,
    /// Void variation opposes the body variation.
    OppositeVoid,
}

impl Configuration {
    pub fn as_str(self) -> &'static str {
        match self {
            Configuration::OppositeSolid => "opposite_solid",
            Configuration::Oriented => "oriented",
            Configuration::OppositeVoid => "opposite_void",
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named limit cases of the volume-variation partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitCase {
    /// The solid does not vary: all body variation goes to the void.
    VoidBreathing,
    /// Solid and void vary by the same amount.
    BalancedBreathing,
    /// The void does not vary: body follows the solid exactly.
    SolidBreathing,
    /// The body does not vary and the solid shrinks into void.
    InternalTransferSolidDisappearance,
    /// The body does not vary and the solid grows at the void's expense.
    InternalTransferVoidDisappearance,
}

impl LimitCase {
    pub fn as_str(self) -> &'static str {
        match self {
            LimitCase::VoidBreathing => "void_breathing",
            LimitCase::BalancedBreathing => "balanced_breathing",
            LimitCase::SolidBreathing => "solid_breathing",
            LimitCase::InternalTransferSolidDisappearance => "internal_transfer_solid_disappearance",
            LimitCase::InternalTransferVoidDisappearance => "internal_transfer_void_disappearance",
        }
    }

    pub fn is_internal_transfer(self) -> bool {
        matches!(
            self,
            LimitCase::InternalTransferSolidDisappearance
                | LimitCase::InternalTransferVoidDisappearance
        )
    }
}

impl fmt::Display for LimitCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classified breathing regime: configuration plus limit case, if any.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreathingRegime {
    pub configuration: Configuration,
    pub limit_case: Option<LimitCase>,
}

/// Componentwise variation between two partition states.
pub fn delta_partition(
    before: &VolumePartition,
    after: &VolumePartition,
) -> Result<VolumeDelta, PartitionError> {
    before.validate()?;
    after.validate()?;
    VolumeDelta::new(
        after.v_body - before.v_body,
        after.v_solid - before.v_solid,
        after.v_void - before.v_void,
    )
}

/// Validity of a ratio `d1 / d2` under uncertainty `sigma`.
///
/// The sign of the ratio flips with noise on the denominator, so both value
/// and sign require `|d2| >= k*sigma`. The value alone survives as long as
/// one of the two variations stands out of the noise. With `sigma = 0` every
/// result is fully trusted.
pub fn validity_gate(d1: f64, d2: f64, cfg: &ValidityConfig) -> Validity {
    let threshold = cfg.threshold_factor * cfg.sigma;
    if d2.abs() >= threshold {
        Validity::ValueAndSign
    } else if d1.abs() >= threshold {
        Validity::ValueOnly
    } else {
        Validity::Invalid
    }
}

/// Breathing coefficient of `delta` under the given definition.
///
/// A zero denominator with nonzero numerator yields a signed infinity (sign
/// taken from the numerator); 0/0 yields a NaN sentinel flagged `Invalid`.
pub fn coefficient(
    delta: &VolumeDelta,
    def: CoefficientDefinition,
    cfg: &ValidityConfig,
) -> CoefficientResult {
    let num = delta.component(def.numerator());
    let den = delta.component(def.denominator());
    let (value, validity) = if den == 0.0 {
        if num == 0.0 {
            (f64::NAN, Validity::Invalid)
        } else {
            (num.signum() * f64::INFINITY, validity_gate(num, den, cfg))
        }
    } else {
        (num / den, validity_gate(num, den, cfg))
    };
    CoefficientResult { definition: def, value, validity }
}

/// Converts a coefficient value between definitions, symbolically from the
/// partition identity `d_body = d_solid + d_void`.
///
/// A conversion through a zero denominator yields a signed infinity; each
/// arm is written so that infinite inputs map to the correct finite limit.
pub fn convert(value: f64, from: CoefficientDefinition, to: CoefficientDefinition) -> f64 {
    use CoefficientDefinition::*;
    if from == to {
        return value;
    }
    let x = value;
    match (from, to) {
        (BodySolid, VoidSolid) => x - 1.0,
        (BodySolid, SolidBody) => 1.0 / x,
        (BodySolid, VoidBody) => 1.0 - 1.0 / x,
        (BodySolid, SolidVoid) => 1.0 / (x - 1.0),
        (BodySolid, BodyVoid) => 1.0 + 1.0 / (x - 1.0),

        (VoidSolid, BodySolid) => 1.0 + x,
        (VoidSolid, SolidBody) => 1.0 / (1.0 + x),
        (VoidSolid, VoidBody) => 1.0 - 1.0 / (1.0 + x),
        (VoidSolid, SolidVoid) => 1.0 / x,
        (VoidSolid, BodyVoid) => 1.0 + 1.0 / x,

        (SolidBody, BodySolid) => 1.0 / x,
        (SolidBody, VoidSolid) => 1.0 / x - 1.0,
        (SolidBody, VoidBody) => 1.0 - x,
        (SolidBody, SolidVoid) => -1.0 + 1.0 / (1.0 - x),
        (SolidBody, BodyVoid) => 1.0 / (1.0 - x),

        (VoidBody, BodySolid) => 1.0 / (1.0 - x),
        (VoidBody, VoidSolid) => -1.0 + 1.0 / (1.0 - x),
        (VoidBody, SolidBody) => 1.0 - x,
        (VoidBody, SolidVoid) => 1.0 / x - 1.0,
        (VoidBody, BodyVoid) => 1.0 / x,

        (SolidVoid, BodySolid) => 1.0 + 1.0 / x,
        (SolidVoid, VoidSolid) => 1.0 / x,
        (SolidVoid, SolidBody) => 1.0 - 1.0 / (1.0 + x),
        (SolidVoid, VoidBody) => 1.0 / (1.0 + x),
        (SolidVoid, BodyVoid) => 1.0 + x,

        (BodyVoid, BodySolid) => 1.0 + 1.0 / (x - 1.0),
        (BodyVoid, VoidSolid) => 1.0 / (x - 1.0),
        (BodyVoid, SolidBody) => 1.0 - 1.0 / x,
        (BodyVoid, VoidBody) => 1.0 / x,
        (BodyVoid, SolidVoid) => x - 1.0,

        _ => unreachable!("from == to handled above"),
    }
}

fn fuzzy_sign(x: f64, tol: f64) -> i8 {
    if x.abs() <= tol {
        0
    } else if x > 0.0 {
        1
    } else {
        -1
    }
}

/// Classifies a volume-variation partition into a configuration and an
/// optional limit case.
///
/// Components within `eps_class * max(|d_body|, |d_solid|, |d_void|)` of
/// zero count as zero. A delta lying on the boundary of the oriented sector
/// (one phase variation zero) classifies as `Oriented`; a zero body
/// variation classifies as opposite-void or opposite-solid according to
/// which phase is disappearing.
pub fn classify(delta: &VolumeDelta, eps_class: f64) -> Result<BreathingRegime, PartitionError> {
    delta.validate()?;
    if !eps_class.is_finite() || !(0.0..1.0).contains(&eps_class) {
        return Err(PartitionError::InvalidConfig);
    }
    let scale = delta
        .d_body
        .abs()
        .max(delta.d_solid.abs())
        .max(delta.d_void.abs());
    if scale == 0.0 {
        return Err(PartitionError::NoBreathing);
    }
    let tol = eps_class * scale;
    let sb = fuzzy_sign(delta.d_body, tol);
    let ss = fuzzy_sign(delta.d_solid, tol);
    let sv = fuzzy_sign(delta.d_void, tol);

    let limit_case = if ss == 0 {
        Some(LimitCase::VoidBreathing)
    } else if sv == 0 {
        Some(LimitCase::SolidBreathing)
    } else if (delta.d_solid - delta.d_void).abs() <= tol {
        Some(LimitCase::BalancedBreathing)
    } else if sb == 0 {
        Some(if ss > 0 {
            LimitCase::InternalTransferVoidDisappearance
        } else {
            LimitCase::InternalTransferSolidDisappearance
        })
    } else {
        None
    };

    // ss == sv == 0 is excluded above, so this covers both the strict
    // oriented sector and its boundaries (one phase variation zero).
    let configuration = if ss == sv || ss == 0 || sv == 0 {
        Configuration::Oriented
    } else if sb == 0 {
        if ss > 0 {
            Configuration::OppositeVoid
        } else {
            Configuration::OppositeSolid
        }
    } else if ss != sb {
        Configuration::OppositeSolid
    } else {
        Configuration::OppositeVoid
    };

    Ok(BreathingRegime { configuration, limit_case })
}
