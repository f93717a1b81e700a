//! Shared physical conventions: natural units (hbar = c = 1), the fine-structure
//! constant, model tags, couplings and two-body masses.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Fine-structure constant with the rounded denominator used for the
/// published curves and critical values.
pub const ALPHA_PAPER: f64 = 1.0 / 137.0;

/// CODATA 2018 fine-structure constant.
pub const ALPHA_CODATA: f64 = 1.0 / 137.035_999_084;

/// Proton to electron mass ratio (CODATA 2018, rounded).
pub const PROTON_ELECTRON_MASS_RATIO: f64 = 1836.152;

/// Which value of the fine-structure constant a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaMode {
    #[default]
    Paper,
    Codata,
}

impl AlphaMode {
    pub fn value(self) -> f64 {
        match self {
            AlphaMode::Paper => ALPHA_PAPER,
            AlphaMode::Codata => ALPHA_CODATA,
        }
    }
}

impl FromStr for AlphaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(AlphaMode::Paper),
            "codata" => Ok(AlphaMode::Codata),
            other => Err(Error::domain(format!("unknown alpha mode '{other}'"))),
        }
    }
}

/// The bound-state models the library can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelTag {
    NonRelativistic,
    KleinGordon,
    Dirac,
    Rsse,
}

impl ModelTag {
    pub fn name(self) -> &'static str {
        match self {
            ModelTag::NonRelativistic => "nonrel",
            ModelTag::KleinGordon => "kg",
            ModelTag::Dirac => "dirac",
            ModelTag::Rsse => "rsse",
        }
    }

    /// Largest Z*alpha for which the 1S state exists, if bounded.
    pub fn critical_z_alpha(self) -> Option<f64> {
        match self {
            ModelTag::KleinGordon => Some(0.5),
            ModelTag::Dirac => Some(1.0),
            ModelTag::NonRelativistic | ModelTag::Rsse => None,
        }
    }
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nonrel" | "nonrelativistic" | "schrodinger" => Ok(ModelTag::NonRelativistic),
            "kg" | "klein-gordon" | "kleingordon" => Ok(ModelTag::KleinGordon),
            "dirac" => Ok(ModelTag::Dirac),
            "rsse" => Ok(ModelTag::Rsse),
            other => Err(Error::Model(format!("unknown model '{other}'"))),
        }
    }
}

/// Nuclear charge number together with the coupling strength Z*alpha.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    z: f64,
    alpha: f64,
    z_alpha: f64,
}

impl Coupling {
    /// Builds a coupling from a (real-valued) charge number and alpha.
    pub fn new(z: f64, alpha: f64) -> Result<Self> {
        if !z.is_finite() || z < 0.0 {
            return Err(Error::domain(format!("charge number must be >= 0, got {z}")));
        }
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::domain(format!("alpha must be > 0, got {alpha}")));
        }
        Ok(Coupling {
            z,
            alpha,
            z_alpha: z * alpha,
        })
    }

    /// Coupling given directly as Z*alpha, with the charge recovered as z_alpha / alpha.
    pub fn from_z_alpha(z_alpha: f64, alpha: f64) -> Result<Self> {
        if !z_alpha.is_finite() || z_alpha < 0.0 {
            return Err(Error::domain(format!("Z*alpha must be >= 0, got {z_alpha}")));
        }
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::domain(format!("alpha must be > 0, got {alpha}")));
        }
        Ok(Coupling {
            z: z_alpha / alpha,
            alpha,
            z_alpha,
        })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn z_alpha(&self) -> f64 {
        self.z_alpha
    }
}

/// Shorthand for [`Coupling::new`].
pub fn make_coupling(z: f64, alpha: f64) -> Result<Coupling> {
    Coupling::new(z, alpha)
}

/// A rest mass in natural units, or the infinitely heavy (inert) nucleus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mass {
    Finite(f64),
    Infinite,
}

impl Mass {
    pub fn is_infinite(self) -> bool {
        matches!(self, Mass::Infinite)
    }
}

impl FromStr for Mass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if matches!(t.as_str(), "inf" | "infinite" | "infinity") {
            return Ok(Mass::Infinite);
        }
        let m: f64 = t
            .parse()
            .map_err(|_| Error::domain(format!("invalid mass '{s}'")))?;
        Ok(Mass::Finite(m))
    }
}

/// Constituent masses of a two-body system with derived total and reduced mass.
///
/// Particle 1 is the nucleus and may be infinitely heavy; particle 2 is the
/// orbiting particle and is always finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBodyMasses {
    m1: Mass,
    m2: f64,
}

impl TwoBodyMasses {
    pub fn new(m1: Mass, m2: f64) -> Result<Self> {
        if let Mass::Finite(m) = m1 {
            if !m.is_finite() || m <= 0.0 {
                return Err(Error::domain(format!("m1 must be > 0, got {m}")));
            }
        }
        if !m2.is_finite() || m2 <= 0.0 {
            return Err(Error::domain(format!("m2 must be > 0, got {m2}")));
        }
        Ok(TwoBodyMasses { m1, m2 })
    }

    pub fn finite(m1: f64, m2: f64) -> Result<Self> {
        Self::new(Mass::Finite(m1), m2)
    }

    /// Inert-nucleus limit: M is infinite and mu = m2 exactly.
    pub fn infinite_nucleus(m2: f64) -> Result<Self> {
        Self::new(Mass::Infinite, m2)
    }

    pub fn m1(&self) -> Mass {
        self.m1
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }

    pub fn is_inert_nucleus(&self) -> bool {
        self.m1.is_infinite()
    }

    /// Total mass M = m1 + m2 (`f64::INFINITY` for the inert nucleus).
    pub fn total(&self) -> f64 {
        match self.m1 {
            Mass::Finite(m1) => m1 + self.m2,
            Mass::Infinite => f64::INFINITY,
        }
    }

    /// Reduced mass mu = m1 m2 / (m1 + m2), or m2 for the inert nucleus.
    pub fn reduced(&self) -> f64 {
        match self.m1 {
            Mass::Finite(m1) => m1 * self.m2 / (m1 + self.m2),
            Mass::Infinite => self.m2,
        }
    }

    /// M / mu; at least 4, with equality for equal masses.
    pub fn mass_ratio(&self) -> f64 {
        self.total() / self.reduced()
    }
}

/// Shorthand for [`TwoBodyMasses::new`].
pub fn masses(m1: Mass, m2: f64) -> Result<TwoBodyMasses> {
    TwoBodyMasses::new(m1, m2)
}
