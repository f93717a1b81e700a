//! Closed-form 1S energies, binding energies and particle/antiparticle
//! ingredient ratios.

use crate::error::{Error, Result};
use crate::model::{Coupling, ModelTag};

/// Which closed form a curve samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Energy,
    Ratio,
}

/// A ground (1S) state evaluated from the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState1S {
    pub model: ModelTag,
    pub coupling: Coupling,
    pub m0: f64,
    pub energy: f64,
    pub binding: f64,
    pub ratio: f64,
    pub n: u32,
}

impl BoundState1S {
    pub fn evaluate(model: ModelTag, coupling: Coupling, m0: f64) -> Result<Self> {
        let (energy, binding) = match model {
            ModelTag::NonRelativistic => {
                let b = nonrel_binding(coupling, 1, m0)?;
                (m0 - b, b)
            }
            _ => {
                let e = energy_1s(model, coupling, m0)?;
                (e, m0 - e)
            }
        };
        Ok(BoundState1S {
            model,
            coupling,
            m0,
            energy,
            binding,
            ratio: ratio_1s(model, coupling)?,
            n: 1,
        })
    }
}

/// The auxiliary y = sqrt(1/4 - (Z alpha)^2) of the Klein-Gordon 1S level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliaryY(f64);

impl AuxiliaryY {
    pub fn new(z_alpha: f64) -> Result<Self> {
        check_bound(ModelTag::KleinGordon, z_alpha)?;
        Ok(AuxiliaryY((0.25 - z_alpha * z_alpha).max(0.0).sqrt()))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn check_mass(m0: f64) -> Result<()> {
    if !m0.is_finite() || m0 <= 0.0 {
        return Err(Error::domain(format!("rest mass must be > 0, got {m0}")));
    }
    Ok(())
}

fn check_bound(model: ModelTag, z_alpha: f64) -> Result<()> {
    if let Some(bound) = model.critical_z_alpha() {
        if z_alpha > bound {
            return Err(Error::Supercritical {
                model: model.name(),
                z_alpha,
                bound,
            });
        }
    }
    Ok(())
}

/// Nonrelativistic Coulomb binding (Z alpha)^2 m0 / (2 n^2). Unbounded in Z.
pub fn nonrel_binding(coupling: Coupling, n: u32, m0: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("principal quantum number must be >= 1"));
    }
    check_mass(m0)?;
    let za = coupling.z_alpha();
    let n = f64::from(n);
    Ok(za * za * m0 / (2.0 * n * n))
}

/// Total 1S energy of the orbiting particle (rest mass included).
pub fn energy_1s(model: ModelTag, coupling: Coupling, m0: f64) -> Result<f64> {
    check_mass(m0)?;
    let za = coupling.z_alpha();
    match model {
        ModelTag::NonRelativistic => Ok(m0 - nonrel_binding(coupling, 1, m0)?),
        ModelTag::KleinGordon => {
            let y = AuxiliaryY::new(za)?.value();
            Ok(m0 * (0.5 + y).sqrt())
        }
        ModelTag::Dirac => {
            check_bound(model, za)?;
            Ok(m0 * (1.0 - za * za).max(0.0).sqrt())
        }
        ModelTag::Rsse => Err(Error::Model(
            "the two-body model needs both masses; use the rsse module".into(),
        )),
    }
}

/// Ratio of antiparticle to particle ingredient norms in the 1S state.
///
/// The Klein-Gordon value is evaluated in the cancellation-free form
/// R = d / (4 + d), d = (s - 1)^2 (3 s + 2) / (2 y), s = sqrt(y + 1/2),
/// which is algebraically identical to 1 - 4 / [2 + s + s^3 / (2 y)].
/// At y = 0 the continuity value 1 is returned.
pub fn ratio_1s(model: ModelTag, coupling: Coupling) -> Result<f64> {
    let za = coupling.z_alpha();
    match model {
        ModelTag::NonRelativistic => Ok(0.0),
        ModelTag::KleinGordon => {
            let y = AuxiliaryY::new(za)?.value();
            if y == 0.0 {
                return Ok(1.0);
            }
            let w = y + 0.5;
            let s = w.sqrt();
            // s - 1 = (w - 1) / (s + 1) and w - 1 = -(Z alpha)^2 / w
            let s_minus_1 = -(za * za) / (w * (s + 1.0));
            let d = s_minus_1 * s_minus_1 * (3.0 * s + 2.0) / (2.0 * y);
            Ok(d / (4.0 + d))
        }
        ModelTag::Dirac => {
            check_bound(model, za)?;
            Ok(lower_upper_ratio(za))
        }
        ModelTag::Rsse => Err(Error::Model(
            "no ingredient ratio curve is defined for the two-body model".into(),
        )),
    }
}

/// (1 - sqrt(1 - x^2)) / (1 + sqrt(1 - x^2)) written without cancellation.
fn lower_upper_ratio(x: f64) -> f64 {
    let c = (1.0 - x * x).max(0.0).sqrt();
    let d = 1.0 + c;
    x * x / (d * d)
}

/// Ingredient ratio of a free particle moving at velocity `v` (units of c).
pub fn ratio_free(model: ModelTag, v: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&v) {
        return Err(Error::domain(format!("velocity must satisfy 0 <= v < 1, got {v}")));
    }
    let dirac = lower_upper_ratio(v);
    match model {
        ModelTag::Dirac => Ok(dirac),
        ModelTag::KleinGordon => Ok(dirac * dirac),
        ModelTag::NonRelativistic => Ok(0.0),
        ModelTag::Rsse => Err(Error::Model("free ratio is defined for kg and dirac only".into())),
    }
}

/// Uniform grid of `steps` points from `min` to `max`, both inclusive.
pub fn uniform_grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::Range(format!("need at least 2 steps, got {steps}")));
    }
    if !(max > min) {
        return Err(Error::Range(format!("empty range [{min}, {max}]")));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i + 1 == steps {
                max
            } else {
                min + (max - min) * (i as f64 / last)
            }
        })
        .collect())
}

/// Samples the 1S energy (in units of m0) or ratio on a uniform Z alpha grid.
pub fn sample_curve(
    model: ModelTag,
    quantity: Quantity,
    z_alpha_min: f64,
    z_alpha_max: f64,
    steps: usize,
) -> Result<Vec<(f64, f64)>> {
    let grid = uniform_grid(z_alpha_min, z_alpha_max, steps)?;
    grid.into_iter()
        .map(|za| {
            // alpha only labels the charge; the closed forms depend on Z alpha alone
            let c = Coupling::from_z_alpha(za, crate::model::ALPHA_PAPER)?;
            let value = match quantity {
                Quantity::Energy => energy_1s(model, c, 1.0)?,
                Quantity::Ratio => ratio_1s(model, c)?,
            };
            Ok((za, value))
        })
        .collect()
}
