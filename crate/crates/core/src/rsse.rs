//! Two-body relativistic stationary Schrödinger equation (RSSE).
//!
//! After separating the centre of mass, the relative motion obeys an ordinary
//! reduced-mass Schrödinger equation with eigenvalue eps, and the total energy
//! follows from eps = (E^2 - M^2 - P^2) / (2M). Binding therefore saturates at
//! B = M (E = 0) when eps reaches -M/2.

use crate::error::{Error, Result};
use crate::model::{Coupling, TwoBodyMasses};

/// Mass ratio above which the two-body equation is flagged as a poor model of
/// a real atom (heavy nucleus).
pub const APPLICABILITY_MASS_RATIO: f64 = 100.0;

/// A stationary RSSE level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsseState {
    pub masses: TwoBodyMasses,
    pub coupling: Coupling,
    pub n: u32,
    pub epsilon: f64,
    pub binding: f64,
    pub total_energy: f64,
    pub momentum: f64,
}

impl RsseState {
    pub fn evaluate(masses: TwoBodyMasses, coupling: Coupling, n: u32, momentum: f64) -> Result<Self> {
        let epsilon = epsilon_1s(masses, coupling, n)?;
        let m = masses.total();
        let (binding, total_energy) = if m.is_infinite() {
            (-epsilon, f64::INFINITY)
        } else {
            (binding_energy(m, epsilon)?, total_energy(m, epsilon, momentum)?)
        };
        Ok(RsseState {
            masses,
            coupling,
            n,
            epsilon,
            binding,
            total_energy,
            momentum,
        })
    }
}

/// Coulomb eigenvalue of the reduced-mass operator, -mu (Z alpha)^2 / (2 n^2).
pub fn epsilon_1s(masses: TwoBodyMasses, coupling: Coupling, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("principal quantum number must be >= 1"));
    }
    let za = coupling.z_alpha();
    let n = f64::from(n);
    Ok(-masses.reduced() * za * za / (2.0 * n * n))
}

/// B = M [1 - sqrt(1 + 2 eps / M)], evaluated as -2 eps / (1 + sqrt(1 + 2 eps / M)).
///
/// An infinite `total_mass` returns the nonrelativistic limit -eps.
pub fn binding_energy(total_mass: f64, epsilon: f64) -> Result<f64> {
    check_total(total_mass)?;
    if total_mass.is_infinite() {
        return Ok(-epsilon);
    }
    // eps computed from Z_c can land an ulp or two under the bound
    let floor = -0.5 * total_mass;
    let epsilon = if epsilon < floor && epsilon >= floor * (1.0 + 8.0 * f64::EPSILON) {
        floor
    } else {
        epsilon
    };
    if epsilon < floor {
        return Err(Error::domain(format!(
            "eps = {epsilon} is below the RSSE lower bound -M/2 = {}",
            -0.5 * total_mass
        )));
    }
    if epsilon == -0.5 * total_mass {
        return Ok(total_mass);
    }
    let s = (1.0 + 2.0 * epsilon / total_mass).sqrt();
    Ok(-2.0 * epsilon / (1.0 + s))
}

/// E = sqrt(M^2 + P^2 + 2 M eps).
pub fn total_energy(total_mass: f64, epsilon: f64, momentum: f64) -> Result<f64> {
    check_total(total_mass)?;
    if total_mass.is_infinite() {
        return Err(Error::domain("total energy diverges for an infinitely heavy nucleus"));
    }
    let radicand = total_mass * total_mass + momentum * momentum + 2.0 * total_mass * epsilon;
    if radicand < 0.0 {
        return Err(Error::domain(format!(
            "M^2 + P^2 + 2 M eps = {radicand} is negative"
        )));
    }
    Ok(radicand.sqrt())
}

fn check_total(m: f64) -> Result<()> {
    if m.is_nan() || m <= 0.0 {
        return Err(Error::domain(format!("total mass must be > 0, got {m}")));
    }
    Ok(())
}

/// Critical charge sqrt(M / mu) / alpha at which the ground state reaches E = 0.
pub fn critical_charge(masses: TwoBodyMasses, alpha: f64) -> Result<f64> {
    if masses.is_inert_nucleus() {
        return Err(Error::Unbounded);
    }
    if !(alpha > 0.0) {
        return Err(Error::domain(format!("alpha must be > 0, got {alpha}")));
    }
    Ok(masses.mass_ratio().sqrt() / alpha)
}

/// Ground-state binding energy as a function of the (real) charge number.
///
/// With r = Z / Z_c the binding is B = M r^2 / (1 + sqrt(1 - r^2)), which is
/// exactly M at Z = Z_c. Going through eps instead puts an ulp-sized error
/// under the square root at the branch point.
pub fn binding_for_charge(masses: TwoBodyMasses, z: f64, alpha: f64) -> Result<f64> {
    let c = Coupling::new(z, alpha)?;
    if masses.is_inert_nucleus() {
        return binding_energy(f64::INFINITY, epsilon_1s(masses, c, 1)?);
    }
    let r = z / critical_charge(masses, alpha)?;
    if r > 1.0 {
        return Err(Error::domain(format!(
            "Z = {z} exceeds the critical charge; eps is below the RSSE lower bound"
        )));
    }
    let s = ((1.0 - r) * (1.0 + r)).sqrt();
    Ok(masses.total() * r * r / (1.0 + s))
}

/// Charge number whose ground state binds with energy `b_target`.
///
/// For finite masses this bisects the monotone map Z -> B(Z) on [0, Z_c]; for
/// the inert nucleus it uses B = mu (Z alpha)^2 / 2 directly.
pub fn charge_for_binding(b_target: f64, masses: TwoBodyMasses, alpha: f64) -> Result<f64> {
    if !(b_target >= 0.0) || !b_target.is_finite() {
        return Err(Error::domain(format!("binding target must be >= 0, got {b_target}")));
    }
    if !(alpha > 0.0) {
        return Err(Error::domain(format!("alpha must be > 0, got {alpha}")));
    }
    let mu = masses.reduced();
    if masses.is_inert_nucleus() {
        return Ok((2.0 * b_target / mu).sqrt() / alpha);
    }
    let m = masses.total();
    if b_target > m {
        return Err(Error::domain(format!(
            "binding {b_target} exceeds the total mass {m}; unreachable below Z_c"
        )));
    }
    if b_target == 0.0 {
        return Ok(0.0);
    }
    let z_c = critical_charge(masses, alpha)?;
    let (mut lo, mut hi) = (0.0, z_c);
    while hi - lo > 1e-10 * z_c * 1e-2 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if binding_for_charge(masses, mid, alpha)? < b_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// (phi - chi) / (phi + chi) = E / M for a stationary state; tends to 0
/// (chi -> phi) as the total energy approaches its lower bound.
pub fn ingredient_balance(total_mass: f64, total_energy: f64) -> Result<f64> {
    check_total(total_mass)?;
    if !total_mass.is_finite() {
        return Err(Error::domain("undefined for an infinitely heavy nucleus"));
    }
    Ok(total_energy / total_mass)
}

/// Advisory text when the two-body model is applied far from equal masses.
pub fn applicability_advisory(masses: TwoBodyMasses) -> Option<String> {
    let ratio = masses.mass_ratio();
    (ratio > APPLICABILITY_MASS_RATIO).then(|| {
        format!(
            "advisory: M/mu = {ratio:.6} > {APPLICABILITY_MASS_RATIO}; the two-body equation is \
             intended for comparable masses and may not describe a heavy-nucleus atom"
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Mass, ALPHA_PAPER, PROTON_ELECTRON_MASS_RATIO};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn pair(m1: f64, m2: f64) -> TwoBodyMasses {
        TwoBodyMasses::finite(m1, m2).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        // mu = 1 via an inert nucleus
        let inert = TwoBodyMasses::infinite_nucleus(1.0).unwrap();
        let c = Coupling::from_z_alpha(0.1, ALPHA_PAPER).unwrap();
        assert_abs_diff_eq!(epsilon_1s(inert, c, 1).unwrap(), -0.005, epsilon = 1e-17);
        let half = pair(1.0, 1.0);
        let c = Coupling::from_z_alpha(0.2, ALPHA_PAPER).unwrap();
        assert_abs_diff_eq!(epsilon_1s(half, c, 2).unwrap(), -0.0025, epsilon = 1e-17);
        let c = Coupling::from_z_alpha(0.0, ALPHA_PAPER).unwrap();
        assert_eq!(epsilon_1s(half, c, 1).unwrap(), 0.0);
        assert!(epsilon_1s(half, c, 0).is_err());
    }

    #[test]
    fn epsilon_matches_shooting() {
        use crate::radial::solve_schrodinger_1s;
        let m = pair(3.0, 1.0);
        let c = Coupling::from_z_alpha(0.15, ALPHA_PAPER).unwrap();
        let shot = solve_schrodinger_1s(m.reduced(), c).unwrap().eigenvalue;
        assert_abs_diff_eq!(epsilon_1s(m, c, 1).unwrap(), shot, epsilon = 1e-8);
    }

    #[test]
    fn binding_examples() {
        assert_eq!(binding_energy(1000.0, 0.0).unwrap(), 0.0);
        assert_eq!(binding_energy(2.0, -1.0).unwrap(), 2.0);
        // 1000 (1 - sqrt(0.998))
        assert_abs_diff_eq!(binding_energy(1000.0, -1.0).unwrap(), 1.000_500_500_6, epsilon = 1e-9);
        assert!(binding_energy(2.0, -1.000_001).is_err());
        assert!(binding_energy(0.0, -1.0).is_err());
        assert_eq!(binding_energy(f64::INFINITY, -0.3).unwrap(), 0.3);
    }

    #[test]
    fn total_energy_examples() {
        assert_eq!(total_energy(5.0, 0.0, 0.0).unwrap(), 5.0);
        assert_eq!(total_energy(2.0, -1.0, 0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(total_energy(2.0, -1.0, 1.5).unwrap(), 1.5, epsilon = 1e-15);
        assert!(total_energy(2.0, -1.5, 0.0).is_err());
    }

    #[test]
    fn critical_examples() {
        assert_relative_eq!(critical_charge(pair(1.0, 1.0), ALPHA_PAPER).unwrap(), 274.0, max_relative = 1e-12);
        // sqrt(16/3) * 137
        assert_relative_eq!(critical_charge(pair(3.0, 1.0), ALPHA_PAPER).unwrap(), 316.387_947_5, max_relative = 1e-9);
        let h = critical_charge(pair(PROTON_ELECTRON_MASS_RATIO, 1.0), ALPHA_PAPER).unwrap();
        assert_abs_diff_eq!(h, 5_873.694_332, epsilon = 1e-5);
        let inert = TwoBodyMasses::new(Mass::Infinite, 1.0).unwrap();
        assert_eq!(critical_charge(inert, ALPHA_PAPER), Err(Error::Unbounded));
    }

    #[test]
    fn threshold_charges_for_inert_nucleus() {
        let inert = TwoBodyMasses::infinite_nucleus(1.0).unwrap();
        let z1 = charge_for_binding(1.0, inert, ALPHA_PAPER).unwrap();
        let z2 = charge_for_binding(2.0, inert, ALPHA_PAPER).unwrap();
        assert_relative_eq!(z1, 2f64.sqrt() * 137.0, max_relative = 1e-12);
        assert_relative_eq!(z2, 274.0, max_relative = 1e-12);
        assert_eq!(charge_for_binding(0.0, inert, ALPHA_PAPER).unwrap(), 0.0);
    }

    #[test]
    fn charge_for_binding_matches_inversion() {
        let m = pair(5.0, 1.0);
        let (mt, mu) = (m.total(), m.reduced());
        for b in [1e-4, 0.1, 1.0, 2.0, 5.9] {
            let z = charge_for_binding(b, m, ALPHA_PAPER).unwrap();
            let s = 1.0 - b / mt;
            let za = (mt * (1.0 - s * s) / mu).sqrt();
            assert_relative_eq!(z, za / ALPHA_PAPER, max_relative = 1e-9);
        }
        assert!(charge_for_binding(6.5, m, ALPHA_PAPER).is_err());
        assert_relative_eq!(
            charge_for_binding(6.0, m, ALPHA_PAPER).unwrap(),
            critical_charge(m, ALPHA_PAPER).unwrap(),
            max_relative = 1e-9
        );
    }

    #[test]
    fn smooth_through_threshold_bindings() {
        // nucleus much heavier than the orbiting particle, finite
        let m = pair(50.0, 1.0);
        for target in [1.0, 2.0] {
            let z = charge_for_binding(target, m, ALPHA_PAPER).unwrap();
            let h = 1e-3 * z;
            let left = (binding_for_charge(m, z, ALPHA_PAPER).unwrap()
                - binding_for_charge(m, z - h, ALPHA_PAPER).unwrap())
                / h;
            let right = (binding_for_charge(m, z + h, ALPHA_PAPER).unwrap()
                - binding_for_charge(m, z, ALPHA_PAPER).unwrap())
                / h;
            assert!(left.is_finite() && right.is_finite() && left > 0.0);
            assert!((right - left).abs() / left < 1e-2, "kink at B = {target}");
        }
    }

    #[test]
    fn balance_vanishes_at_lower_bound() {
        assert_eq!(ingredient_balance(2.0, 0.0).unwrap(), 0.0);
        assert_eq!(ingredient_balance(2.0, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn advisory_only_for_lopsided_masses() {
        assert!(applicability_advisory(pair(1.0, 1.0)).is_none());
        assert!(applicability_advisory(pair(PROTON_ELECTRON_MASS_RATIO, 1.0)).is_some());
    }

    #[test]
    fn state_evaluation() {
        let m = pair(1.0, 1.0);
        let c = Coupling::new(274.0, ALPHA_PAPER).unwrap();
        let s = RsseState::evaluate(m, c, 1, 0.0).unwrap();
        assert_abs_diff_eq!(s.total_energy, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(s.binding, 2.0, epsilon = 1e-12);
        let inert = TwoBodyMasses::infinite_nucleus(1.0).unwrap();
        let s = RsseState::evaluate(inert, Coupling::new(137.0, ALPHA_PAPER).unwrap(), 1, 0.0).unwrap();
        assert_abs_diff_eq!(s.binding, 0.5, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn energy_plus_binding_is_total(m in 1e-3f64..1e4, f in 0.0f64..=1.0) {
            let eps = -0.5 * m * f;
            let e = total_energy(m, eps, 0.0).unwrap();
            let b = binding_energy(m, eps).unwrap();
            prop_assert!((e + b - m).abs() <= 1e-12 * m);
            prop_assert!((0.0..=m).contains(&b));
        }

        #[test]
        fn weak_binding_expansion(m in 1.0f64..1e4, f in 1e-8f64..=0.1) {
            let eps = -f * m;
            let b = binding_energy(m, eps).unwrap();
            // exact: B + eps = 2 eps^2 / (M (1 + s)^2), s = sqrt(1 + 2 eps / M)
            let s = (1.0 + 2.0 * eps / m).sqrt();
            let exact = 2.0 * eps * eps / (m * (1.0 + s) * (1.0 + s));
            let slack = 4.0 * f64::EPSILON * eps.abs();
            prop_assert!((b + eps - exact).abs() <= slack);
            // the series is eps^2/2M (1 + f + 5 f^2 / 4 + ...), so the f^2 term is kept
            let bound = eps * eps / (2.0 * m) * (1.0 + f + 2.0 * f * f);
            prop_assert!((b + eps).abs() <= bound + slack);
            prop_assert!((b + eps).abs() >= eps * eps / (2.0 * m) * (1.0 + f) - slack);
        }

        #[test]
        fn critical_charge_zeroes_total_energy(m1 in 0.01f64..1e4, m2 in 0.01f64..1e4) {
            let m = pair(m1, m2);
            let zc = critical_charge(m, ALPHA_PAPER).unwrap();
            prop_assert!(zc >= 2.0 / ALPHA_PAPER * (1.0 - 1e-12));
            let b = binding_for_charge(m, zc, ALPHA_PAPER).unwrap();
            prop_assert!((b - m.total()).abs() <= 1e-9 * m.total());
            // through eps the branch point turns ulps into ~sqrt(ulp)
            let c = Coupling::new(zc, ALPHA_PAPER).unwrap();
            let via_eps = binding_energy(m.total(), epsilon_1s(m, c, 1).unwrap()).unwrap();
            prop_assert!((via_eps - m.total()).abs() <= 1e-7 * m.total());
        }

        #[test]
        fn binding_increases_with_charge(z1 in 0.0f64..270.0, dz in 0.01f64..4.0) {
            let m = pair(1.0, 1.0);
            let b1 = binding_for_charge(m, z1, ALPHA_PAPER).unwrap();
            let b2 = binding_for_charge(m, (z1 + dz).min(274.0), ALPHA_PAPER).unwrap();
            prop_assert!(b2 > b1);
        }
    }
}
