//! Free Klein-Gordon and Dirac wave packets split into particle (phi) and
//! antiparticle (chi) ingredients.
//!
//! A packet is a Gaussian superposition of positive-energy plane waves. It is
//! defined in its rest frame with momentum amplitude
//! `g(k') = (sigma/pi)^(1/4) exp(-k'^2 / 2 sigma) / sqrt(2 pi sigma)`, so that
//! at t = 0 the rest-frame field is `(sigma/pi)^(1/4) exp(-sigma z^2 / 2)`,
//! and is boosted to velocity `v` by mapping every mode onto
//! `k = gamma (k' + v w')`, `w = gamma (w' + v k')`. Mode phases `kz - wt` are
//! Lorentz invariant, so the lab-frame scalar field is the rest-frame field
//! at the boosted coordinates: the packet contracts by 1/gamma and its
//! centre moves at `v`.
//!
//! Fields are evaluated by trapezoidal quadrature over `k'`. Each output point
//! is an independent, fixed-order sum, so results do not depend on how the
//! points are scheduled across threads.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::ModelTag;

/// Largest truncated momentum-space tail accepted by the quadrature.
pub const MAX_TAIL_MASS: f64 = 1e-10;

/// Profiles must decay to this fraction of their peak at the grid edges.
pub const EDGE_FRACTION: f64 = 1e-8;

/// Parameters of a free packet, in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketSpec {
    /// Momentum-space variance parameter (mass squared).
    pub sigma: f64,
    /// Boost velocity, |v| < 1.
    pub v: f64,
    pub m0: f64,
    /// Lab-frame evaluation time.
    pub t: f64,
}

impl PacketSpec {
    pub fn new(sigma: f64, v: f64, m0: f64, t: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::domain(format!("sigma must be > 0, got {sigma}")));
        }
        if !(v.abs() < 1.0) {
            return Err(Error::domain(format!("velocity must satisfy |v| < 1, got {v}")));
        }
        if !(m0 > 0.0 && m0.is_finite()) {
            return Err(Error::domain(format!("rest mass must be > 0, got {m0}")));
        }
        if !t.is_finite() {
            return Err(Error::domain("time must be finite"));
        }
        Ok(PacketSpec { sigma, v, m0, t })
    }

    /// sigma given in units of m0^2.
    pub fn relative(sigma_rel: f64, v: f64, m0: f64, t: f64) -> Result<Self> {
        Self::new(sigma_rel * m0 * m0, v, m0, t)
    }

    pub fn gamma(&self) -> f64 {
        1.0 / ((1.0 - self.v) * (1.0 + self.v)).sqrt()
    }

    /// Central lab momentum gamma m0 v.
    pub fn k0(&self) -> f64 {
        self.gamma() * self.m0 * self.v
    }

    /// sqrt(sigma) <= m0 / 20.
    pub fn is_narrow(&self) -> bool {
        self.sigma.sqrt() <= self.m0 / 20.0
    }

    /// Standard deviation of the lab-frame density in z, spreading included.
    pub fn density_std(&self) -> f64 {
        let rest = 1.0 / (2.0 * self.sigma).sqrt();
        let spread = 1.0 + self.sigma * self.t.abs() / self.m0;
        rest * spread / self.gamma()
    }
}

/// Quadrature settings for mode synthesis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeOptions {
    pub nodes: usize,
    /// Half-width of the k' window in units of sqrt(sigma).
    pub half_width: f64,
}

impl Default for ModeOptions {
    fn default() -> Self {
        ModeOptions {
            nodes: 1024,
            half_width: 8.0,
        }
    }
}

impl ModeOptions {
    /// Upper bound on the probability mass outside the window
    /// (erfc(x) <= exp(-x^2) / (x sqrt(pi))).
    pub fn tail_mass(&self) -> f64 {
        let x = self.half_width;
        (-x * x).exp() / (x * PI.sqrt())
    }
}

/// Particle/antiparticle amplitudes of a unit plane wave exp(i(kz - wt)).
///
/// From the Feshbach-Villars split at V = 0 with d/dt -> -i w:
/// `phi = (1 + w/m0)/2`, `chi = (1 - w/m0)/2`.
pub fn plane_wave_split(k: f64, m0: f64) -> (Complex64, Complex64) {
    let w = k.hypot(m0) / m0;
    (Complex64::new(0.5 * (1.0 + w), 0.0), Complex64::new(0.5 * (1.0 - w), 0.0))
}

#[derive(Debug, Clone, Copy)]
struct Mode {
    k: f64,
    omega: f64,
    /// quadrature weight times momentum amplitude times ingredient amplitude
    phi: f64,
    chi: f64,
}

fn modes(model: ModelTag, spec: &PacketSpec, opts: &ModeOptions) -> Result<Vec<Mode>> {
    if opts.nodes < 512 {
        return Err(Error::domain(format!("need at least 512 quadrature nodes, got {}", opts.nodes)));
    }
    let tail = opts.tail_mass();
    if tail > MAX_TAIL_MASS {
        return Err(Error::Convergence {
            iterations: opts.nodes,
            residual: tail,
        });
    }
    let PacketSpec { sigma, v, m0, .. } = *spec;
    let gamma = spec.gamma();
    let root = sigma.sqrt();
    let span = opts.half_width * root;
    let dk = 2.0 * span / (opts.nodes - 1) as f64;
    let norm = (sigma / PI).powf(0.25) / (2.0 * PI * sigma).sqrt();
    (0..opts.nodes)
        .map(|i| {
            let kp = -span + dk * i as f64;
            let wp = kp.hypot(m0);
            let k = gamma * (kp + v * wp);
            let omega = k.hypot(m0);
            let end = if i == 0 || i + 1 == opts.nodes { 0.5 } else { 1.0 };
            let g = end * dk * norm * (-kp * kp / (2.0 * sigma)).exp();
            let (phi, chi) = match model {
                ModelTag::KleinGordon => {
                    let (a, b) = plane_wave_split(k, m0);
                    (g * a.re, g * b.re)
                }
                ModelTag::Dirac => {
                    // positive-energy spinor, spin up along the boost axis,
                    // rest-frame upper component normalised to g(k')
                    let s = g / (wp + m0).sqrt();
                    let upper = (omega + m0).sqrt();
                    (s * upper, s * k / upper)
                }
                other => {
                    return Err(Error::Model(format!("packets are built for kg and dirac, not {other}")))
                }
            };
            Ok(Mode { k, omega, phi, chi })
        })
        .collect()
}

/// Complex ingredient fields and their exact z-derivatives on a lab-frame grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PacketFields {
    pub model: ModelTag,
    pub m0: f64,
    pub t: f64,
    pub z: Vec<f64>,
    pub phi: Vec<Complex64>,
    pub chi: Vec<Complex64>,
    /// Exact gradients from the mode sum; `None` means finite differences.
    pub dphi: Option<Vec<Complex64>>,
    pub dchi: Option<Vec<Complex64>>,
}

/// Evaluates phi, chi and their gradients at lab positions `z`, time `spec.t`.
pub fn synthesize_fields(
    model: ModelTag,
    spec: &PacketSpec,
    z: &[f64],
    opts: &ModeOptions,
) -> Result<PacketFields> {
    let modes = modes(model, spec, opts)?;
    let t = spec.t;
    let samples: Vec<[Complex64; 4]> = z
        .par_iter()
        .map(|&zi| {
            let mut acc = [Complex64::new(0.0, 0.0); 4];
            for m in &modes {
                let (s, c) = (m.k * zi - m.omega * t).sin_cos();
                let e = Complex64::new(c, s);
                let ik = Complex64::new(0.0, m.k);
                acc[0] += e * m.phi;
                acc[1] += e * m.chi;
                acc[2] += ik * e * m.phi;
                acc[3] += ik * e * m.chi;
            }
            acc
        })
        .collect();
    Ok(PacketFields {
        model,
        m0: spec.m0,
        t,
        z: z.to_vec(),
        phi: samples.iter().map(|a| a[0]).collect(),
        chi: samples.iter().map(|a| a[1]).collect(),
        dphi: Some(samples.iter().map(|a| a[2]).collect()),
        dchi: Some(samples.iter().map(|a| a[3]).collect()),
    })
}

/// Fourth-order differences on a uniform grid: central inside, one-sided
/// five-point stencils on the two outermost samples at each end.
fn gradient(f: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = f.len();
    let d = 12.0 * h;
    (0..n)
        .map(|i| {
            if i >= 2 && i + 2 < n {
                (f[i - 2] - f[i - 1] * 8.0 + f[i + 1] * 8.0 - f[i + 2]) / d
            } else if i == 0 {
                (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) / d
            } else if i == 1 {
                (f[0] * -3.0 - f[1] * 10.0 + f[2] * 18.0 - f[3] * 6.0 + f[4]) / d
            } else if i + 1 == n {
                (f[n - 1] * 25.0 - f[n - 2] * 48.0 + f[n - 3] * 36.0 - f[n - 4] * 16.0 + f[n - 5] * 3.0) / d
            } else {
                (f[n - 1] * 3.0 + f[n - 2] * 10.0 - f[n - 3] * 18.0 + f[n - 4] * 6.0 - f[n - 5]) / d
            }
        })
        .collect()
}

/// Largest local wavenumber of `f`, from phase increments between neighbours.
fn local_wavenumber(f: &[Complex64], h: f64) -> f64 {
    let peak = f.iter().fold(0.0f64, |a, v| a.max(v.norm()));
    f.windows(2)
        .filter(|w| w[0].norm() > 1e-6 * peak && w[1].norm() > 1e-6 * peak)
        .map(|w| (w[1] * w[0].conj()).arg().abs() / h)
        .fold(0.0, f64::max)
}

/// Density and current of sampled ingredient fields.
///
/// Klein-Gordon: `rho = |phi|^2 - |chi|^2` and
/// `j = (i / 2 m0) [psi d(psi*) - psi* d(psi)]` with `psi = phi + chi`, which
/// expands to the four phi/chi bracket terms; the factor `i` makes the current
/// real and satisfies d(rho)/dt + dj/dz = 0. Dirac: `rho = |phi|^2 + |chi|^2`
/// and the current is not computed (empty).
///
/// Without exact gradients the fields must be on a uniform grid with spacing
/// at most 1 / (20 k), k the largest local wavenumber.
pub fn densities(fields: &PacketFields) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = fields.z.len();
    if n < 5 || fields.phi.len() != n || fields.chi.len() != n {
        return Err(Error::Grid("need at least 5 matching samples".into()));
    }
    match fields.model {
        ModelTag::Dirac => {
            let rho = fields
                .phi
                .iter()
                .zip(&fields.chi)
                .map(|(p, c)| p.norm_sqr() + c.norm_sqr())
                .collect();
            Ok((rho, Vec::new()))
        }
        ModelTag::KleinGordon => {
            let rho: Vec<f64> = fields
                .phi
                .iter()
                .zip(&fields.chi)
                .map(|(p, c)| p.norm_sqr() - c.norm_sqr())
                .collect();
            let psi: Vec<Complex64> = fields.phi.iter().zip(&fields.chi).map(|(p, c)| p + c).collect();
            let dpsi: Vec<Complex64> = match (&fields.dphi, &fields.dchi) {
                (Some(dp), Some(dc)) => dp.iter().zip(dc).map(|(a, b)| a + b).collect(),
                _ => {
                    let h = (fields.z[n - 1] - fields.z[0]) / (n - 1) as f64;
                    let uniform = fields
                        .z
                        .windows(2)
                        .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs());
                    if !uniform || !(h > 0.0) {
                        return Err(Error::Grid("finite differences need a uniform increasing grid".into()));
                    }
                    let k = local_wavenumber(&psi, h);
                    if h * k > 1.0 / 20.0 {
                        return Err(Error::Grid(format!(
                            "spacing {h} exceeds 1/(20 k) for local wavenumber {k}"
                        )));
                    }
                    gradient(&psi, h)
                }
            };
            let scale = 0.5 / fields.m0;
            let j = psi
                .iter()
                .zip(&dpsi)
                .map(|(p, d)| {
                    // i (p d* - p* d) = 2 Im(p* d)
                    scale * 2.0 * (p.conj() * d).im
                })
                .collect();
            Ok((rho, j))
        }
        other => Err(Error::Model(format!("no packet densities for {other}"))),
    }
}

/// Sampled packet in the co-moving coordinate xi = m0 (z - v t).
#[derive(Debug, Clone, PartialEq)]
pub struct PacketProfile {
    pub model: ModelTag,
    pub spec: PacketSpec,
    pub xi: Vec<f64>,
    pub phi_sq: Vec<f64>,
    pub chi_sq: Vec<f64>,
    pub rho: Vec<f64>,
    /// Klein-Gordon current; empty for Dirac.
    pub j: Vec<f64>,
    /// Integral of rho over xi before renormalisation to 1.
    pub raw_norm: f64,
    /// False when sqrt(sigma) > m0/20 and the closed forms are only indicative.
    pub narrow: bool,
}

impl PacketProfile {
    pub fn peak_rho(&self) -> f64 {
        self.rho.iter().copied().fold(f64::MIN, f64::max)
    }

    /// Full width at half maximum of rho, in xi units, with linear
    /// interpolation of the half-maximum crossings.
    pub fn fwhm(&self) -> f64 {
        let (imax, peak) = self
            .rho
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |a, (i, &r)| if r > a.1 { (i, r) } else { a });
        let half = 0.5 * peak;
        let cross = |i: usize, k: usize| {
            let (x0, x1, r0, r1) = (self.xi[i], self.xi[k], self.rho[i], self.rho[k]);
            x0 + (half - r0) * (x1 - x0) / (r1 - r0)
        };
        let mut left = self.xi[0];
        for i in (0..imax).rev() {
            if self.rho[i] < half {
                left = cross(i, i + 1);
                break;
            }
        }
        let mut right = self.xi[self.xi.len() - 1];
        for i in imax + 1..self.xi.len() {
            if self.rho[i] < half {
                right = cross(i - 1, i);
                break;
            }
        }
        right - left
    }

    /// min over the grid of phi_sq - chi_sq.
    pub fn min_invariant(&self) -> f64 {
        self.phi_sq
            .iter()
            .zip(&self.chi_sq)
            .map(|(p, c)| p - c)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Uniform xi grid spanning +-`half_width_std` standard deviations of rho.
pub fn default_xi_grid(spec: &PacketSpec, points: usize, half_width_std: f64) -> Result<Vec<f64>> {
    let extent = half_width_std * spec.m0 * spec.density_std();
    crate::spectra::uniform_grid(-extent, extent, points)
}

fn trapezoid(x: &[f64], f: &[f64]) -> f64 {
    x.windows(2)
        .zip(f.windows(2))
        .map(|(x, f)| 0.5 * (x[1] - x[0]) * (f[0] + f[1]))
        .sum()
}

fn build_packet(
    model: ModelTag,
    spec: &PacketSpec,
    xi: &[f64],
    opts: &ModeOptions,
) -> Result<PacketProfile> {
    if xi.len() < 5 || !xi.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::Grid("xi grid must be strictly increasing with >= 5 points".into()));
    }
    let z: Vec<f64> = xi.iter().map(|x| x / spec.m0 + spec.v * spec.t).collect();
    let fields = synthesize_fields(model, spec, &z, opts)?;
    let (rho, j) = densities(&fields)?;
    let raw_norm = trapezoid(xi, &rho);
    if !(raw_norm > 0.0) {
        return Err(Error::Grid("packet norm vanishes on this grid".into()));
    }
    let s = 1.0 / raw_norm;
    // j is per unit z; dividing by m0 puts it on the same per-xi footing as rho
    let js = s / spec.m0;
    Ok(PacketProfile {
        model,
        spec: *spec,
        xi: xi.to_vec(),
        phi_sq: fields.phi.iter().map(|p| p.norm_sqr() * s).collect(),
        chi_sq: fields.chi.iter().map(|c| c.norm_sqr() * s).collect(),
        rho: rho.iter().map(|r| r * s).collect(),
        j: j.iter().map(|v| v * js).collect(),
        raw_norm,
        narrow: spec.is_narrow(),
    })
}

/// Boosted Klein-Gordon packet; rho = phi_sq - chi_sq integrates to 1.
pub fn build_kg_packet(spec: &PacketSpec, xi: &[f64]) -> Result<PacketProfile> {
    build_packet(ModelTag::KleinGordon, spec, xi, &ModeOptions::default())
}

/// Boosted Dirac packet; rho = phi_sq + chi_sq integrates to 1.
pub fn build_dirac_packet(spec: &PacketSpec, xi: &[f64]) -> Result<PacketProfile> {
    build_packet(ModelTag::Dirac, spec, xi, &ModeOptions::default())
}

/// Either builder, selected by model, with explicit quadrature settings.
pub fn build_packet_with(
    model: ModelTag,
    spec: &PacketSpec,
    xi: &[f64],
    opts: &ModeOptions,
) -> Result<PacketProfile> {
    build_packet(model, spec, xi, opts)
}

/// Integral of chi_sq over integral of phi_sq.
pub fn measure_ratio(profile: &PacketProfile) -> Result<f64> {
    let peak = profile.rho.iter().fold(0.0f64, |a, r| a.max(r.abs()));
    let n = profile.rho.len();
    let edge = profile.rho[0].abs().max(profile.rho[n - 1].abs());
    if edge > EDGE_FRACTION * peak {
        return Err(Error::Coverage {
            edge: edge / peak,
            limit: EDGE_FRACTION,
        });
    }
    Ok(trapezoid(&profile.xi, &profile.chi_sq) / trapezoid(&profile.xi, &profile.phi_sq))
}

/// The rest-frame packet at small sigma t / m0 in closed form:
/// `(sigma/pi)^(1/4) / (1 + i sigma t/m0)^(1/2) exp(-sigma z^2 / (2 (1 + i sigma t/m0)) - i m0 t)`.
pub fn rest_packet_closed_form(sigma: f64, m0: f64, z: f64, t: f64) -> Complex64 {
    let d = Complex64::new(1.0, sigma * t / m0);
    let pre = (sigma / PI).powf(0.25) / d.sqrt();
    pre * (-(sigma * z * z) / (2.0 * d) - Complex64::new(0.0, m0 * t)).exp()
}

/// Which ingredient dominates a plane wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ingredient {
    Phi,
    Chi,
}

/// A plane wave `amp * exp(sign * i (p z - E t))` with its ingredient amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub momentum: f64,
    pub energy: f64,
    pub amp_phi: Complex64,
    pub amp_chi: Complex64,
    /// +1 for exp(+i(pz - Et)), -1 for exp(-i(pz - Et)).
    pub phase_sign: i8,
}

impl PlaneWave {
    /// Positive-energy particle wave of momentum `p`.
    pub fn particle(p: f64, m0: f64) -> Self {
        let (amp_phi, amp_chi) = plane_wave_split(p, m0);
        PlaneWave {
            momentum: p,
            energy: p.hypot(m0),
            amp_phi,
            amp_chi,
            phase_sign: 1,
        }
    }

    pub fn master(&self) -> Ingredient {
        if self.amp_phi.norm() >= self.amp_chi.norm() {
            Ingredient::Phi
        } else {
            Ingredient::Chi
        }
    }

    /// |chi| / |phi|; above 1 the wave describes an antiparticle.
    pub fn ratio(&self) -> f64 {
        self.amp_chi.norm_sqr() / self.amp_phi.norm_sqr()
    }
}

/// Space-time inversion (x -> -x, t -> -t): phi and chi trade places, the
/// phase changes sign, momentum and energy are kept.
pub fn inversion_image(wave: &PlaneWave) -> Result<PlaneWave> {
    if !(wave.energy > 0.0) {
        return Err(Error::domain(format!("energy must be > 0, got {}", wave.energy)));
    }
    Ok(PlaneWave {
        momentum: wave.momentum,
        energy: wave.energy,
        amp_phi: wave.amp_chi,
        amp_chi: wave.amp_phi,
        phase_sign: -wave.phase_sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::ratio_free;
    use approx::assert_abs_diff_eq;

    fn grid(spec: &PacketSpec, points: usize) -> Vec<f64> {
        default_xi_grid(spec, points, 8.0).unwrap()
    }

    /// Momentum-space oracle: Parseval on the lab modes, with dk'/dk = w'/w.
    fn ratio_oracle(model: ModelTag, spec: &PacketSpec) -> f64 {
        let n = 20_001;
        let span = 10.0 * spec.sigma.sqrt();
        let (mut num, mut den) = (0.0, 0.0);
        for i in 0..n {
            let kp = -span + 2.0 * span * i as f64 / (n - 1) as f64;
            let wp = kp.hypot(spec.m0);
            let g = spec.gamma();
            let k = g * (kp + spec.v * wp);
            let w = k.hypot(spec.m0);
            let amp2 = (-kp * kp / spec.sigma).exp() * wp / w;
            let (p2, c2) = match model {
                ModelTag::KleinGordon => {
                    let (p, c) = ((1.0 + w / spec.m0) / 2.0, (1.0 - w / spec.m0) / 2.0);
                    (p * p, c * c)
                }
                _ => ((w + spec.m0) / (wp + spec.m0), k * k / ((w + spec.m0) * (wp + spec.m0))),
            };
            num += amp2 * c2;
            den += amp2 * p2;
        }
        num / den
    }

    #[test]
    fn split_examples() {
        let (p, c) = plane_wave_split(0.0, 1.0);
        assert_eq!((p.re, c.re), (1.0, 0.0));
        let (p, c) = plane_wave_split(3f64.sqrt(), 1.0);
        assert_abs_diff_eq!(p.re, 1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(c.re, -0.5, epsilon = 1e-15);
        let r = (c / p).norm_sqr();
        assert_abs_diff_eq!(r, 1.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r, ratio_free(ModelTag::KleinGordon, 3f64.sqrt() / 2.0).unwrap(), epsilon = 1e-15);
        let (p, c) = plane_wave_split(1e8, 1.0);
        assert!((c.norm() / p.norm() - 1.0).abs() < 1e-7);
    }

    #[test]
    fn rest_packet_matches_closed_form() {
        let spec = PacketSpec::relative(0.0025, 0.0, 1.0, 0.0).unwrap();
        let xi = default_xi_grid(&spec, 2001, 6.0).unwrap();
        let fields = synthesize_fields(ModelTag::KleinGordon, &spec, &xi, &ModeOptions::default()).unwrap();
        for (i, &z) in xi.iter().enumerate() {
            let psi = fields.phi[i] + fields.chi[i];
            let exact = rest_packet_closed_form(spec.sigma, 1.0, z, 0.0);
            assert!((psi - exact).norm() < 1e-12, "z = {z}");
        }
        let p = build_kg_packet(&spec, &xi).unwrap();
        let mid = xi.len() / 2;
        let expect = (spec.sigma / PI).sqrt();
        assert!((p.rho[mid] - expect).abs() / expect < 2e-3, "{} vs {expect}", p.rho[mid]);
        assert_abs_diff_eq!(trapezoid(&p.xi, &p.rho), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn pointwise_identities() {
        for v in [0.0, 0.5, 0.9] {
            let spec = PacketSpec::relative(1.0 / 2500.0, v, 1.0, 0.0).unwrap();
            let xi = grid(&spec, 801);
            let kg = build_kg_packet(&spec, &xi).unwrap();
            for i in 0..xi.len() {
                assert!((kg.rho[i] - (kg.phi_sq[i] - kg.chi_sq[i])).abs() <= 1e-15 * kg.phi_sq[i].max(1e-300));
            }
            let d = build_dirac_packet(&spec, &xi).unwrap();
            for i in 0..xi.len() {
                assert!((d.rho[i] - (d.phi_sq[i] + d.chi_sq[i])).abs() <= 1e-15 * d.rho[i].max(1e-300));
            }
            assert!(d.min_invariant() > 0.0, "v = {v}");
        }
    }

    #[test]
    fn measured_ratios_match_oracle() {
        for model in [ModelTag::KleinGordon, ModelTag::Dirac] {
            for v in [0.5, 0.9] {
                let spec = PacketSpec::relative(1.0 / 2500.0, v, 1.0, 0.0).unwrap();
                let p = build_packet_with(model, &spec, &grid(&spec, 4001), &ModeOptions::default()).unwrap();
                let r = measure_ratio(&p).unwrap();
                let oracle = ratio_oracle(model, &spec);
                assert!((r - oracle).abs() < 1e-8, "{model} v={v}: {r} vs {oracle}");
                let closed = ratio_free(model, v).unwrap();
                assert!((r - closed).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn dirac_ratio_at_point_eight() {
        let spec = PacketSpec::relative(1.0 / 2500.0, 0.8, 1.0, 0.0).unwrap();
        let p = build_dirac_packet(&spec, &grid(&spec, 2001)).unwrap();
        assert_abs_diff_eq!(measure_ratio(&p).unwrap(), 0.25, epsilon = 1e-3);
    }

    #[test]
    fn rest_packets_are_nearly_pure_phi() {
        let spec = PacketSpec::relative(1.0 / 2500.0, 0.0, 1.0, 0.0).unwrap();
        let kg = build_kg_packet(&spec, &grid(&spec, 2001)).unwrap();
        assert!(measure_ratio(&kg).unwrap() < 1e-6);
        // a Gaussian of positive-energy spinors keeps lower components of
        // order k/(2 m0); <k^2> = sigma / 2 bounds the ratio by sigma / 4
        let d = build_dirac_packet(&spec, &grid(&spec, 2001)).unwrap();
        let r = measure_ratio(&d).unwrap();
        assert!(r < spec.sigma / 4.0, "{r}");
    }

    #[test]
    fn ratio_error_shrinks_with_sigma() {
        for model in [ModelTag::KleinGordon, ModelTag::Dirac] {
            let closed = ratio_free(model, 0.9).unwrap();
            let errs: Vec<f64> = [400.0, 1600.0, 6400.0]
                .iter()
                .map(|d| {
                    let spec = PacketSpec::relative(1.0 / d, 0.9, 1.0, 0.0).unwrap();
                    let p = build_packet_with(model, &spec, &grid(&spec, 2001), &ModeOptions::default()).unwrap();
                    (measure_ratio(&p).unwrap() - closed).abs()
                })
                .collect();
            assert!(errs[1] < errs[0] && errs[2] < errs[1], "{model}: {errs:?}");
        }
    }

    #[test]
    fn contraction_and_boost() {
        let fw = |v: f64| {
            let spec = PacketSpec::relative(1.0 / 2500.0, v, 1.0, 0.0).unwrap();
            let p = build_kg_packet(&spec, &grid(&spec, 2001)).unwrap();
            (p.fwhm(), p.peak_rho())
        };
        let (w0, p0) = fw(0.0);
        let mut last = p0;
        for v in [0.5, 0.9, 0.99] {
            let (w, p) = fw(v);
            let expect = (1.0f64 - v * v).sqrt();
            assert!((w / w0 / expect - 1.0).abs() < 0.02, "v={v}");
            assert!(p > last);
            last = p;
        }
        // 1/gamma(0.99)
        let (w, _) = fw(0.99);
        assert!((w / w0 - 0.141_07).abs() / 0.141_07 < 0.02);
    }

    #[test]
    fn plane_wave_current() {
        let (k, m0): (f64, f64) = (0.7, 1.0);
        let w = k.hypot(m0);
        let z: Vec<f64> = (0..2001).map(|i| -5.0 + 0.005 * i as f64).collect();
        // unit KG norm: psi amplitude sqrt(m0 / w)
        let a = (m0 / w).sqrt();
        let (p, c) = plane_wave_split(k, m0);
        let wave: Vec<Complex64> = z.iter().map(|&x| Complex64::new(0.0, k * x).exp() * a).collect();
        let mk = |with_grad: bool| PacketFields {
            model: ModelTag::KleinGordon,
            m0,
            t: 0.0,
            z: z.clone(),
            phi: wave.iter().map(|e| e * p).collect(),
            chi: wave.iter().map(|e| e * c).collect(),
            dphi: with_grad.then(|| wave.iter().map(|e| e * p * Complex64::new(0.0, k)).collect()),
            dchi: with_grad.then(|| wave.iter().map(|e| e * c * Complex64::new(0.0, k)).collect()),
        };
        for fields in [mk(true), mk(false)] {
            let (rho, j) = densities(&fields).unwrap();
            for i in 0..z.len() {
                assert_abs_diff_eq!(rho[i], 1.0, epsilon = 1e-12);
                assert_abs_diff_eq!(j[i], rho[i] * k / w, epsilon = 1e-10);
            }
        }
        // at rest nothing flows
        let still = PacketFields {
            phi: vec![Complex64::new(1.0, 0.0); z.len()],
            chi: vec![Complex64::new(0.0, 0.0); z.len()],
            dphi: None,
            dchi: None,
            ..mk(false)
        };
        let (_, j) = densities(&still).unwrap();
        assert!(j.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn coarse_grid_is_rejected_for_differences() {
        let k = 5.0;
        let z: Vec<f64> = (0..200).map(|i| 0.05 * i as f64).collect();
        let f: Vec<Complex64> = z.iter().map(|&x| Complex64::new(0.0, k * x).exp()).collect();
        let fields = PacketFields {
            model: ModelTag::KleinGordon,
            m0: 1.0,
            t: 0.0,
            z,
            phi: f.clone(),
            chi: f.iter().map(|v| v * 0.0).collect(),
            dphi: None,
            dchi: None,
        };
        assert!(matches!(densities(&fields), Err(Error::Grid(_))));
    }

    #[test]
    fn continuity_holds_discretely() {
        let (sigma, v, m0) = (1.0 / 2500.0, 0.9, 1.0);
        let base = PacketSpec::new(sigma, v, m0, 0.0).unwrap();
        let h = 0.02;
        let extent = 8.0 * base.density_std();
        let z: Vec<f64> = crate::spectra::uniform_grid(-extent, extent, (2.0 * extent / h) as usize + 1).unwrap();
        let h = z[1] - z[0];
        let dt = 0.01;
        let at = |t: f64| {
            let s = PacketSpec { t, ..base };
            densities(&synthesize_fields(ModelTag::KleinGordon, &s, &z, &ModeOptions::default()).unwrap()).unwrap()
        };
        let (r0, j0) = at(0.0);
        let norm = trapezoid(&z, &r0);
        let (rp, _) = at(dt);
        let (rm, _) = at(-dt);
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for i in 2..z.len() - 2 {
            let drho = (rp[i] - rm[i]) / (2.0 * dt) / norm;
            let dj = (j0[i - 2] - 8.0 * j0[i - 1] + 8.0 * j0[i + 1] - j0[i + 2]) / (12.0 * h) / norm;
            worst = worst.max((drho + dj).abs());
            scale = scale.max(drho.abs());
        }
        assert!(worst <= 1e-6, "residual {worst:e}");
        assert!(worst <= 1e-4 * scale, "residual {worst:e} vs rate {scale:e}");
    }

    #[test]
    fn norm_is_conserved() {
        for model in [ModelTag::KleinGordon, ModelTag::Dirac] {
            let spec0 = PacketSpec::relative(1.0 / 2500.0, 0.5, 1.0, 0.0).unwrap();
            let xi = default_xi_grid(&PacketSpec { t: 400.0, ..spec0 }, 3001, 8.0).unwrap();
            let norms: Vec<f64> = [0.0, 200.0, 400.0]
                .iter()
                .map(|&t| {
                    let s = PacketSpec { t, ..spec0 };
                    build_packet_with(model, &s, &xi, &ModeOptions::default()).unwrap().raw_norm
                })
                .collect();
            for n in &norms[1..] {
                assert!((n / norms[0] - 1.0).abs() < 1e-6, "{model}: {norms:?}");
            }
        }
    }

    #[test]
    fn coverage_is_checked() {
        let spec = PacketSpec::relative(1.0 / 2500.0, 0.5, 1.0, 0.0).unwrap();
        let narrow = default_xi_grid(&spec, 401, 2.0).unwrap();
        let p = build_kg_packet(&spec, &narrow).unwrap();
        assert!(matches!(measure_ratio(&p), Err(Error::Coverage { .. })));
    }

    #[test]
    fn spec_validation() {
        assert!(PacketSpec::new(0.0, 0.5, 1.0, 0.0).is_err());
        assert!(PacketSpec::new(1e-3, 1.0, 1.0, 0.0).is_err());
        assert!(PacketSpec::new(1e-3, 0.5, -1.0, 0.0).is_err());
        assert!(PacketSpec::relative(0.0025, 0.0, 1.0, 0.0).unwrap().is_narrow());
        assert!(!PacketSpec::relative(0.01, 0.0, 1.0, 0.0).unwrap().is_narrow());
        let opts = ModeOptions { nodes: 1024, half_width: 4.0 };
        let spec = PacketSpec::relative(0.0025, 0.0, 1.0, 0.0).unwrap();
        assert!(matches!(
            build_packet_with(ModelTag::KleinGordon, &spec, &grid(&spec, 101), &opts),
            Err(Error::Convergence { .. })
        ));
        assert!(build_packet_with(ModelTag::Rsse, &spec, &grid(&spec, 101), &ModeOptions::default()).is_err());
    }

    #[test]
    fn inversion_examples() {
        let e = PlaneWave::particle(0.8, 1.0);
        assert_eq!(e.master(), Ingredient::Phi);
        let pos = inversion_image(&e).unwrap();
        assert_eq!(pos.master(), Ingredient::Chi);
        assert_eq!((pos.momentum, pos.energy), (e.momentum, e.energy));
        assert_eq!(pos.phase_sign, -1);
        assert!(pos.ratio() > 1.0);
        assert_eq!(inversion_image(&pos).unwrap(), e);

        let rest = PlaneWave::particle(0.0, 1.0);
        let img = inversion_image(&rest).unwrap();
        assert_eq!(img.amp_phi, Complex64::new(0.0, 0.0));
        assert_eq!(img.amp_chi, Complex64::new(1.0, 0.0));
        assert_eq!(img.energy, 1.0);

        let bad = PlaneWave { energy: 0.0, ..rest };
        assert!(inversion_image(&bad).is_err());
    }

    #[test]
    fn deterministic_under_threads() {
        let spec = PacketSpec::relative(1.0 / 2500.0, 0.9, 1.0, 3.0).unwrap();
        let xi = grid(&spec, 1001);
        let a = build_dirac_packet(&spec, &xi).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| build_dirac_packet(&spec, &xi).unwrap());
        assert_eq!(a, b);
    }
}
