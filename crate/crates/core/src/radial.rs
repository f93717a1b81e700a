//! Shooting-method bound-state solvers for the point-Coulomb radial problem.
//!
//! Three radial equations are supported, all with zero orbital angular
//! momentum and V(r) = -Z alpha / r:
//!
//! * Schrödinger: `u'' = 2 mu (V - eps) u`
//! * Klein-Gordon: `u'' = -[(E - V)^2 - m^2] u`
//! * Dirac (kappa = -1): `G' = G/r + (E + m - V) F`, `F' = -F/r - (E - m - V) G`
//!
//! The solution is integrated outward from a power-series start near the
//! origin and inward from an exponential tail, then matched at a fixed radius
//! with a scale-free Wronskian defect. The eigenvalue is bracketed by a
//! geometric scan in binding energy, bisected, and polished with a secant step.
//! These solvers never evaluate the closed-form spectra; they exist to check
//! them.

use crate::error::{Error, Result};
use crate::model::{Coupling, ModelTag};
use crate::spectra::AuxiliaryY;

/// Rescaling threshold that keeps inward integration finite.
const RESCALE_ABOVE: f64 = 1e100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Uniform,
    Logarithmic,
}

/// Discretisation of the radial coordinate (units of inverse mass).
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    r_min: f64,
    r_max: f64,
    n_points: usize,
    spacing: Spacing,
    r: Vec<f64>,
    step: f64,
}

impl RadialGrid {
    pub const MIN_POINTS: usize = 1000;

    pub fn new(r_min: f64, r_max: f64, n_points: usize, spacing: Spacing) -> Result<Self> {
        if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(Error::Grid(format!("need 0 < r_min < r_max, got [{r_min}, {r_max}]")));
        }
        if n_points < Self::MIN_POINTS {
            return Err(Error::Grid(format!(
                "need at least {} points, got {n_points}",
                Self::MIN_POINTS
            )));
        }
        let last = (n_points - 1) as f64;
        let (step, r) = match spacing {
            Spacing::Logarithmic => {
                let h = (r_max / r_min).ln() / last;
                let r = (0..n_points).map(|i| r_min * (h * i as f64).exp()).collect();
                (h, r)
            }
            Spacing::Uniform => {
                let h = (r_max - r_min) / last;
                let r = (0..n_points).map(|i| r_min + h * i as f64).collect();
                (h, r)
            }
        };
        Ok(RadialGrid {
            r_min,
            r_max,
            n_points,
            spacing,
            r,
            step,
        })
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    /// dr/dx of the grid variable x at radius r.
    fn jacobian(&self, r: f64) -> f64 {
        match self.spacing {
            Spacing::Logarithmic => r,
            Spacing::Uniform => 1.0,
        }
    }

    /// Radius half a step away from `r` (towards larger r when `dir > 0`).
    fn half_step(&self, r: f64, dir: f64) -> f64 {
        match self.spacing {
            Spacing::Logarithmic => r * (0.5 * dir * self.step).exp(),
            Spacing::Uniform => r + 0.5 * dir * self.step,
        }
    }

    fn nearest_index(&self, radius: f64) -> usize {
        match self.r.binary_search_by(|x| x.total_cmp(&radius)) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) if i >= self.n_points => self.n_points - 1,
            Err(i) => {
                if (self.r[i] - radius).abs() < (radius - self.r[i - 1]).abs() {
                    i
                } else {
                    i - 1
                }
            }
        }
    }

    /// Integral of `f` sampled on the grid: trapezoid in the grid variable
    /// plus a power-law extrapolation of the piece below r_min, with the
    /// power fitted to the first two samples.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        let (f0, f1) = (f[0], f[1]);
        let p = if f0 > 0.0 && f1 > 0.0 {
            (f1 / f0).ln() / (self.r[1] / self.r[0]).ln()
        } else {
            f64::NAN
        };
        self.body(f) + self.inner_tail(f0, p)
    }

    /// As [`integrate`](Self::integrate), with `f ~ r^power` near the origin
    /// given. Returns infinity when power <= -1.
    pub fn integrate_with_power(&self, f: &[f64], power: f64) -> f64 {
        if power <= -1.0 {
            return f64::INFINITY;
        }
        self.body(f) + self.inner_tail(f[0], power)
    }

    fn body(&self, f: &[f64]) -> f64 {
        debug_assert_eq!(f.len(), self.n_points);
        let g: Vec<f64> = f.iter().zip(&self.r).map(|(v, &r)| v * self.jacobian(r)).collect();
        let mut sum = 0.5 * (g[0] + g[g.len() - 1]);
        sum += g[1..g.len() - 1].iter().sum::<f64>();
        sum * self.step
    }

    fn inner_tail(&self, f0: f64, p: f64) -> f64 {
        if f0 > 0.0 && p > -1.0 {
            f0 * self.r[0] / (p + 1.0)
        } else {
            0.0
        }
    }
}

/// Which radial equation to solve, with its mass parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialEquation {
    /// Eigenvalue is the nonrelativistic energy eps (rest mass excluded).
    Schrodinger { mu: f64 },
    /// Eigenvalue is the total energy E.
    KleinGordon { m0: f64 },
    /// Eigenvalue is the total energy E.
    Dirac { m0: f64 },
}

impl RadialEquation {
    pub fn mass(&self) -> f64 {
        match *self {
            RadialEquation::Schrodinger { mu } => mu,
            RadialEquation::KleinGordon { m0 } | RadialEquation::Dirac { m0 } => m0,
        }
    }

    pub fn model(&self) -> ModelTag {
        match self {
            RadialEquation::Schrodinger { .. } => ModelTag::NonRelativistic,
            RadialEquation::KleinGordon { .. } => ModelTag::KleinGordon,
            RadialEquation::Dirac { .. } => ModelTag::Dirac,
        }
    }

    /// Eigenvalue corresponding to a binding energy b > 0.
    fn eigenvalue_for_binding(&self, b: f64) -> f64 {
        match *self {
            RadialEquation::Schrodinger { .. } => -b,
            RadialEquation::KleinGordon { m0 } | RadialEquation::Dirac { m0 } => m0 - b,
        }
    }

    /// Decay constant of the bound solution at large r.
    fn decay(&self, e: f64) -> f64 {
        match *self {
            RadialEquation::Schrodinger { mu } => (-2.0 * mu * e).max(0.0).sqrt(),
            RadialEquation::KleinGordon { m0 } | RadialEquation::Dirac { m0 } => {
                (m0 * m0 - e * e).max(0.0).sqrt()
            }
        }
    }

    /// Classical turning point of the Coulomb problem at eigenvalue `e`.
    fn turning_point(&self, za: f64, e: f64) -> f64 {
        match *self {
            RadialEquation::Schrodinger { .. } => za / (-e),
            RadialEquation::KleinGordon { m0 } | RadialEquation::Dirac { m0 } => za / (m0 - e),
        }
    }
}

/// Knobs for the shooting solver. Defaults are tuned for relative accuracy
/// far below 1e-6 on the ground state.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    pub n_points: usize,
    pub spacing: Spacing,
    /// r_min = r_min_scale / (mass * Z alpha)
    pub r_min_scale: f64,
    /// r_max = r_max_scale / (mass * Z alpha)
    pub r_max_scale: f64,
    /// Absolute eigenvalue tolerance in units of the mass parameter.
    pub tolerance: f64,
    /// Largest accepted matching defect at convergence.
    pub residual_tolerance: f64,
    pub max_iterations: usize,
    /// Ratio between consecutive binding energies in the bracketing scan.
    pub scan_factor: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            n_points: 20_000,
            spacing: Spacing::Logarithmic,
            r_min_scale: 1e-6,
            r_max_scale: 40.0,
            tolerance: 1e-10,
            residual_tolerance: 1e-6,
            max_iterations: 200,
            scan_factor: 1.5,
        }
    }
}

/// Outcome of a shooting solve.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolveResult {
    pub equation: RadialEquation,
    pub coupling: Coupling,
    /// eps for Schrödinger, total E for Klein-Gordon and Dirac.
    pub eigenvalue: f64,
    pub node_count: usize,
    pub grid: RadialGrid,
    /// u(r) for the scalar equations, the large component G(r) for Dirac;
    /// normalised to a maximum of 1.
    pub u_samples: Vec<f64>,
    /// Small component F(r) for Dirac, on the same scale as `u_samples`.
    pub lower_samples: Option<Vec<f64>>,
    pub converged: bool,
    pub iterations: usize,
    /// |matching defect| at the returned eigenvalue.
    pub residual: f64,
}

impl RadialSolveResult {
    /// |u(r_max)| / max |u|.
    pub fn tail_fraction(&self) -> f64 {
        let peak = self.u_samples.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        self.u_samples.last().map_or(0.0, |v| v.abs()) / peak
    }
}

struct Shooter<'a> {
    eq: RadialEquation,
    coupling: Coupling,
    za: f64,
    grid: &'a RadialGrid,
}

struct Trajectory {
    out: Vec<[f64; 2]>,
    inw: Vec<[f64; 2]>,
    i_match: usize,
}

impl<'a> Shooter<'a> {
    fn deriv(&self, e: f64, r: f64, y: [f64; 2]) -> [f64; 2] {
        let za = self.za;
        match self.eq {
            RadialEquation::Schrodinger { mu } => [y[1], 2.0 * mu * (-za / r - e) * y[0]],
            RadialEquation::KleinGordon { m0 } => {
                let p = e + za / r;
                [y[1], -(p * p - m0 * m0) * y[0]]
            }
            RadialEquation::Dirac { m0 } => [
                y[0] / r + (e + m0 + za / r) * y[1],
                -y[1] / r - (e - m0 + za / r) * y[0],
            ],
        }
    }

    /// dY/dx = (dr/dx) dY/dr at radius r.
    fn flow(&self, e: f64, r: f64, y: [f64; 2]) -> [f64; 2] {
        let d = self.deriv(e, r, y);
        let j = self.grid.jacobian(r);
        [d[0] * j, d[1] * j]
    }

    fn rk4(&self, e: f64, r: f64, y: [f64; 2], dir: f64) -> [f64; 2] {
        let h = dir * self.grid.step;
        let rm = self.grid.half_step(r, dir);
        let r1 = self.grid.half_step(rm, dir);
        let k1 = self.flow(e, r, y);
        let k2 = self.flow(e, rm, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = self.flow(e, rm, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = self.flow(e, r1, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        [
            y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ]
    }

    /// Regular solution near the origin, including the first correction in r.
    fn origin_start(&self, e: f64, r: f64) -> [f64; 2] {
        let za = self.za;
        match self.eq {
            RadialEquation::Schrodinger { mu } => {
                // u = r (1 - mu Z alpha r)
                let a1 = -mu * za;
                [r * (1.0 + a1 * r), 1.0 + 2.0 * a1 * r]
            }
            RadialEquation::KleinGordon { .. } => {
                // u = r^s (1 + a1 r), s (s - 1) = -(Z alpha)^2
                let s = 0.5 + (0.25 - za * za).max(0.0).sqrt();
                let a1 = -e * za / s;
                let rs = r.powf(s);
                [rs * (1.0 + a1 * r), rs / r * (s + (s + 1.0) * a1 * r)]
            }
            RadialEquation::Dirac { m0 } => {
                // G = r^g (a0 + a1 r), F = r^g (b0 + b1 r), g = sqrt(1 - (Z alpha)^2)
                let g = (1.0 - za * za).max(0.0).sqrt();
                let a0 = 1.0;
                let b0 = (g - 1.0) * a0 / za;
                let rhs0 = (e + m0) * b0;
                let rhs1 = -(e - m0) * a0;
                let det = g * (g + 2.0) + za * za;
                let a1 = (rhs0 * (g + 2.0) + za * rhs1) / det;
                let b1 = (g * rhs1 - za * rhs0) / det;
                let rg = r.powf(g);
                [rg * (a0 + a1 * r), rg * (b0 + b1 * r)]
            }
        }
    }

    /// Decaying solution at large r.
    fn tail_start(&self, e: f64, r: f64) -> [f64; 2] {
        let k = self.eq.decay(e);
        match self.eq {
            RadialEquation::Schrodinger { mu } => [1.0, mu * self.za / (k * r) - k],
            RadialEquation::KleinGordon { .. } => [1.0, e * self.za / (k * r) - k],
            RadialEquation::Dirac { m0 } => [1.0, -((m0 - e) / (m0 + e)).max(0.0).sqrt()],
        }
    }

    fn integrate(&self, e: f64, i_match: usize) -> Trajectory {
        let r = self.grid.radii();
        let n = r.len();

        let mut out = Vec::with_capacity(i_match + 1);
        let mut y = self.origin_start(e, r[0]);
        out.push(y);
        for &ri in &r[..i_match] {
            y = self.rk4(e, ri, y, 1.0);
            out.push(y);
            rescale(&mut out, &mut y);
        }

        // stored from r_max inwards, reversed at the end
        let mut inw = Vec::with_capacity(n - i_match);
        let mut y = self.tail_start(e, r[n - 1]);
        inw.push(y);
        for i in (i_match + 1..n).rev() {
            y = self.rk4(e, r[i], y, -1.0);
            inw.push(y);
            rescale(&mut inw, &mut y);
        }
        inw.reverse();
        Trajectory { out, inw, i_match }
    }

    /// Scale-free Wronskian of the two branches at the matching radius.
    fn defect(&self, e: f64, i_match: usize) -> f64 {
        let t = self.integrate(e, i_match);
        self.defect_of(&t, e)
    }

    fn defect_of(&self, t: &Trajectory, e: f64) -> f64 {
        let a = t.out[t.i_match];
        let b = t.inw[0];
        // derivative channel expressed in inverse-length units of the local decay
        let k = match self.eq {
            RadialEquation::Dirac { .. } => 1.0,
            _ => self.eq.decay(e).max(self.eq.mass() * self.za * 1e-3),
        };
        let a = [a[0], a[1] / k];
        let b = [b[0], b[1] / k];
        let na = a[0].hypot(a[1]);
        let nb = b[0].hypot(b[1]);
        (a[1] * b[0] - a[0] * b[1]) / (na * nb)
    }
}

/// Divides the running state and everything stored so far by a common
/// factor once the state grows too large.
fn rescale(path: &mut [[f64; 2]], state: &mut [f64; 2]) {
    if state[0].abs().max(state[1].abs()) > RESCALE_ABOVE {
        let s = 1.0 / RESCALE_ABOVE;
        for y in path.iter_mut().chain(std::iter::once(state)) {
            y[0] *= s;
            y[1] *= s;
        }
    }
}

fn count_nodes(u: &[f64]) -> usize {
    let peak = u.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let floor = peak * 1e-12;
    let mut nodes = 0;
    let mut prev = 0.0f64;
    for &v in u {
        if v.abs() <= floor {
            continue;
        }
        if prev != 0.0 && prev.signum() != v.signum() {
            nodes += 1;
        }
        prev = v;
    }
    nodes
}

fn validate(eq: RadialEquation, coupling: Coupling) -> Result<()> {
    let m = eq.mass();
    if !m.is_finite() || m <= 0.0 {
        return Err(Error::domain(format!("mass must be > 0, got {m}")));
    }
    let za = coupling.z_alpha();
    if za <= 0.0 {
        return Err(Error::Bracket("zero coupling has no bound state".into()));
    }
    match eq {
        RadialEquation::KleinGordon { .. } if za > 0.5 => Err(Error::Supercritical {
            model: "kg",
            z_alpha: za,
            bound: 0.5,
        }),
        RadialEquation::Dirac { .. } if za >= 1.0 => Err(Error::Supercritical {
            model: "dirac",
            z_alpha: za,
            bound: 1.0,
        }),
        _ => Ok(()),
    }
}

fn build_grid(eq: RadialEquation, coupling: Coupling, opts: &SolverOptions) -> Result<RadialGrid> {
    let bohr = 1.0 / (eq.mass() * coupling.z_alpha());
    let r_max = opts.r_max_scale * bohr;
    let r_min = match opts.spacing {
        Spacing::Logarithmic => opts.r_min_scale * bohr,
        // a uniform grid starts one step out
        Spacing::Uniform => r_max / opts.n_points as f64,
    };
    RadialGrid::new(r_min, r_max, opts.n_points, opts.spacing)
}

/// Ground state of the given radial equation.
pub fn solve_ground(
    eq: RadialEquation,
    coupling: Coupling,
    opts: &SolverOptions,
) -> Result<RadialSolveResult> {
    validate(eq, coupling)?;
    let m = eq.mass();
    let za = coupling.z_alpha();
    // deepest binding probed: E = 0 for the relativistic equations,
    // ten Rydberg-scale units for Schrödinger
    let b_deep = match eq {
        RadialEquation::Schrodinger { mu } => 10.0 * mu * za * za,
        _ => m * (1.0 - 1e-9),
    };
    let b_shallow = 1e-4 * m * za * za;
    let lo = eq.eigenvalue_for_binding(b_deep);
    let hi = eq.eigenvalue_for_binding(b_shallow);
    solve_in_window(eq, coupling, lo, hi, opts)
}

/// Lowest eigenvalue inside `[e_lo, e_hi]`. Choosing a window above the ground
/// state returns an excited state, which is how node counting is exercised.
pub fn solve_in_window(
    eq: RadialEquation,
    coupling: Coupling,
    e_lo: f64,
    e_hi: f64,
    opts: &SolverOptions,
) -> Result<RadialSolveResult> {
    validate(eq, coupling)?;
    if !(e_hi > e_lo) {
        return Err(Error::Range(format!("empty eigenvalue window [{e_lo}, {e_hi}]")));
    }
    let grid = build_grid(eq, coupling, opts)?;
    let za = coupling.z_alpha();
    let shooter = Shooter {
        eq,
        coupling,
        za,
        grid: &grid,
    };
    let n = grid.n_points();
    let clamp = |i: usize| i.clamp(n / 20, n - n / 20);

    // stage 1: scan with a matching radius that does not depend on the trial energy
    let bohr_index = clamp(grid.nearest_index(1.0 / (eq.mass() * za)));
    let b_lo = bind_of(eq, e_hi);
    let b_hi = bind_of(eq, e_lo);
    if !(b_lo > 0.0) {
        return Err(Error::Range("eigenvalue window must lie below the continuum".into()));
    }
    let mut iterations = 0;
    let mut b = b_hi;
    let mut prev = (eq.eigenvalue_for_binding(b), shooter.defect(eq.eigenvalue_for_binding(b), bohr_index));
    iterations += 1;
    let mut bracket = None;
    while b > b_lo {
        b = (b / opts.scan_factor).max(b_lo);
        let e = eq.eigenvalue_for_binding(b);
        let d = shooter.defect(e, bohr_index);
        iterations += 1;
        if d == 0.0 || d.signum() != prev.1.signum() {
            bracket = Some((prev.0, e));
            break;
        }
        prev = (e, d);
    }
    let (mut a, mut c) = bracket.ok_or_else(|| {
        Error::Bracket(format!("no sign change of the matching defect in [{e_lo}, {e_hi}]"))
    })?;

    // stage 2: match at the turning point of the bracketed level
    let i_match = clamp(grid.nearest_index(eq.turning_point(za, 0.5 * (a + c))));
    let mut fa = shooter.defect(a, i_match);
    let mut fc = shooter.defect(c, i_match);
    iterations += 2;
    if fa.signum() == fc.signum() && fa != 0.0 && fc != 0.0 {
        // the turning-point match lost the sign change; fall back to the scan radius
        return finish_bisect(&shooter, a, c, bohr_index, iterations, opts);
    }
    let tol = opts.tolerance * eq.mass();
    while (c - a).abs() > tol {
        if iterations >= opts.max_iterations {
            let e = 0.5 * (a + c);
            let residual = shooter.defect(e, i_match).abs();
            return Err(Error::Convergence { iterations, residual });
        }
        let mid = 0.5 * (a + c);
        let fm = shooter.defect(mid, i_match);
        iterations += 1;
        if fm == 0.0 {
            a = mid;
            c = mid;
            fa = 0.0;
            fc = 0.0;
            break;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            c = mid;
            fc = fm;
        }
    }
    // secant polish inside the final bracket
    let e = if fc != fa { a - fa * (c - a) / (fc - fa) } else { 0.5 * (a + c) };
    let e = e.clamp(a.min(c), a.max(c));
    assemble(&shooter, e, i_match, iterations + 1, opts)
}

fn finish_bisect(
    shooter: &Shooter<'_>,
    mut a: f64,
    mut c: f64,
    i_match: usize,
    mut iterations: usize,
    opts: &SolverOptions,
) -> Result<RadialSolveResult> {
    let mut fa = shooter.defect(a, i_match);
    let tol = opts.tolerance * shooter.eq.mass();
    while (c - a).abs() > tol {
        if iterations >= opts.max_iterations {
            let residual = shooter.defect(0.5 * (a + c), i_match).abs();
            return Err(Error::Convergence { iterations, residual });
        }
        let mid = 0.5 * (a + c);
        let fm = shooter.defect(mid, i_match);
        iterations += 1;
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            c = mid;
        }
    }
    assemble(shooter, 0.5 * (a + c), i_match, iterations, opts)
}

fn bind_of(eq: RadialEquation, e: f64) -> f64 {
    match eq {
        RadialEquation::Schrodinger { .. } => -e,
        RadialEquation::KleinGordon { m0 } | RadialEquation::Dirac { m0 } => m0 - e,
    }
}

fn assemble(
    shooter: &Shooter<'_>,
    e: f64,
    i_match: usize,
    iterations: usize,
    opts: &SolverOptions,
) -> Result<RadialSolveResult> {
    let t = shooter.integrate(e, i_match);
    let residual = shooter.defect_of(&t, e).abs();
    let a = t.out[i_match];
    let b = t.inw[0];
    // least-squares scale of the outward branch onto the inward one
    let scale = (a[0] * b[0] + a[1] * b[1]) / (a[0] * a[0] + a[1] * a[1]);

    let dirac = matches!(shooter.eq, RadialEquation::Dirac { .. });
    let mut u = Vec::with_capacity(shooter.grid.n_points());
    let mut lower = Vec::with_capacity(if dirac { shooter.grid.n_points() } else { 0 });
    for y in &t.out[..i_match] {
        u.push(y[0] * scale);
        if dirac {
            lower.push(y[1] * scale);
        }
    }
    for y in &t.inw {
        u.push(y[0]);
        if dirac {
            lower.push(y[1]);
        }
    }
    let (imax, peak) = u
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |acc, (i, v)| if v.abs() > acc.1 { (i, v.abs()) } else { acc });
    let norm = u[imax].signum() / peak;
    u.iter_mut().for_each(|v| *v *= norm);
    lower.iter_mut().for_each(|v| *v *= norm);

    let converged = residual <= opts.residual_tolerance;
    if !converged {
        return Err(Error::Convergence { iterations, residual });
    }
    Ok(RadialSolveResult {
        equation: shooter.eq,
        coupling: shooter.coupling,
        eigenvalue: e,
        node_count: count_nodes(&u),
        grid: shooter.grid.clone(),
        u_samples: u,
        lower_samples: dirac.then_some(lower),
        converged,
        iterations,
        residual,
    })
}

/// Ground-state eps of the reduced-mass Coulomb Schrödinger operator.
pub fn solve_schrodinger_1s(mu: f64, coupling: Coupling) -> Result<RadialSolveResult> {
    solve_ground(RadialEquation::Schrodinger { mu }, coupling, &SolverOptions::default())
}

/// Klein-Gordon 1S total energy by shooting.
pub fn solve_kg_1s(m0: f64, coupling: Coupling) -> Result<RadialSolveResult> {
    solve_ground(RadialEquation::KleinGordon { m0 }, coupling, &SolverOptions::default())
}

/// Dirac 1S (kappa = -1) total energy by shooting.
pub fn solve_dirac_1s(m0: f64, coupling: Coupling) -> Result<RadialSolveResult> {
    solve_ground(RadialEquation::Dirac { m0 }, coupling, &SolverOptions::default())
}

/// Antiparticle-to-particle ingredient ratio by radial quadrature.
///
/// Klein-Gordon: the stationary split phi = (1 + (E - V)/m) u / 2,
/// chi = (1 - (E - V)/m) u / 2 integrated with the common weight dr.
/// Dirac: integral of F^2 over integral of G^2.
pub fn ratio_from_radial(
    result: &RadialSolveResult,
    model: ModelTag,
    m0: f64,
    coupling: Coupling,
) -> Result<f64> {
    if !result.converged {
        return Err(Error::Convergence {
            iterations: result.iterations,
            residual: result.residual,
        });
    }
    if result.equation.model() != model {
        return Err(Error::Model(format!(
            "result was solved for {} but {} was requested",
            result.equation.model(),
            model
        )));
    }
    let za = coupling.z_alpha();
    let r = result.grid.radii();
    let u = &result.u_samples;
    match model {
        ModelTag::NonRelativistic => Ok(0.0),
        ModelTag::KleinGordon => {
            let e = result.eigenvalue;
            let (phi, chi): (Vec<f64>, Vec<f64>) = r
                .iter()
                .zip(u)
                .map(|(&r, &u)| {
                    let w = (e + za / r) / m0;
                    let p = 0.5 * (1.0 + w) * u;
                    let c = 0.5 * (1.0 - w) * u;
                    (p * p, c * c)
                })
                .unzip();
            // u ~ r^(1/2 + y) and both ingredients carry Z alpha / r, so their
            // densities go as r^(2y - 1); at y = 0 both norms diverge alike
            let y = AuxiliaryY::new(za)?.value();
            if y == 0.0 {
                return Ok(1.0);
            }
            let p = 2.0 * y - 1.0;
            Ok(result.grid.integrate_with_power(&chi, p) / result.grid.integrate_with_power(&phi, p))
        }
        ModelTag::Dirac => {
            let lower = result
                .lower_samples
                .as_ref()
                .ok_or_else(|| Error::Model("Dirac result carries no small component".into()))?;
            let g2: Vec<f64> = u.iter().map(|v| v * v).collect();
            let f2: Vec<f64> = lower.iter().map(|v| v * v).collect();
            let p = 2.0 * ((1.0 - za) * (1.0 + za)).sqrt();
            Ok(result.grid.integrate_with_power(&f2, p) / result.grid.integrate_with_power(&g2, p))
        }
        ModelTag::Rsse => Err(Error::Model("no radial ratio for the two-body model".into())),
    }
}
