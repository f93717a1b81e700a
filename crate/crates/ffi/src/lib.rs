//! C ABI for relbound.
//!
//! Every fallible function returns an [`RbStatus`] and writes its result
//! through an out-pointer. On failure the out-pointer is left untouched and
//! [`rb_last_error`] describes the problem. Packets and radial solutions are
//! opaque handles released with their `_free` function.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use relbound::model::ALPHA_PAPER;
use relbound::radial::{self, RadialEquation, RadialSolveResult, SolverOptions};
use relbound::wavepacket::{self, ModeOptions, PacketProfile, PacketSpec};
use relbound::{rsse, spectra, Coupling, Error, Mass, ModelTag, TwoBodyMasses};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbStatus {
    Ok = 0,
    Domain = 1,
    Supercritical = 2,
    Model = 3,
    Range = 4,
    Convergence = 5,
    Grid = 6,
    Coverage = 7,
    Unbounded = 8,
    NullPointer = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbModel {
    Nonrel = 0,
    Kg = 1,
    Dirac = 2,
    Rsse = 3,
}

impl From<RbModel> for ModelTag {
    fn from(m: RbModel) -> Self {
        match m {
            RbModel::Nonrel => ModelTag::NonRelativistic,
            RbModel::Kg => ModelTag::KleinGordon,
            RbModel::Dirac => ModelTag::Dirac,
            RbModel::Rsse => ModelTag::Rsse,
        }
    }
}

/// Opaque packet profile.
pub struct RbPacket {
    profile: PacketProfile,
}

/// Opaque radial eigenproblem solution.
pub struct RbRadial {
    result: RadialSolveResult,
    model: ModelTag,
    m0: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RbStatus {
    match e {
        Error::Domain(_) => RbStatus::Domain,
        Error::Supercritical { .. } => RbStatus::Supercritical,
        Error::Model(_) => RbStatus::Model,
        Error::Range(_) => RbStatus::Range,
        Error::Bracket(_) | Error::Convergence { .. } => RbStatus::Convergence,
        Error::Grid(_) => RbStatus::Grid,
        Error::Coverage { .. } => RbStatus::Coverage,
        Error::Unbounded => RbStatus::Unbounded,
    }
}

/// Runs `f`, stores its value through `out` and records any error.
fn guard<T>(out: *mut T, f: impl FnOnce() -> relbound::Result<T>) -> RbStatus {
    if out.is_null() {
        set_error("null output pointer".into());
        return RbStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: checked non-null; the caller provides a writable T.
            unsafe { out.write(v) };
            set_error(String::new());
            RbStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            RbStatus::Panic
        }
    }
}

fn coupling(z_alpha: f64) -> relbound::Result<Coupling> {
    Coupling::from_z_alpha(z_alpha, ALPHA_PAPER)
}

fn two_body(m1: f64, m2: f64) -> relbound::Result<TwoBodyMasses> {
    let m1 = if m1.is_infinite() && m1 > 0.0 { Mass::Infinite } else { Mass::Finite(m1) };
    TwoBodyMasses::new(m1, m2)
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn rb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// 1S total energy (kg, dirac) or m0 minus the binding energy (nonrel).
#[no_mangle]
pub extern "C" fn rb_energy_1s(model: RbModel, z_alpha: f64, m0: f64, out: *mut f64) -> RbStatus {
    guard(out, || {
        let c = coupling(z_alpha)?;
        match model {
            RbModel::Nonrel => Ok(m0 - spectra::nonrel_binding(c, 1, m0)?),
            _ => spectra::energy_1s(model.into(), c, m0),
        }
    })
}

/// 1S antiparticle-to-particle ingredient ratio.
#[no_mangle]
pub extern "C" fn rb_ratio_1s(model: RbModel, z_alpha: f64, out: *mut f64) -> RbStatus {
    guard(out, || spectra::ratio_1s(model.into(), coupling(z_alpha)?))
}

/// Ingredient ratio of a free particle moving at `v`.
#[no_mangle]
pub extern "C" fn rb_ratio_free(model: RbModel, v: f64, out: *mut f64) -> RbStatus {
    guard(out, || spectra::ratio_free(model.into(), v))
}

/// Nonrelativistic binding energy of level `n`.
#[no_mangle]
pub extern "C" fn rb_nonrel_binding(z_alpha: f64, n: u32, m0: f64, out: *mut f64) -> RbStatus {
    guard(out, || spectra::nonrel_binding(coupling(z_alpha)?, n, m0))
}

/// Two-body binding energy for total mass `total_mass` and reduced eigenvalue `epsilon`.
#[no_mangle]
pub extern "C" fn rb_rsse_binding_energy(total_mass: f64, epsilon: f64, out: *mut f64) -> RbStatus {
    guard(out, || rsse::binding_energy(total_mass, epsilon))
}

/// Two-body total energy with centre-of-mass momentum `momentum`.
#[no_mangle]
pub extern "C" fn rb_rsse_total_energy(total_mass: f64, epsilon: f64, momentum: f64, out: *mut f64) -> RbStatus {
    guard(out, || rsse::total_energy(total_mass, epsilon, momentum))
}

/// Charge at which the two-body total energy reaches 0. Pass `m1 = INFINITY`
/// for an inert nucleus (reports `RB_STATUS_UNBOUNDED`).
#[no_mangle]
pub extern "C" fn rb_critical_charge(m1: f64, m2: f64, alpha: f64, out: *mut f64) -> RbStatus {
    guard(out, || rsse::critical_charge(two_body(m1, m2)?, alpha))
}

/// Two-body 1S binding energy at charge `z`.
#[no_mangle]
pub extern "C" fn rb_binding_for_charge(m1: f64, m2: f64, z: f64, alpha: f64, out: *mut f64) -> RbStatus {
    guard(out, || rsse::binding_for_charge(two_body(m1, m2)?, z, alpha))
}

/// Charge giving a two-body 1S binding energy `binding`.
#[no_mangle]
pub extern "C" fn rb_charge_for_binding(binding: f64, m1: f64, m2: f64, alpha: f64, out: *mut f64) -> RbStatus {
    guard(out, || rsse::charge_for_binding(binding, two_body(m1, m2)?, alpha))
}

/// Builds a boosted free packet (kg or dirac) on `points` samples spanning
/// +-`width` standard deviations. `sigma_rel` is sigma in units of m0^2.
#[no_mangle]
pub extern "C" fn rb_packet_new(
    model: RbModel,
    sigma_rel: f64,
    v: f64,
    m0: f64,
    t: f64,
    points: usize,
    width: f64,
    out: *mut *mut RbPacket,
) -> RbStatus {
    guard(out, || {
        let spec = PacketSpec::relative(sigma_rel, v, m0, t)?;
        if !(width > 0.0) {
            return Err(Error::Domain(format!("width must be > 0, got {width}")));
        }
        let xi = wavepacket::default_xi_grid(&spec, points, width)?;
        let profile = wavepacket::build_packet_with(model.into(), &spec, &xi, &ModeOptions::default())?;
        Ok(Box::into_raw(Box::new(RbPacket { profile })))
    })
}

/// Releases a packet; null is ignored.
///
/// # Safety
/// `packet` must come from [`rb_packet_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rb_packet_free(packet: *mut RbPacket) {
    if !packet.is_null() {
        drop(Box::from_raw(packet));
    }
}

/// Number of samples in a packet (0 for null).
///
/// # Safety
/// `packet` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rb_packet_len(packet: *const RbPacket) -> usize {
    packet.as_ref().map_or(0, |p| p.profile.xi.len())
}

/// Which sampled column [`rb_packet_copy`] returns.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbColumn {
    Xi = 0,
    PhiSq = 1,
    ChiSq = 2,
    Rho = 3,
    Current = 4,
}

/// Copies one column into `buf`, which must hold `rb_packet_len` values.
/// The current column is empty for dirac packets (`RB_STATUS_MODEL`).
///
/// # Safety
/// `packet` must be a live handle; `buf` must be writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn rb_packet_copy(
    packet: *const RbPacket,
    column: RbColumn,
    buf: *mut f64,
    len: usize,
) -> RbStatus {
    let Some(p) = packet.as_ref() else {
        set_error("null packet".into());
        return RbStatus::NullPointer;
    };
    if buf.is_null() {
        set_error("null buffer".into());
        return RbStatus::NullPointer;
    }
    let pr = &p.profile;
    let src: &[f64] = match column {
        RbColumn::Xi => &pr.xi,
        RbColumn::PhiSq => &pr.phi_sq,
        RbColumn::ChiSq => &pr.chi_sq,
        RbColumn::Rho => &pr.rho,
        RbColumn::Current => &pr.j,
    };
    if src.is_empty() {
        set_error(format!("{} packets carry no current", pr.model));
        return RbStatus::Model;
    }
    if len < src.len() {
        set_error(format!("buffer holds {len} values, need {}", src.len()));
        return RbStatus::Range;
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    set_error(String::new());
    RbStatus::Ok
}

/// Measured ingredient ratio of a packet.
///
/// # Safety
/// `packet` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_packet_ratio(packet: *const RbPacket, out: *mut f64) -> RbStatus {
    let p = packet.as_ref();
    guard(out, || match p {
        Some(p) => wavepacket::measure_ratio(&p.profile),
        None => Err(Error::Domain("null packet".into())),
    })
}

/// Full width at half maximum of rho, in xi units.
///
/// # Safety
/// `packet` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_packet_fwhm(packet: *const RbPacket, out: *mut f64) -> RbStatus {
    let p = packet.as_ref();
    guard(out, || match p {
        Some(p) => Ok(p.profile.fwhm()),
        None => Err(Error::Domain("null packet".into())),
    })
}

/// Solves the radial ground state (nonrel, kg or dirac) with default settings.
#[no_mangle]
pub extern "C" fn rb_radial_solve(model: RbModel, z_alpha: f64, m0: f64, out: *mut *mut RbRadial) -> RbStatus {
    guard(out, || {
        let c = coupling(z_alpha)?;
        let eq = match model {
            RbModel::Nonrel => RadialEquation::Schrodinger { mu: m0 },
            RbModel::Kg => RadialEquation::KleinGordon { m0 },
            RbModel::Dirac => RadialEquation::Dirac { m0 },
            RbModel::Rsse => return Err(Error::Model("no radial equation for rsse".into())),
        };
        let result = radial::solve_ground(eq, c, &SolverOptions::default())?;
        Ok(Box::into_raw(Box::new(RbRadial {
            result,
            model: model.into(),
            m0,
        })))
    })
}

/// Releases a radial solution; null is ignored.
///
/// # Safety
/// `radial` must come from [`rb_radial_solve`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rb_radial_free(radial: *mut RbRadial) {
    if !radial.is_null() {
        drop(Box::from_raw(radial));
    }
}

/// Eigenvalue: eps for nonrel, total energy otherwise.
///
/// # Safety
/// `radial` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_radial_eigenvalue(radial: *const RbRadial, out: *mut f64) -> RbStatus {
    let r = radial.as_ref();
    guard(out, || r.map(|r| r.result.eigenvalue).ok_or_else(|| Error::Domain("null radial".into())))
}

/// Node count of the solution.
///
/// # Safety
/// `radial` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_radial_nodes(radial: *const RbRadial, out: *mut usize) -> RbStatus {
    let r = radial.as_ref();
    guard(out, || r.map(|r| r.result.node_count).ok_or_else(|| Error::Domain("null radial".into())))
}

/// Ingredient ratio by quadrature of the radial solution.
///
/// # Safety
/// `radial` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_radial_ratio(radial: *const RbRadial, out: *mut f64) -> RbStatus {
    let r = radial.as_ref();
    guard(out, || match r {
        Some(r) => radial::ratio_from_radial(&r.result, r.model, r.m0, r.result.coupling),
        None => Err(Error::Domain("null radial".into())),
    })
}
