//! C ABI over `hydrogen-levels`.
//!
//! Every fallible function returns an [`HlStatus`]. On failure a message is
//! stored per thread and read with [`hl_last_error_message`]. Results are
//! written through out-pointers, which are left untouched on failure.
//!
//! # Safety
//! Context pointers must be null or live values from [`hl_context_new`],
//! not shared across threads while a setter runs. Out-pointers must be null
//! or valid for writes. Null pointers are reported, never dereferenced.
//!
//! ```c
//! HlContext *ctx = hl_context_new();
//! double t;
//! if (hl_level(ctx, HL_MODEL_KIND_QUASICLASSICAL, 0, 0, &t) != HL_STATUS_OK)
//!     fprintf(stderr, "%s\n", hl_last_error_message());
//! hl_context_free(ctx);
//! ```

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hydrogen_levels::harness::{model_level, Environment};
use hydrogen_levels::salpeter::{lowest_levels, ScaleSearch};
use hydrogen_levels::spectra::{critical_z, qc_complex_mass, CriticalModel, Model, QuantumState};
use hydrogen_levels::verifier::quantization_residual;
use hydrogen_levels::{Error, MassChoice, PotentialParams};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Zα too large for a bound state.
    Supercritical = 3,
    NoBoundRegion = 4,
    /// Quadrature, conditioning or basis convergence failure.
    Numerical = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HlModelKind {
    Schrodinger = 0,
    Sommerfeld = 1,
    KleinGordon = 2,
    ScalarCoulomb = 3,
    Salpeter = 4,
    Quasiclassical = 5,
}

fn model_from_code(code: u32) -> Result<Model, Failure> {
    let kinds = [
        (HlModelKind::Schrodinger, Model::Schrodinger),
        (HlModelKind::Sommerfeld, Model::Sommerfeld),
        (HlModelKind::KleinGordon, Model::KleinGordon),
        (HlModelKind::ScalarCoulomb, Model::ScalarCoulomb),
        (HlModelKind::Salpeter, Model::Salpeter),
        (HlModelKind::Quasiclassical, Model::Quasiclassical),
    ];
    kinds
        .into_iter()
        .find(|(k, _)| *k as u32 == code)
        .map(|(_, m)| m)
        .ok_or_else(|| invalid(format!("unknown model code {code}")))
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HlCriticalKind {
    /// Quantum number is 2j.
    Sommerfeld = 0,
    /// Quantum number is l.
    KleinGordon = 1,
}

/// Opaque calculation context: constants, potential and solver settings.
pub struct HlContext {
    env: Environment,
}

struct Failure {
    status: HlStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::SupercriticalCharge { .. } => HlStatus::Supercritical,
            Error::NoBoundRegion { .. } => HlStatus::NoBoundRegion,
            Error::QuadratureFailure { .. } | Error::IllConditionedBasis { .. } | Error::NoConvergence { .. } => {
                HlStatus::Numerical
            }
            _ => HlStatus::InvalidArgument,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        status: HlStatus::InvalidArgument,
        message: message.into(),
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    let failure = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => return HlStatus::Ok,
        Ok(Err(f)) => f,
        Err(payload) => Failure {
            status: HlStatus::Panic,
            message: payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()),
        },
    };
    set_last_error(&failure.message);
    failure.status
}

/// # Safety
/// `ptr` is null or a live context from `hl_context_new`.
unsafe fn context<'a>(ptr: *const HlContext) -> Result<&'a HlContext, Failure> {
    ptr.as_ref().ok_or(Failure {
        status: HlStatus::NullPointer,
        message: "null context".into(),
    })
}

/// # Safety
/// As [`context`], with no other reference alive.
unsafe fn context_mut<'a>(ptr: *mut HlContext) -> Result<&'a mut HlContext, Failure> {
    ptr.as_mut().ok_or(Failure {
        status: HlStatus::NullPointer,
        message: "null context".into(),
    })
}

/// # Safety
/// `out` is null or valid for a write of `T`.
unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure {
            status: HlStatus::NullPointer,
            message: "null output pointer".into(),
        });
    }
    out.write(value);
    Ok(())
}

/// Context with CODATA constants, Z = 1 and the default solver settings.
#[no_mangle]
pub extern "C" fn hl_context_new() -> *mut HlContext {
    Box::into_raw(Box::new(HlContext {
        env: Environment::default(),
    }))
}

/// Releases a context. Null is ignored.
///
/// # Safety
/// `ctx` must be null or come from [`hl_context_new`] and not be freed already.
#[no_mangle]
pub unsafe extern "C" fn hl_context_free(ctx: *mut HlContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Sets α and the masses (MeV). Also sets the potential's coupling to `alpha`.
///
/// # Safety
/// See the crate-level contract.
#[no_mangle]
pub unsafe extern "C" fn hl_context_set_constants(
    ctx: *mut HlContext,
    alpha: f64,
    m_e_mev: f64,
    m_p_mev: f64,
) -> HlStatus {
    guard(|| {
        let ctx = unsafe { context_mut(ctx) }?;
        let mut c = ctx.env.constants;
        c.alpha = alpha;
        c.m_e = m_e_mev;
        c.m_p = m_p_mev;
        c.validate()?;
        ctx.env.constants = c;
        ctx.env.params.alpha = alpha;
        Ok(())
    })
}

/// Sets the form-factor scale Λ (MeV) and the nuclear charge.
///
/// # Safety
/// See the crate-level contract.
#[no_mangle]
pub unsafe extern "C" fn hl_context_set_potential(ctx: *mut HlContext, lambda_mev: f64, z: u32) -> HlStatus {
    guard(|| {
        let ctx = unsafe { context_mut(ctx) }?;
        ctx.env.params = PotentialParams::new(ctx.env.params.alpha, lambda_mev, z)?;
        Ok(())
    })
}

/// Salpeter settings. `scale <= 0` selects the default length scale.
///
/// # Safety
/// See the crate-level contract.
#[no_mangle]
pub unsafe extern "C" fn hl_context_set_solver(
    ctx: *mut HlContext,
    basis_size: usize,
    scale: f64,
    scale_search: bool,
) -> HlStatus {
    guard(|| {
        let ctx = unsafe { context_mut(ctx) }?;
        let mut s = ctx.env.solver;
        s.basis_size = basis_size;
        s.scale = (scale > 0.0).then_some(scale);
        s.scale_search = scale_search.then(ScaleSearch::default);
        s.validate()?;
        ctx.env.solver = s;
        Ok(())
    })
}

/// Reduced instead of electron mass in the Schrödinger and scalar-Coulomb formulas.
///
/// # Safety
/// See the crate-level contract.
#[no_mangle]
pub unsafe extern "C" fn hl_context_set_reduced_mass(ctx: *mut HlContext, reduced: bool) -> HlStatus {
    guard(|| {
        unsafe { context_mut(ctx) }?.env.mass_choice = if reduced {
            MassChoice::Reduced
        } else {
            MassChoice::Electron
        };
        Ok(())
    })
}

/// Binding energy (eV) of state (k, l). `model` is an `HlModelKind` value.
///
/// # Safety
/// See the crate-level contract.
#[no_mangle]
pub unsafe extern "C" fn hl_level(ctx: *const HlContext, model: u32, k: u32, l: u32, out_ev: *mut f64) -> HlStatus {
    guard(|| {
        let ctx = unsafe { context(ctx) }?;
        let value = model_level(model_from_code(model)?, QuantumState::new(k, l), &ctx.env)?;
        unsafe { write(out_ev, value) }
    })
}

/// Complex eigenmass (MeV) of the quasiclassical model.
///
/// # Safety
/// See the crate-level contract.
#[no_mangle]
pub unsafe extern "C" fn hl_complex_mass(
    ctx: *const HlContext,
    k: u32,
    l: u32,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HlStatus {
    guard(|| {
        let ctx = unsafe { context(ctx) }?;
        let c = &ctx.env.constants;
        let m = qc_complex_mass(QuantumState::new(k, l), &c.derive(), c);
        unsafe { write(out_re, m.re) }?;
        unsafe { write(out_im, m.im) }
    })
}

/// Numerical quantization residual at the quasiclassical eigenvalue.
///
/// # Safety
/// See the crate-level contract.
#[no_mangle]
pub unsafe extern "C" fn hl_quantization_residual(ctx: *const HlContext, k: u32, l: u32, out: *mut f64) -> HlStatus {
    guard(|| {
        let ctx = unsafe { context(ctx) }?;
        let r = quantization_residual(QuantumState::new(k, l), &ctx.env.qc())?;
        unsafe { write(out, r) }
    })
}

/// Lowest `count` Salpeter levels (eV) of orbital `l`, written to `out_ev[0..count]`.
///
/// # Safety
/// `out_ev` must be null or point to `count` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hl_salpeter_levels(ctx: *const HlContext, l: u32, count: usize, out_ev: *mut f64) -> HlStatus {
    guard(|| {
        let ctx = unsafe { context(ctx) }?;
        if count == 0 {
            return Err(invalid("count must be positive"));
        }
        if out_ev.is_null() {
            return Err(Failure {
                status: HlStatus::NullPointer,
                message: "null output pointer".into(),
            });
        }
        let mut cfg = ctx.env.solver;
        cfg.z = ctx.env.params.z;
        let levels = lowest_levels(l, count, &cfg, &ctx.env.constants)?;
        // SAFETY: non-null and sized by the caller.
        let out = unsafe { std::slice::from_raw_parts_mut(out_ev, count) };
        for (slot, level) in out.iter_mut().zip(&levels) {
            *slot = level.value;
        }
        Ok(())
    })
}

/// Largest Z with a bound ground state. `kind` is an `HlCriticalKind` value.
///
/// # Safety
/// See the crate-level contract.
#[no_mangle]
pub unsafe extern "C" fn hl_critical_z(ctx: *const HlContext, kind: u32, quantum: u32, out: *mut u32) -> HlStatus {
    guard(|| {
        let ctx = unsafe { context(ctx) }?;
        let model = match kind {
            k if k == HlCriticalKind::Sommerfeld as u32 => {
                if quantum.is_multiple_of(2) {
                    return Err(invalid(format!("2j must be odd, got {quantum}")));
                }
                CriticalModel::Sommerfeld { twice_j: quantum }
            }
            k if k == HlCriticalKind::KleinGordon as u32 => CriticalModel::KleinGordon { l: quantum },
            k => return Err(invalid(format!("unknown critical kind {k}"))),
        };
        unsafe { write(out, critical_z(model, &ctx.env.constants)) }
    })
}

/// Message of the last failed call on this thread, or null.
/// Valid until the next `hl_` call on the same thread.
#[no_mangle]
pub extern "C" fn hl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Static version string.
#[no_mangle]
pub extern "C" fn hl_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains NUL"),
    };
    VERSION.as_ptr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        let f: Failure = Error::SupercriticalCharge {
            z: 200,
            z_alpha: 1.4,
            limit: 1.0,
        }
        .into();
        assert_eq!(f.status, HlStatus::Supercritical);
        let f: Failure = Error::IllConditionedBasis {
            condition: 1e13,
            limit: 1e12,
        }
        .into();
        assert_eq!(f.status, HlStatus::Numerical);
        let f: Failure = Error::InvalidParameter("x".into()).into();
        assert_eq!(f.status, HlStatus::InvalidArgument);
    }

    #[test]
    fn panics_become_status() {
        assert_eq!(guard(|| panic!("boom")), HlStatus::Panic);
        let msg = unsafe { CStr::from_ptr(hl_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "boom");
        assert_eq!(guard(|| Ok(())), HlStatus::Ok);
        assert!(hl_last_error_message().is_null());
    }

    #[test]
    fn interior_nul_is_replaced() {
        set_last_error("a\0b");
        let msg = unsafe { CStr::from_ptr(hl_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "a b");
    }
}
