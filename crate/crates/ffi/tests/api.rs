use std::ffi::CStr;
use std::ptr;

use hydrogen_levels_ffi::*;

struct Ctx(*mut HlContext);

impl Ctx {
    fn new() -> Self {
        Ctx(hl_context_new())
    }
}

impl Drop for Ctx {
    fn drop(&mut self) {
        unsafe { hl_context_free(self.0) }
    }
}

fn last_error() -> String {
    let p = hl_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn levels_match_the_library() {
    let ctx = Ctx::new();
    let mut t = 0.0;
    let status = unsafe { hl_level(ctx.0, HlModelKind::Quasiclassical as u32, 0, 0, &mut t) };
    assert_eq!(status, HlStatus::Ok);
    assert!((t + 13.59810661).abs() < 5e-9, "{t}");
    assert!(hl_last_error_message().is_null());
    let status = unsafe { hl_level(ctx.0, HlModelKind::KleinGordon as u32, 1, 1, &mut t) };
    assert_eq!(status, HlStatus::Ok);
    assert!((t + 1.51175485).abs() < 5e-9, "{t}");
}

#[test]
fn complex_mass_and_residual() {
    let ctx = Ctx::new();
    let (mut re, mut im, mut r) = (0.0, 0.0, 1.0);
    assert_eq!(unsafe { hl_complex_mass(ctx.0, 0, 0, &mut re, &mut im) }, HlStatus::Ok);
    assert!((im - 3.421587).abs() < 5e-6, "{im}");
    assert!(re > 938.0);
    assert_eq!(unsafe { hl_quantization_residual(ctx.0, 0, 1, &mut r) }, HlStatus::Ok);
    assert!(r.abs() < 1e-5);
}

#[test]
fn salpeter_levels_fill_the_buffer() {
    let ctx = Ctx::new();
    assert_eq!(unsafe { hl_context_set_solver(ctx.0, 24, 0.0, false) }, HlStatus::Ok);
    let mut out = [0.0; 2];
    assert_eq!(
        unsafe { hl_salpeter_levels(ctx.0, 1, 2, out.as_mut_ptr()) },
        HlStatus::Ok
    );
    assert!((out[0] + 3.3996).abs() < 1e-2, "{out:?}");
    assert!(out[0] < out[1] && out[1] < 0.0, "{out:?}");
    assert_eq!(
        unsafe { hl_salpeter_levels(ctx.0, 1, 0, out.as_mut_ptr()) },
        HlStatus::InvalidArgument
    );
}

#[test]
fn critical_charges() {
    let ctx = Ctx::new();
    let mut z = 0;
    let cases = [
        (HlCriticalKind::Sommerfeld, 1, 137),
        (HlCriticalKind::Sommerfeld, 3, 274),
        (HlCriticalKind::KleinGordon, 0, 68),
    ];
    for (kind, q, expected) in cases {
        assert_eq!(unsafe { hl_critical_z(ctx.0, kind as u32, q, &mut z) }, HlStatus::Ok);
        assert_eq!(z, expected);
    }
    assert_eq!(
        unsafe { hl_critical_z(ctx.0, HlCriticalKind::Sommerfeld as u32, 2, &mut z) },
        HlStatus::InvalidArgument
    );
}

#[test]
fn error_statuses_and_messages() {
    let ctx = Ctx::new();
    let mut t = 7.0;
    assert_eq!(unsafe { hl_level(ptr::null(), 0, 0, 0, &mut t) }, HlStatus::NullPointer);
    assert_eq!(
        unsafe { hl_level(ctx.0, 0, 0, 0, ptr::null_mut()) },
        HlStatus::NullPointer
    );
    assert_eq!(unsafe { hl_level(ctx.0, 99, 0, 0, &mut t) }, HlStatus::InvalidArgument);
    assert!(last_error().contains("99"));
    assert_eq!(
        unsafe { hl_critical_z(ctx.0, 7, 0, ptr::null_mut()) },
        HlStatus::InvalidArgument
    );

    assert_eq!(unsafe { hl_context_set_potential(ctx.0, 840.0, 200) }, HlStatus::Ok);
    assert_eq!(
        unsafe { hl_level(ctx.0, HlModelKind::KleinGordon as u32, 0, 0, &mut t) },
        HlStatus::Supercritical
    );
    assert!(last_error().contains("supercritical"));
    assert_eq!(t, 7.0, "output untouched on failure");

    assert_eq!(
        unsafe { hl_context_set_constants(ctx.0, -1.0, 0.511, 938.0) },
        HlStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { hl_context_set_solver(ctx.0, 0, 0.0, true) },
        HlStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { hl_context_set_reduced_mass(ptr::null_mut(), true) },
        HlStatus::NullPointer
    );
    unsafe { hl_context_free(ptr::null_mut()) };
}

#[test]
fn setters_change_results() {
    let ctx = Ctx::new();
    let (mut a, mut b) = (0.0, 0.0);
    let schrodinger = HlModelKind::Schrodinger as u32;
    unsafe {
        assert_eq!(hl_level(ctx.0, schrodinger, 0, 0, &mut a), HlStatus::Ok);
        assert_eq!(hl_context_set_reduced_mass(ctx.0, true), HlStatus::Ok);
        assert_eq!(hl_level(ctx.0, schrodinger, 0, 0, &mut b), HlStatus::Ok);
    }
    assert!(b > a && (b - a) < 0.01);
    unsafe {
        assert_eq!(
            hl_context_set_constants(ctx.0, 1e-4, 0.5109989461, 938.2720813),
            HlStatus::Ok
        );
        assert_eq!(
            hl_level(ctx.0, HlModelKind::Quasiclassical as u32, 0, 0, &mut a),
            HlStatus::Ok
        );
    }
    assert!(a > -0.01 && a < 0.0, "{a}");
}

#[test]
fn errors_are_per_thread() {
    let ctx = Ctx::new();
    let mut t = 0.0;
    assert_eq!(unsafe { hl_level(ctx.0, 99, 0, 0, &mut t) }, HlStatus::InvalidArgument);
    std::thread::spawn(|| assert!(hl_last_error_message().is_null()))
        .join()
        .unwrap();
    assert!(!hl_last_error_message().is_null());
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(hl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
